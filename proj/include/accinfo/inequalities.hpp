#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "accinfo/linalg.hpp"

namespace accinfo {

enum class InequalityId { binary_ineq, gross_ineq0, basic, basic11, moser, basic2, ineqz, ineqw, trine };

std::string to_string(InequalityId id);
InequalityId inequality_from_string(const std::string& s);
const std::vector<InequalityId>& all_inequalities();

using Params = std::map<std::string, double>;

/// Constraint set of the points an inequality is stated on.
enum class PointKind {
  simplex,            ///< t_j >= 0, sum t_j = 1
  sphere,             ///< complex z, sum |z_j|^2 = 1
  hyperplane_sphere,  ///< sphere plus sum z_j = 0
  angle               ///< single real angle
};

PointKind point_kind(InequalityId id);
/// Names of the parameters an inequality takes.
std::vector<std::string> param_names(InequalityId id);
/// Throws std::invalid_argument naming the offending parameter.
void validate_params(InequalityId id, const Params& params);
/// Number of coordinates of a point.
int point_dimension(InequalityId id, const Params& params);

/// Points are complex vectors; simplex and angle points use the real parts.
using Point = CVector;

enum class CoeffFamily { acute, obtuse, binary, general_alpha, general_alpha_tilde };
std::string to_string(CoeffFamily f);

struct CoeffSet {
  double mu0;
  double mu1;
  CoeffFamily family;
};

/// Two-point family: h(t) >= 2 mu0 sqrt(t(1-t)) - mu1, p in [1/2, 1].
CoeffSet coeffs_binary(double p);
/// p in [(m-1)/m, 1]; p = 1 gives (0, 0).
CoeffSet coeffs_acute(double p, int m);
/// p in [max((m-1)/m, p(m)), 1]; mu0 is -infinity at p = (m-1)/m for m >= 3.
CoeffSet coeffs_obtuse(double p, int m);
/// Two-parameter coefficients with alpha in (0, 1).
CoeffSet coeffs_general(double p, double alpha, bool tilde);
/// Closed formulas without range checks (used by the lemma checks).
CoeffSet acute_formula(double p, int m);
CoeffSet obtuse_formula(double p, int m);

/// log m - ((m-2)/m) log(m-1).
double flat_split_value(int m);
/// Right-hand side of the flat inequality: 1 for m <= 6, flat_split_value(m) beyond.
double ineqw_rhs(int m);
/// Coefficient of |sum z|^2 in the mixed obtuse inequality, m = 3..6.
double ineqz_mu0(int m);

/// LHS - RHS. Throws std::invalid_argument if the point violates the constraint.
double gap(InequalityId id, const Point& point, const Params& params);
std::vector<Point> equality_points(InequalityId id, const Params& params);

/// Structure of a two-value candidate: `split` has k1 coordinates of one value and
/// k2 of another, `pairs` has k1 (c, -c) pairs padded with zeros.
struct MinimizerPattern {
  enum class Kind { none, uniform, split, pairs };
  Kind kind = Kind::none;
  int k1 = 0;
  int k2 = 0;
};

std::string to_string(const MinimizerPattern& p);
MinimizerPattern pattern_from_string(const std::string& s);

struct GapReport {
  InequalityId id;
  Params params;
  double worst_gap;
  Point worst_point;
  std::vector<double> equality_residuals;
  std::size_t samples_used;
  MinimizerPattern pattern;
};

/// Minimum over the two-value candidates of the proofs; id in {basic, basic2, ineqz, ineqw}.
GapReport two_value_scan(InequalityId id, const Params& params, std::size_t grid = 2000);
/// Minimum over uniformly random constraint-satisfying points.
GapReport sample_gap(InequalityId id, const Params& params, std::size_t samples, std::uint64_t seed,
                     unsigned threads = 1);

struct LemmaGrid {
  int m_min = 2;
  int m_max = 12;
  std::size_t points_per_unit = 512;
};

struct LemmaCheck {
  std::string name;
  bool passed;
  std::size_t points;
  /// Smallest slack observed (>= -tolerance when passed).
  double worst_slack;
  std::vector<double> witness;
};

struct LemmaReport {
  std::vector<LemmaCheck> checks;
  bool passed() const;
};

/// sqrt(alpha p) ln(p/alpha) + sqrt((1-alpha)(1-p)) ln((1-p)/(1-alpha)).
double lemma_l(double p, double alpha);
/// sqrt(2p) log(2p) + sqrt(2(1-p)) log(2(1-p)).
double h_half(double p);
/// u(b)u(p)/u(a) + (1-u(b))(1-u(p))/(1-u(a)) with u(x) = 4x(1-x).
double obtuse_ratio_form(double alpha, double beta, double p);
/// Number of interior local minima of h(t) - (A sqrt(t(1-t)) + B t + C) on a t grid.
int local_minima_count(double a, double b, std::size_t grid);

LemmaReport lemma_checks(const LemmaGrid& grid = {});

}  // namespace accinfo
