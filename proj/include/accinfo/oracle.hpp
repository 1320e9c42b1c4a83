#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "accinfo/inequalities.hpp"
#include "accinfo/quantum.hpp"

namespace accinfo {

enum class StepRule { armijo, fixed };

std::string to_string(StepRule r);
StepRule step_rule_from_string(const std::string& s);

struct AscentConfig {
  /// Number of rank-one outcomes; 0 means dim^2.
  std::size_t n_outcomes = 0;
  std::size_t restarts = 32;
  std::size_t max_iters = 2000;
  StepRule step_rule = StepRule::armijo;
  /// Step length for StepRule::fixed, initial trial step for Armijo.
  double step = 0.5;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  double grad_tol = 1e-10;
  /// Keep the per-iteration information of the best restart.
  bool record_trace = false;
};

struct MaximizeResult {
  double best_info;
  Povm best_povm;
  bool converged;
  std::size_t iterations;
  std::vector<double> trace;
};

/// Mutual information as a function of an n x dim isometry U (U^dagger U = I),
/// whose rows u_k define the rank-one elements M_k = u_k^dagger u_k.
class InfoObjective {
 public:
  explicit InfoObjective(const PureStateEnsemble& ens);

  Eigen::Index dim() const { return psi_.rows(); }
  double value(const CMatrix& u) const;
  /// Gradient with respect to the real and imaginary parts of U, packed as
  /// d/dRe + i d/dIm.
  CMatrix euclidean_gradient(const CMatrix& u) const;
  /// Projection onto the tangent space of the isometry manifold at U.
  CMatrix riemannian_gradient(const CMatrix& u) const;
  static CMatrix retract(const CMatrix& y) { return polar_isometry(y); }
  static Povm to_povm(const CMatrix& u);

 private:
  CMatrix psi_;  // states as columns
  RVector pi_;
};

void validate(const AscentConfig& cfg, Eigen::Index dim);
MaximizeResult maximize_info(const PureStateEnsemble& ens, const AscentConfig& cfg = {});

struct MinimizeGapResult {
  double min_gap;
  Point argmin;
  std::size_t evaluations;
};

/// Structure-free minimization: full grid over the constraint set at the given
/// resolution followed by projected descent from the best grid points.
MinimizeGapResult minimize_gap(InequalityId id, const Params& params, std::size_t grid_resolution = 0,
                               std::size_t polish_budget = 200);

}  // namespace accinfo
