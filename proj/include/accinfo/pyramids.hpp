#pragma once

#include <optional>
#include <string>

#include "accinfo/quantum.hpp"

namespace accinfo {

enum class Orientation { acute, obtuse };

/// Equiangular configuration of m equiprobable states with
/// r0 + (m - 1) r1 = 1; pairwise overlaps equal r0 - r1.
class PyramidSpec {
 public:
  PyramidSpec(int m, double r0);

  int m() const { return m_; }
  double r0() const { return r0_; }
  double r1() const { return r1_; }
  /// a = sqrt(p) and signed b of the (a, b) parametrization.
  double a() const;
  double b() const;
  double p() const { return a() * a(); }

 private:
  int m_;
  double r0_;
  double r1_;
};

enum class Regime {
  ort,
  strongly_acute,
  moderately_acute,
  orthogonal,
  obtuse_srm,
  obtuse_mixed,
  flat_small_m,
  flat_large_m
};

std::string to_string(Regime r);
Regime regime_from_string(const std::string& s);

PyramidSpec spec_from_p(int m, double p, Orientation orientation);

PureStateEnsemble build_pyramid_ensemble(const PyramidSpec& spec);
/// Unit vector e0 = (1, ..., 1) / sqrt(m).
CVector symmetry_axis(int m);
/// m x (m - 1) isometry onto the hyperplane orthogonal to e0.
CMatrix flat_support_isometry(int m);

/// f(s) in natural logs; its root s = 1/tau_a(m) fixes the acute family.
double acute_equation_residual(double s, int m);
double tau_acute(int m);
/// Root of f on (0, 1] found by bisection, independent of the closed form.
double acute_root_by_bisection(int m);

/// g(tau) in bits; decreasing on [0, 1].
double obtuse_equation_residual(double tau, int m);
std::optional<double> tau_obtuse(int m);
/// Root of g continued below zero (bisection on [-0.5, 1]); negative for m >= 7.
double obtuse_root_extended(int m);
/// p as a function of the obtuse root tau.
double p_from_tau(int m, double tau);

struct Thresholds {
  double r0_acute;
  std::optional<double> r0_obtuse;
  std::optional<double> p_of_m;
};

Thresholds thresholds(int m);

Regime classify(const PyramidSpec& spec);

struct ConjecturedObservable {
  /// Observable parameter; +infinity for the flat t -> infinity limit.
  double t;
  Povm povm;
};

ConjecturedObservable conjectured_observable(const PyramidSpec& spec);

struct Lambda0Coefficients {
  double c0;
  double c1;
};

/// Coefficients of lambda0 = c1 I + c0 |e0><e0|. Throws std::domain_error
/// for flat specs.
Lambda0Coefficients lambda0_coefficients(const PyramidSpec& spec);
/// Flat path: lambda0 = c1 on the support of the average state, c0 = 0.
Lambda0Coefficients flat_lambda0_coefficients(const PyramidSpec& spec);
HermitianOperator pyramid_lambda0(const PyramidSpec& spec);

double accessible_information(const PyramidSpec& spec);
/// log m + p log p + (1 - p) log((1 - p)/(m - 1)).
double srm_information(int m, double p);

struct PyramidSolution {
  PyramidSpec spec;
  Regime regime;
  double t;
  Povm observable;
  double c0;
  double c1;
  double accessible_info;
};

PyramidSolution solve_pyramid(const PyramidSpec& spec);

}  // namespace accinfo
