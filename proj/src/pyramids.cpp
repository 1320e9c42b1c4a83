#include "accinfo/pyramids.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "accinfo/roots.hpp"

namespace accinfo {

namespace {

constexpr double kZero = 1e-12;

double xlog2x2(double x) { return x == 0.0 ? 0.0 : x * std::log2(x * x); }

void require_m(int m) {
  if (m < 2) throw std::invalid_argument("pyramid: m must be at least 2");
}

bool is_flat(Regime r) { return r == Regime::flat_small_m || r == Regime::flat_large_m; }

/// t = 1 coefficients from the signed (a, b) parametrization.
Lambda0Coefficients t1_coefficients(int m, double a, double b) {
  if (std::abs(b) <= kZero) return {0.0, -xlog2x2(a) / a};
  const double c1 = (xlog2x2(b) - xlog2x2(a)) / (a - b);
  const double c0 = m * a * b * (std::log2(a * a) - std::log2(b * b)) / ((a - b) * (a + (m - 1) * b));
  return {c0, c1};
}

}  // namespace

std::string to_string(Regime r) {
  switch (r) {
    case Regime::ort: return "ort";
    case Regime::strongly_acute: return "strongly_acute";
    case Regime::moderately_acute: return "moderately_acute";
    case Regime::orthogonal: return "orthogonal";
    case Regime::obtuse_srm: return "obtuse_srm";
    case Regime::obtuse_mixed: return "obtuse_mixed";
    case Regime::flat_small_m: return "flat_small_m";
    case Regime::flat_large_m: return "flat_large_m";
  }
  return "ort";
}

Regime regime_from_string(const std::string& s) {
  for (auto r : {Regime::ort, Regime::strongly_acute, Regime::moderately_acute, Regime::orthogonal,
                 Regime::obtuse_srm, Regime::obtuse_mixed, Regime::flat_small_m, Regime::flat_large_m})
    if (to_string(r) == s) return r;
  throw std::invalid_argument("unknown regime '" + s + "'");
}

PyramidSpec::PyramidSpec(int m, double r0) : m_(m), r0_(r0) {
  require_m(m);
  if (!(r0 >= -kZero && r0 <= 1.0 + kZero)) throw std::invalid_argument("pyramid: r0 must lie in [0, 1]");
  r0_ = std::clamp(r0, 0.0, 1.0);
  r1_ = (1.0 - r0_) / (m - 1);
}

double PyramidSpec::a() const {
  return (std::sqrt(r0_) + (m_ - 1) * std::sqrt(r1_)) / std::sqrt(static_cast<double>(m_));
}

double PyramidSpec::b() const { return (std::sqrt(r0_) - std::sqrt(r1_)) / std::sqrt(static_cast<double>(m_)); }

PyramidSpec spec_from_p(int m, double p, Orientation orientation) {
  require_m(m);
  if (!(p >= 1.0 / m - kZero && p <= 1.0 + kZero)) throw std::invalid_argument("spec_from_p: p outside [1/m, 1]");
  p = std::clamp(p, 1.0 / m, 1.0);
  const double a = std::sqrt(p);
  double b = std::sqrt((1.0 - p) / (m - 1));
  if (orientation == Orientation::obtuse) {
    if (p < (m - 1.0) / m - kZero)
      throw std::invalid_argument("spec_from_p: obtuse configurations need p >= (m-1)/m");
    b = -b;
  }
  const double s0 = std::max(0.0, a + (m - 1) * b);
  return PyramidSpec(m, s0 * s0 / m);
}

CVector symmetry_axis(int m) {
  return CVector::Constant(m, Complex(1.0 / std::sqrt(static_cast<double>(m))));
}

CMatrix flat_support_isometry(int m) {
  // Helmert basis of the hyperplane orthogonal to (1, ..., 1)
  CMatrix v = CMatrix::Zero(m, m - 1);
  for (int k = 1; k < m; ++k) {
    const double n = std::sqrt(static_cast<double>(k) * (k + 1));
    for (int i = 0; i < k; ++i) v(i, k - 1) = 1.0 / n;
    v(k, k - 1) = -static_cast<double>(k) / n;
  }
  return v;
}

PureStateEnsemble build_pyramid_ensemble(const PyramidSpec& spec) {
  const int m = spec.m();
  const CVector e0 = symmetry_axis(m);
  std::vector<PureState> states;
  for (int j = 0; j < m; ++j) {
    CVector psi = (std::sqrt(spec.r0()) - std::sqrt(spec.r1())) * e0;
    psi(j) += std::sqrt(m * spec.r1());
    states.push_back(PureState::normalized(psi));
  }
  return PureStateEnsemble(ProbDist::uniform(static_cast<std::size_t>(m)), std::move(states));
}

double acute_equation_residual(double s, int m) {
  const double k = m - 1.0;
  const double last = std::abs(1.0 - s) > 0.0 ? (1.0 - s) * std::log(std::abs(1.0 - s)) : 0.0;
  return std::log1p(k * s * s) - 2.0 * ((1.0 + k * s) / m) * std::log1p(k * s) - 2.0 * (k / m) * last;
}

double tau_acute(int m) {
  if (m < 3) throw std::domain_error("tau_acute: undefined for m < 3");
  const double tau = 2.0 * (m - 1.0) / (m - 2.0);
  if (std::abs(acute_equation_residual(1.0 / tau, m)) > 1e-12)
    throw std::logic_error("tau_acute: closed form fails the root equation");
  return tau;
}

double acute_root_by_bisection(int m) {
  if (m < 3) throw std::domain_error("acute root: undefined for m < 3");
  // f vanishes to third order at 0 and is positive just above it
  return bisect([m](double s) { return acute_equation_residual(s, m); }, 1e-3, 1.0, 1e-15);
}

double obtuse_equation_residual(double tau, int m) {
  const double k = m - 1.0;
  const double u = k + tau;
  const double w = 1.0 - tau;
  const double last = w == 0.0 ? 0.0 : (w / m) * std::log2(w * w);
  return std::log2(m * (k + tau * tau) / 2.0) - (u / m) * std::log2(u * u) - last;
}

std::optional<double> tau_obtuse(int m) {
  require_m(m);
  if (m == 2) return 0.0;
  if (m >= 7) return std::nullopt;
  static const std::array<double, 4> roots = [] {
    std::array<double, 4> r{};
    for (int k = 3; k <= 6; ++k)
      r[k - 3] = bisect([k](double t) { return obtuse_equation_residual(t, k); }, 0.0, 1.0, 1e-15);
    return r;
  }();
  return roots[m - 3];
}

double obtuse_root_extended(int m) {
  require_m(m);
  if (m == 2) return 0.0;
  return bisect([m](double t) { return obtuse_equation_residual(t, m); }, -0.5, 1.0, 1e-15);
}

double p_from_tau(int m, double tau) {
  const double d = 1.0 - m / (1.0 - tau);
  return 1.0 / (1.0 + (m - 1.0) / (d * d));
}

Thresholds thresholds(int m) {
  require_m(m);
  Thresholds t{4.0 * (m - 1.0) / (static_cast<double>(m) * m), std::nullopt, std::nullopt};
  if (const auto tau = tau_obtuse(m)) {
    t.r0_obtuse = *tau > 0.0 ? 1.0 / (1.0 + (m - 1.0) / (*tau * *tau)) : 0.0;
    t.p_of_m = p_from_tau(m, *tau);
  }
  return t;
}

Regime classify(const PyramidSpec& spec) {
  const int m = spec.m();
  const double r0 = spec.r0();
  const double r1 = spec.r1();
  if (r1 <= kZero) return Regime::ort;
  if (std::abs(r0 - r1) <= kZero) return Regime::orthogonal;
  if (r0 > r1) return r0 > 4.0 * (m - 1.0) / (static_cast<double>(m) * m) ? Regime::strongly_acute
                                                                            : Regime::moderately_acute;
  if (r0 <= kZero) return m <= 6 ? Regime::flat_small_m : Regime::flat_large_m;
  if (m >= 7) return Regime::obtuse_srm;
  return r0 >= *thresholds(m).r0_obtuse ? Regime::obtuse_srm : Regime::obtuse_mixed;
}

ConjecturedObservable conjectured_observable(const PyramidSpec& spec) {
  const int m = spec.m();
  const CVector e0 = symmetry_axis(m);
  const double sm = std::sqrt(static_cast<double>(m));
  auto e_tilde = [&](int k, double t) {
    CVector v = ((t - 1.0) / sm) * e0;
    v(k) += 1.0;
    return v;
  };
  auto pair_vectors = [&](double weight) {
    std::vector<CVector> out;
    for (int r = 0; r < m; ++r)
      for (int s = r + 1; s < m; ++s) {
        CVector v = CVector::Zero(m);
        v(r) = 1.0 / std::sqrt(2.0);
        v(s) = -1.0 / std::sqrt(2.0);
        out.push_back(std::sqrt(weight) * v);
      }
    return out;
  };

  switch (classify(spec)) {
    case Regime::strongly_acute: {
      const double t = std::sqrt(spec.r1() / spec.r0()) * tau_acute(m);
      std::vector<CVector> vs;
      for (int k = 0; k < m; ++k) vs.push_back(e_tilde(k, t));
      vs.push_back(std::sqrt(1.0 - t * t) * e0);
      return {t, Povm::from_vectors(vs)};
    }
    case Regime::obtuse_mixed: {
      const double t = std::sqrt(spec.r1() / spec.r0()) * *tau_obtuse(m);
      std::vector<CVector> vs;
      for (int k = 0; k < m; ++k) vs.push_back(e_tilde(k, t) / t);
      for (auto& v : pair_vectors((2.0 / m) * (1.0 - 1.0 / (t * t)))) vs.push_back(v);
      return {t, Povm::from_vectors(vs)};
    }
    case Regime::flat_small_m: {
      const CMatrix v = flat_support_isometry(m);
      return {std::numeric_limits<double>::infinity(),
              Povm::from_vectors(pair_vectors(2.0 / m), HermitianOperator(v * v.adjoint()))};
    }
    default: {
      std::vector<CVector> vs;
      for (int k = 0; k < m; ++k) vs.push_back(CVector::Unit(m, k));
      return {1.0, Povm::from_vectors(vs)};
    }
  }
}

Lambda0Coefficients lambda0_coefficients(const PyramidSpec& spec) {
  const int m = spec.m();
  switch (classify(spec)) {
    case Regime::flat_small_m:
    case Regime::flat_large_m:
      throw std::domain_error("lambda0_coefficients: flat pyramid, use flat path");
    case Regime::ort:
      // limit of the t = 1 coefficients as b -> a
      return {2.0 * kLog2E, std::log2(static_cast<double>(m)) - 2.0 * kLog2E};
    case Regime::strongly_acute: {
      const double c0 = m * std::log2(m - 1.0) / (m - 2.0);
      return {c0, std::log2(static_cast<double>(m)) - c0};
    }
    case Regime::obtuse_mixed: {
      const double tau = *tau_obtuse(m);
      const double c0 = (1.0 / tau - 1.0) * std::log2(2.0 * (tau - 1.0) * (tau - 1.0) / (m * (m - 1.0 + tau * tau)));
      return {c0, 1.0};
    }
    default:
      return t1_coefficients(m, spec.a(), spec.b());
  }
}

Lambda0Coefficients flat_lambda0_coefficients(const PyramidSpec& spec) {
  const int m = spec.m();
  switch (classify(spec)) {
    case Regime::flat_small_m: return {0.0, 1.0};
    case Regime::flat_large_m:
      return {0.0, std::log2(static_cast<double>(m)) - ((m - 2.0) / m) * std::log2(m - 1.0)};
    default: throw std::domain_error("flat_lambda0_coefficients: spec is not flat");
  }
}

HermitianOperator pyramid_lambda0(const PyramidSpec& spec) {
  const int m = spec.m();
  if (is_flat(classify(spec))) {
    const CMatrix v = flat_support_isometry(m);
    return HermitianOperator(flat_lambda0_coefficients(spec).c1 * v * v.adjoint());
  }
  const auto c = lambda0_coefficients(spec);
  const CVector e0 = symmetry_axis(m);
  return HermitianOperator(c.c1 * CMatrix::Identity(m, m) + c.c0 * e0 * e0.adjoint());
}

double srm_information(int m, double p) {
  const double q = 1.0 - p;
  double v = std::log2(static_cast<double>(m));
  if (p > 0.0) v += p * std::log2(p);
  if (q > 0.0) v += q * std::log2(q / (m - 1.0));
  return v;
}

double accessible_information(const PyramidSpec& spec) {
  const int m = spec.m();
  switch (classify(spec)) {
    case Regime::ort: return 0.0;
    case Regime::strongly_acute: {
      const double d = spec.a() - spec.b();
      return ((m - 1.0) / (m - 2.0)) * std::log2(m - 1.0) * d * d;
    }
    case Regime::obtuse_mixed: return std::log2(m / 2.0) - spec.r0() * lambda0_coefficients(spec).c0;
    case Regime::flat_small_m: return std::log2(m / 2.0);
    case Regime::flat_large_m: return ((m - 2.0) / m) * std::log2(m - 1.0);
    default: return srm_information(m, spec.p());
  }
}

PyramidSolution solve_pyramid(const PyramidSpec& spec) {
  const Regime regime = classify(spec);
  auto obs = conjectured_observable(spec);
  const auto c = is_flat(regime) ? flat_lambda0_coefficients(spec) : lambda0_coefficients(spec);
  return PyramidSolution{spec, regime, obs.t, std::move(obs.povm), c.c0, c.c1, accessible_information(spec)};
}

}  // namespace accinfo
