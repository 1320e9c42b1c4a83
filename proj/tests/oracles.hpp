#pragma once

// Independent reference implementations in 50-digit arithmetic, plus values
// frozen from a separate extended-precision computation.

#include <array>
#include <functional>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace oracle {

using Real = boost::multiprecision::cpp_bin_float_50;

inline Real log2r(const Real& x) { return log(x) / log(Real(2)); }

inline double binary_entropy(double t) {
  const Real x(t);
  Real h = 0;
  if (x > 0) h -= x * log2r(x);
  if (x < 1) h -= (1 - x) * log2r(1 - x);
  return h.convert_to<double>();
}

/// 1 - h((1 + sin alpha)/2) for two equiprobable states at angle alpha.
inline double two_state_info(double alpha) {
  const Real p = (1 + sin(Real(alpha))) / 2;
  return (1 - (-(p * log2r(p)) - (1 - p) * log2r(1 - p))).convert_to<double>();
}

inline Real bisect(const std::function<Real(const Real&)>& f, Real lo, Real hi) {
  const bool lo_positive = f(lo) > 0;
  for (int i = 0; i < 180; ++i) {
    const Real mid = (lo + hi) / 2;
    if ((f(mid) > 0) == lo_positive) lo = mid;
    else hi = mid;
  }
  return (lo + hi) / 2;
}

/// Obtuse threshold equation in bits.
inline Real obtuse_g(const Real& tau, int m) {
  const Real k = m - 1;
  const Real u = k + tau;
  const Real w = 1 - tau;
  const Real last = w == 0 ? Real(0) : (w / m) * log2r(w * w);
  return log2r(m * (k + tau * tau) / 2) - (u / m) * log2r(u * u) - last;
}

inline double tau_obtuse(int m) {
  return bisect([m](const Real& t) { return obtuse_g(t, m); }, Real(-0.5), Real(1)).convert_to<double>();
}

inline double p_of_tau(int m, double tau) {
  const Real d = 1 - Real(m) / (1 - Real(tau));
  return (1 / (1 + (m - 1) / (d * d))).convert_to<double>();
}

/// Acute root equation in natural logs.
inline Real acute_f(const Real& s, int m) {
  const Real k = m - 1;
  const Real last = s == 1 ? Real(0) : (1 - s) * log(abs(1 - s));
  return log(1 + k * s * s) - 2 * ((1 + k * s) / m) * log(1 + k * s) - 2 * (k / m) * last;
}

inline double srm_information(int m, double p) {
  const Real pr(p);
  const Real q = 1 - pr;
  Real v = log2r(Real(m));
  if (pr > 0) v += pr * log2r(pr);
  if (q > 0) v += q * log2r(q / (m - 1));
  return v.convert_to<double>();
}

// frozen, 17 significant digits
inline constexpr std::array<double, 4> kTauObtuse{0.36160473182837065, 0.25866419574372901, 0.15194898467991362,
                                                  0.047807245714435575};
inline constexpr double kTauExtended7 = -0.052856072590805531;
inline constexpr std::array<double, 5> kPofM{0.87248715500889227, 0.865602687439562, 0.85698738157655537,
                                             0.84895720243289255, 0.8417157144161373};  // m = 3..7
inline constexpr std::array<double, 4> kMR0{0.18410065786023772, 0.087263373209340984, 0.028694986426479033,
                                            0.0027413861857828489};
inline constexpr std::array<double, 6> kFlatSplit{0.96095313582820683, 0.89448380845679692, 0.83659166810897903,
                                                  0.78598809373351246, 0.7414904500930917,
                                                  0.70210281852340847};  // m = 7..12
inline constexpr double kAcuteMu0_3_09 = 0.87397161994840315;
inline constexpr double kAcuteMu1_3_09 = 1.1339626991900918;
inline constexpr double kObtuseMu0_4_095 = -1.1320560161694661;
inline constexpr double kObtuseMu1_4_095 = -0.75622315058526107;
inline constexpr double kSrm_4_095 = 1.6343549178479861;

}  // namespace oracle
