#include "accinfo/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

#include <boost/math/tools/minima.hpp>

#include "accinfo/pyramids.hpp"
#include "accinfo/quantum.hpp"
#include "accinfo/sampling.hpp"

namespace accinfo {

namespace {

constexpr double kPointTol = 1e-9;
constexpr double kLimitWindow = 1e-6;

double entropy_of(const RVector& t) {
  double h = 0.0;
  for (Eigen::Index i = 0; i < t.size(); ++i)
    if (t(i) > 0.0) h -= t(i) * std::log2(t(i));
  return h;
}

int param_m(const Params& params) {
  const double m = params.at("m");
  const double r = std::round(m);
  if (std::abs(m - r) > 1e-9) throw std::invalid_argument("parameter m must be an integer");
  return static_cast<int>(r);
}

double obtuse_lower_bound(int m) {
  const double flat = (m - 1.0) / m;
  if (m <= 6) return std::max(flat, *thresholds(m).p_of_m);
  return flat;
}

RVector simplex_coords(const Point& point, int m) {
  if (point.size() != m) throw std::invalid_argument("point has " + std::to_string(point.size()) +
                                                     " coordinates, expected " + std::to_string(m));
  RVector t(m);
  for (int i = 0; i < m; ++i) {
    if (std::abs(point(i).imag()) > 1e-12) throw std::invalid_argument("simplex constraint: coordinates must be real");
    const double v = point(i).real();
    if (v < -1e-12) throw std::invalid_argument("simplex constraint: negative coordinate");
    t(i) = std::max(v, 0.0);
  }
  if (std::abs(t.sum() - 1.0) > kPointTol) throw std::invalid_argument("simplex constraint: coordinates do not sum to 1");
  return t;
}

void check_sphere(const Point& z, int m, bool hyperplane) {
  if (z.size() != m) throw std::invalid_argument("point has " + std::to_string(z.size()) +
                                                 " coordinates, expected " + std::to_string(m));
  if (std::abs(z.squaredNorm() - 1.0) > kPointTol) throw std::invalid_argument("sphere constraint: sum |z_j|^2 differs from 1");
  if (hyperplane && std::abs(z.sum()) > kPointTol) throw std::invalid_argument("hyperplane constraint: sum z_j differs from 0");
}

RVector squared_moduli(const Point& z) { return z.cwiseAbs2(); }

Point real_point(const RVector& v) { return v.cast<Complex>(); }

std::vector<Point> permutations_of_two_value(int m, Complex first, Complex rest) {
  std::vector<Point> out;
  for (int i = 0; i < m; ++i) {
    Point z = Point::Constant(m, rest);
    z(i) = first;
    out.push_back(z);
  }
  return out;
}

std::vector<Point> pair_points(int m) {
  std::vector<Point> out;
  const double c = 1.0 / std::sqrt(2.0);
  for (int r = 0; r < m; ++r)
    for (int s = 0; s < m; ++s)
      if (r != s) {
        Point z = Point::Zero(m);
        z(r) = c;
        z(s) = -c;
        out.push_back(z);
      }
  return out;
}

double trine_angle(const Point& point) {
  if (point.size() != 1) throw std::invalid_argument("trine point must be a single angle");
  return point(0).real();
}

}  // namespace

std::string to_string(InequalityId id) {
  switch (id) {
    case InequalityId::binary_ineq: return "binary_ineq";
    case InequalityId::gross_ineq0: return "gross_ineq0";
    case InequalityId::basic: return "basic";
    case InequalityId::basic11: return "basic11";
    case InequalityId::moser: return "moser";
    case InequalityId::basic2: return "basic2";
    case InequalityId::ineqz: return "ineqz";
    case InequalityId::ineqw: return "ineqw";
    case InequalityId::trine: return "trine";
  }
  return "basic";
}

InequalityId inequality_from_string(const std::string& s) {
  for (auto id : all_inequalities())
    if (to_string(id) == s) return id;
  throw std::invalid_argument("unknown inequality id '" + s + "'");
}

const std::vector<InequalityId>& all_inequalities() {
  static const std::vector<InequalityId> ids{InequalityId::binary_ineq, InequalityId::gross_ineq0, InequalityId::basic,
                                             InequalityId::basic11,     InequalityId::moser,       InequalityId::basic2,
                                             InequalityId::ineqz,       InequalityId::ineqw,       InequalityId::trine};
  return ids;
}

std::string to_string(CoeffFamily f) {
  switch (f) {
    case CoeffFamily::acute: return "acute";
    case CoeffFamily::obtuse: return "obtuse";
    case CoeffFamily::binary: return "binary";
    case CoeffFamily::general_alpha: return "general_alpha";
    case CoeffFamily::general_alpha_tilde: return "general_alpha_tilde";
  }
  return "acute";
}

PointKind point_kind(InequalityId id) {
  switch (id) {
    case InequalityId::basic2:
    case InequalityId::ineqz: return PointKind::sphere;
    case InequalityId::ineqw: return PointKind::hyperplane_sphere;
    case InequalityId::trine: return PointKind::angle;
    default: return PointKind::simplex;
  }
}

std::vector<std::string> param_names(InequalityId id) {
  switch (id) {
    case InequalityId::binary_ineq: return {"p"};
    case InequalityId::gross_ineq0:
    case InequalityId::trine: return {};
    case InequalityId::basic:
    case InequalityId::basic2: return {"m", "p"};
    default: return {"m"};
  }
}

void validate_params(InequalityId id, const Params& params) {
  const auto names = param_names(id);
  for (const auto& [key, value] : params) {
    if (std::find(names.begin(), names.end(), key) == names.end())
      throw std::invalid_argument(to_string(id) + ": unexpected parameter '" + key + "'");
    if (!std::isfinite(value)) throw std::invalid_argument(to_string(id) + ": parameter '" + key + "' is not finite");
  }
  for (const auto& name : names)
    if (!params.count(name)) throw std::invalid_argument(to_string(id) + ": missing parameter '" + name + "'");

  int m = 2;
  if (params.count("m")) {
    m = param_m(params);
    const int min_m = id == InequalityId::basic11 || id == InequalityId::ineqz ? 3 : 2;
    if (m < min_m) throw std::invalid_argument(to_string(id) + ": m must be at least " + std::to_string(min_m));
    if (id == InequalityId::ineqz && m > 6) throw std::invalid_argument("ineqz: defined for m <= 6 only");
    if (m > 64) throw std::invalid_argument(to_string(id) + ": m above 64 is not supported");
  }
  if (!params.count("p")) return;
  const double p = params.at("p");
  if (p > 1.0) throw std::invalid_argument(to_string(id) + ": p must not exceed 1");
  switch (id) {
    case InequalityId::binary_ineq:
      if (p < 0.5) throw std::invalid_argument("binary_ineq: p must lie in [1/2, 1]");
      break;
    case InequalityId::basic:
      if (p < (m - 1.0) / m - 1e-12) throw std::invalid_argument("basic: p must lie in [(m-1)/m, 1]");
      break;
    case InequalityId::basic2:
      if (p <= (m - 1.0) / m + 1e-12) throw std::invalid_argument("basic2: p must exceed (m-1)/m");
      if (p < obtuse_lower_bound(m) - 1e-12) throw std::invalid_argument("basic2: p must be at least p(m)");
      break;
    default: break;
  }
}

int point_dimension(InequalityId id, const Params& params) {
  switch (id) {
    case InequalityId::binary_ineq:
    case InequalityId::gross_ineq0: return 2;
    case InequalityId::trine: return 1;
    default: return param_m(params);
  }
}

CoeffSet coeffs_binary(double p) {
  if (!(p >= 0.5 && p <= 1.0)) throw std::invalid_argument("coeffs_binary: p must lie in [1/2, 1]");
  if (p - 0.5 < kLimitWindow) return {kLog2E, std::log2(std::numbers::e / 2.0), CoeffFamily::binary};
  if (p == 1.0) return {0.0, 0.0, CoeffFamily::binary};
  const double q = 1.0 - p;
  const double mu0 = std::sqrt(p * q) * (std::log2(p) - std::log2(q)) / (2.0 * p - 1.0);
  const double mu1 = (p * std::log2(p) - q * std::log2(q)) / (2.0 * p - 1.0);
  return {mu0, mu1, CoeffFamily::binary};
}

CoeffSet acute_formula(double p, int m) {
  const double a = std::sqrt(p);
  const double b2 = (1.0 - p) / (m - 1.0);
  const double b = std::sqrt(b2);
  if (b2 == 0.0) return {0.0, std::log2(p), CoeffFamily::acute};
  const double mu0 = a * b * (std::log2(p) - std::log2(b2)) / ((a + (m - 1) * b) * (a - b));
  const double mu1 = (a * std::log2(p) - b * std::log2(b2)) / (a - b);
  return {mu0, mu1, CoeffFamily::acute};
}

CoeffSet obtuse_formula(double p, int m) {
  const double a = std::sqrt(p);
  const double b2 = (1.0 - p) / (m - 1.0);
  const double b = std::sqrt(b2);
  if (b2 == 0.0) return {0.0, std::log2(p), CoeffFamily::obtuse};
  const double num = a * b * (std::log2(p) - std::log2(b2));
  const double den = ((m - 1) * b - a) * (a + b);
  const double mu0 = den == 0.0 ? -std::numeric_limits<double>::infinity() : num / den;
  const double mu1 = (a * std::log2(p) + b * std::log2(b2)) / (a + b);
  return {mu0, mu1, CoeffFamily::obtuse};
}

CoeffSet coeffs_acute(double p, int m) {
  if (m < 2) throw std::invalid_argument("coeffs_acute: m must be at least 2");
  if (!(p >= (m - 1.0) / m - 1e-12 && p <= 1.0)) throw std::invalid_argument("coeffs_acute: p must lie in [(m-1)/m, 1]");
  if (p >= 1.0) return {0.0, 0.0, CoeffFamily::acute};
  if (m == 2 && p - 0.5 < kLimitWindow) return {kLog2E, 2.0 * kLog2E - 1.0, CoeffFamily::acute};
  return acute_formula(p, m);
}

CoeffSet coeffs_obtuse(double p, int m) {
  if (m < 2) throw std::invalid_argument("coeffs_obtuse: m must be at least 2");
  if (!(p >= obtuse_lower_bound(m) - 1e-12 && p <= 1.0))
    throw std::invalid_argument("coeffs_obtuse: p must lie in [max((m-1)/m, p(m)), 1]");
  if (p >= 1.0) return {0.0, 0.0, CoeffFamily::obtuse};
  if (m == 2 && p - 0.5 < kLimitWindow) return {-kLog2E, obtuse_formula(p, m).mu1, CoeffFamily::obtuse};
  return obtuse_formula(p, m);
}

CoeffSet coeffs_general(double p, double alpha, bool tilde) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("coeffs_general: alpha must lie in (0, 1)");
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("coeffs_general: p must lie in (0, 1]");
  const auto family = tilde ? CoeffFamily::general_alpha_tilde : CoeffFamily::general_alpha;
  const double x = p / alpha;
  const double y = (1.0 - p) / (1.0 - alpha);
  if (p == 1.0) return {0.0, std::log2(x), family};
  const double sx = std::sqrt(x);
  const double sy = std::sqrt(y);
  const double lead = std::sqrt(p * (1.0 - p) / (alpha * (1.0 - alpha))) * (std::log2(x) - std::log2(y));
  if (!tilde) {
    if (sx == sy) throw std::domain_error("coeffs_general: singular point p = alpha");
    const double mu0 = lead / ((std::sqrt(alpha * p) + std::sqrt((1.0 - alpha) * (1.0 - p))) * (sx - sy));
    const double mu1 = (sx * std::log2(x) - sy * std::log2(y)) / (sx - sy);
    return {mu0, mu1, family};
  }
  const double den = (std::sqrt((1.0 - p) * (1.0 - alpha)) - std::sqrt(p * alpha)) * (sx + sy);
  const double mu0 = den == 0.0 ? -std::numeric_limits<double>::infinity() : lead / den;
  const double mu1 = (sx * std::log2(x) + sy * std::log2(y)) / (sx + sy);
  return {mu0, mu1, family};
}

double flat_split_value(int m) { return std::log2(static_cast<double>(m)) - ((m - 2.0) / m) * std::log2(m - 1.0); }

double ineqw_rhs(int m) { return m <= 6 ? 1.0 : flat_split_value(m); }

double ineqz_mu0(int m) {
  if (m < 3 || m > 6) throw std::invalid_argument("ineqz: defined for m = 3..6");
  const double tau = *tau_obtuse(m);
  return (1.0 / tau - 1.0) * std::log2(2.0 * (tau - 1.0) * (tau - 1.0) / (m * (m - 1.0 + tau * tau))) / m;
}

double gap(InequalityId id, const Point& point, const Params& params) {
  validate_params(id, params);
  switch (id) {
    case InequalityId::binary_ineq:
    case InequalityId::gross_ineq0: {
      const RVector t = simplex_coords(point, 2);
      const auto c = coeffs_binary(id == InequalityId::gross_ineq0 ? 0.5 : params.at("p"));
      return entropy_of(t) - (2.0 * c.mu0 * std::sqrt(t(0) * t(1)) - c.mu1);
    }
    case InequalityId::basic: {
      const int m = param_m(params);
      const RVector t = simplex_coords(point, m);
      const auto c = coeffs_acute(params.at("p"), m);
      const double s = t.cwiseSqrt().sum();
      return entropy_of(t) - (c.mu0 * s * s - c.mu1);
    }
    case InequalityId::basic11: {
      const int m = param_m(params);
      const RVector t = simplex_coords(point, m);
      const double bc = (t / m).cwiseSqrt().sum();
      return entropy_of(t) - (std::log2(static_cast<double>(m)) - (m * std::log2(m - 1.0) / (m - 2.0)) * (1.0 - bc * bc));
    }
    case InequalityId::moser: {
      const int m = param_m(params);
      const RVector t = simplex_coords(point, m);
      const double tv = (t.array() - 1.0 / m).abs().sum();
      const double lm = std::log2(static_cast<double>(m));
      return entropy_of(t) - (lm - (m * lm / (2.0 * (m - 1.0))) * tv);
    }
    case InequalityId::basic2: {
      const int m = param_m(params);
      check_sphere(point, m, false);
      const auto c = coeffs_obtuse(params.at("p"), m);
      return entropy_of(squared_moduli(point)) - (c.mu0 * std::norm(point.sum()) - c.mu1);
    }
    case InequalityId::ineqz: {
      const int m = param_m(params);
      check_sphere(point, m, false);
      return entropy_of(squared_moduli(point)) - (ineqz_mu0(m) * std::norm(point.sum()) + 1.0);
    }
    case InequalityId::ineqw: {
      const int m = param_m(params);
      check_sphere(point, m, true);
      return entropy_of(squared_moduli(point)) - ineqw_rhs(m);
    }
    case InequalityId::trine: {
      const double alpha = trine_angle(point);
      RVector t(3);
      for (int j = 1; j <= 3; ++j) {
        const double c = std::cos(alpha + 2.0 * std::numbers::pi * j / 3.0);
        t(j - 1) = (2.0 / 3.0) * c * c;
      }
      return entropy_of(t) - 1.0;
    }
  }
  throw std::logic_error("gap: unhandled inequality");
}

std::vector<Point> equality_points(InequalityId id, const Params& params) {
  validate_params(id, params);
  switch (id) {
    case InequalityId::binary_ineq: {
      const double p = params.at("p");
      std::vector<Point> out{real_point(RVector{{p, 1.0 - p}})};
      if (p != 0.5) out.push_back(real_point(RVector{{1.0 - p, p}}));
      return out;
    }
    case InequalityId::gross_ineq0: return {real_point(RVector{{0.5, 0.5}})};
    case InequalityId::basic: {
      const int m = param_m(params);
      const double p = params.at("p");
      return permutations_of_two_value(m, p, (1.0 - p) / (m - 1));
    }
    case InequalityId::basic11: {
      const int m = param_m(params);
      auto out = permutations_of_two_value(m, (m - 1.0) / m, 1.0 / (m * (m - 1.0)));
      out.push_back(Point::Constant(m, 1.0 / m));
      return out;
    }
    case InequalityId::moser: {
      const int m = param_m(params);
      return {Point::Constant(m, 1.0 / m)};
    }
    case InequalityId::basic2: {
      const int m = param_m(params);
      const double p = params.at("p");
      return permutations_of_two_value(m, std::sqrt(p), -std::sqrt((1.0 - p) / (m - 1)));
    }
    case InequalityId::ineqz: {
      const int m = param_m(params);
      auto out = pair_points(m);
      const double p = *thresholds(m).p_of_m;
      for (auto& z : permutations_of_two_value(m, std::sqrt(p), -std::sqrt((1.0 - p) / (m - 1)))) out.push_back(z);
      return out;
    }
    case InequalityId::ineqw: {
      const int m = param_m(params);
      if (m <= 6) return pair_points(m);
      return permutations_of_two_value(m, std::sqrt((m - 1.0) / m), -1.0 / std::sqrt(m * (m - 1.0)));
    }
    case InequalityId::trine: {
      // every shift by pi/3 sends one of the three weights to zero
      std::vector<Point> out;
      for (int k = 0; k < 6; ++k) out.push_back(Point::Constant(1, std::numbers::pi / 2.0 + k * std::numbers::pi / 3.0));
      return out;
    }
  }
  throw std::logic_error("equality_points: unhandled inequality");
}

std::string to_string(const MinimizerPattern& p) {
  switch (p.kind) {
    case MinimizerPattern::Kind::none: return "none";
    case MinimizerPattern::Kind::uniform: return "uniform";
    case MinimizerPattern::Kind::split: return "split(" + std::to_string(p.k1) + "," + std::to_string(p.k2) + ")";
    case MinimizerPattern::Kind::pairs: return "pairs(" + std::to_string(p.k1) + ")";
  }
  return "none";
}

MinimizerPattern pattern_from_string(const std::string& s) {
  if (s == "none") return {};
  if (s == "uniform") return {MinimizerPattern::Kind::uniform, 0, 0};
  int a = 0;
  int b = 0;
  if (std::sscanf(s.c_str(), "split(%d,%d)", &a, &b) == 2) return {MinimizerPattern::Kind::split, a, b};
  if (std::sscanf(s.c_str(), "pairs(%d)", &a) == 1) return {MinimizerPattern::Kind::pairs, a, 0};
  throw std::invalid_argument("unknown minimizer pattern '" + s + "'");
}

namespace {

std::vector<double> residuals_for(InequalityId id, const Params& params) {
  std::vector<double> out;
  for (const auto& z : equality_points(id, params)) out.push_back(std::abs(gap(id, z, params)));
  return out;
}

struct ScanBest {
  double value = std::numeric_limits<double>::infinity();
  Point point;
  MinimizerPattern pattern;
  std::size_t evaluations = 0;

  void offer(double v, const Point& z, MinimizerPattern pat) {
    ++evaluations;
    // group sizes only, larger group first
    if (pat.kind == MinimizerPattern::Kind::split && pat.k1 < pat.k2) std::swap(pat.k1, pat.k2);
    if (v < value) {
      value = v;
      point = z;
      pattern = pat;
    }
  }
};

/// Scan x on [0, 1] then polish each grid-local minimum with Brent's method.
void scan_line(const std::function<Point(double)>& make, const std::function<double(const Point&)>& f,
               std::size_t grid, MinimizerPattern pat, ScanBest& best) {
  std::vector<double> v(grid + 1);
  for (std::size_t i = 0; i <= grid; ++i) {
    const Point z = make(static_cast<double>(i) / grid);
    v[i] = f(z);
    best.offer(v[i], z, pat);
  }
  for (std::size_t i = 0; i <= grid; ++i) {
    const bool left = i == 0 || v[i] <= v[i - 1];
    const bool right = i == grid || v[i] <= v[i + 1];
    if (!(left && right)) continue;
    const double lo = static_cast<double>(i == 0 ? 0 : i - 1) / grid;
    const double hi = static_cast<double>(i == grid ? grid : i + 1) / grid;
    std::uintmax_t iters = 200;
    const auto r = boost::math::tools::brent_find_minima([&](double x) { return f(make(x)); }, lo, hi,
                                                         std::numeric_limits<double>::digits / 2, iters);
    best.offer(r.second, make(r.first), pat);
    best.evaluations += static_cast<std::size_t>(iters);
  }
}

}  // namespace

GapReport two_value_scan(InequalityId id, const Params& params, std::size_t grid) {
  validate_params(id, params);
  if (id != InequalityId::basic && id != InequalityId::basic2 && id != InequalityId::ineqz && id != InequalityId::ineqw)
    throw std::invalid_argument("two_value_scan: supported for basic, basic2, ineqz and ineqw only");
  if (grid < 2) throw std::invalid_argument("two_value_scan: grid must be at least 2");
  const int m = param_m(params);
  auto f = [&](const Point& z) { return gap(id, z, params); };
  ScanBest best;

  auto two_value = [m](int k, double first, double second) {
    Point z(m);
    for (int i = 0; i < m; ++i) z(i) = i < k ? first : second;
    return z;
  };

  if (id == InequalityId::basic) {
    for (int k = 1; k < m; ++k)
      scan_line([&, k](double q) { return two_value(k, q / k, (1.0 - q) / (m - k)); }, f, grid,
                {MinimizerPattern::Kind::split, k, m - k}, best);
    best.offer(f(Point::Constant(m, 1.0 / m)), Point::Constant(m, 1.0 / m), {MinimizerPattern::Kind::uniform, 0, 0});
  } else {
    if (id != InequalityId::ineqw) {
      for (int k = 1; k < m; ++k)
        for (double sign : {1.0, -1.0})
          scan_line([&, k, sign](double t) {
            return two_value(k, std::sqrt(t / k), sign * std::sqrt((1.0 - t) / (m - k)));
          }, f, grid, {MinimizerPattern::Kind::split, k, m - k}, best);
      const Point u = Point::Constant(m, 1.0 / std::sqrt(static_cast<double>(m)));
      best.offer(f(u), u, {MinimizerPattern::Kind::uniform, 0, 0});
    } else {
      for (int k = 1; k < m; ++k) {
        const Point z = two_value(k, std::sqrt((m - k) / (static_cast<double>(m) * k)),
                                  -std::sqrt(k / (static_cast<double>(m) * (m - k))));
        best.offer(f(z), z, {MinimizerPattern::Kind::split, k, m - k});
      }
    }
    for (int j = 1; 2 * j <= m; ++j) {
      Point z = Point::Zero(m);
      const double c = 1.0 / std::sqrt(2.0 * j);
      for (int i = 0; i < j; ++i) {
        z(2 * i) = c;
        z(2 * i + 1) = -c;
      }
      best.offer(f(z), z, {MinimizerPattern::Kind::pairs, j, 0});
    }
  }
  return GapReport{id, params, best.value, best.point, residuals_for(id, params), best.evaluations, best.pattern};
}

GapReport sample_gap(InequalityId id, const Params& params, std::size_t samples, std::uint64_t seed, unsigned threads) {
  validate_params(id, params);
  const int dim = point_dimension(id, params);
  const auto kind = point_kind(id);
  constexpr std::size_t kChunks = 16;
  std::vector<std::pair<double, Point>> chunk_best(kChunks, {std::numeric_limits<double>::infinity(), Point()});

  auto run_chunk = [&](std::size_t c) {
    Rng rng(derive_seed(seed, c));
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    const std::size_t begin = samples * c / kChunks;
    const std::size_t end = samples * (c + 1) / kChunks;
    for (std::size_t i = begin; i < end; ++i) {
      Point z;
      switch (kind) {
        case PointKind::simplex: z = real_point(random_simplex_point(dim, rng)); break;
        case PointKind::sphere: z = random_unit_vector(dim, rng); break;
        case PointKind::hyperplane_sphere: z = random_hyperplane_vector(dim, rng); break;
        case PointKind::angle: z = Point::Constant(1, angle(rng)); break;
      }
      const double g = gap(id, z, params);
      if (g < chunk_best[c].first) chunk_best[c] = {g, z};
    }
  };
  const unsigned nthreads = std::max(1u, std::min<unsigned>(threads, kChunks));
  if (nthreads == 1) {
    for (std::size_t c = 0; c < kChunks; ++c) run_chunk(c);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nthreads; ++t)
      pool.emplace_back([&, t] {
        for (std::size_t c = t; c < kChunks; c += nthreads) run_chunk(c);
      });
    for (auto& th : pool) th.join();
  }
  auto best = chunk_best.front();
  for (const auto& cb : chunk_best)
    if (cb.first < best.first) best = cb;
  return GapReport{id, params, best.first, best.second, residuals_for(id, params), samples, {}};
}

}  // namespace accinfo
