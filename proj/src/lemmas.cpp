#include <algorithm>
#include <cmath>
#include <limits>

#include "accinfo/inequalities.hpp"
#include "accinfo/pyramids.hpp"

namespace accinfo {

namespace {

constexpr double kTol = 1e-12;

struct Tracker {
  LemmaCheck check;

  explicit Tracker(std::string name) : check{std::move(name), true, 0, std::numeric_limits<double>::infinity(), {}} {}

  void observe(double slack, std::vector<double> where, double tol = kTol) {
    ++check.points;
    if (std::isnan(slack)) {
      if (check.passed) check.witness = std::move(where);
      check.passed = false;
      return;
    }
    if (slack < check.worst_slack) {
      check.worst_slack = slack;
      if (slack < -tol) check.witness = std::move(where);
    }
    if (slack < -tol) check.passed = false;
  }
};

double natural_mu_difference(double p, double alpha) {
  const auto c = coeffs_general(p, alpha, false);
  return c.mu1 - c.mu0;
}

/// f(t) = entropy relative to (beta, 1-beta) minus the two-parameter bound.
double lemma2_slack(double alpha, double p, double beta, double t, bool tilde) {
  auto xlog = [](double x, double y) { return x > 0.0 ? x * std::log2(x / y) : 0.0; };
  const double lhs = -xlog(t, beta) - xlog(1.0 - t, 1.0 - beta);
  const auto c = coeffs_general(p, alpha, tilde);
  const double cross = tilde ? std::sqrt(beta * t) - std::sqrt((1.0 - beta) * (1.0 - t))
                             : std::sqrt(beta * t) + std::sqrt((1.0 - beta) * (1.0 - t));
  return lhs - (c.mu0 * cross * cross - c.mu1);
}

}  // namespace

double lemma_l(double p, double alpha) {
  auto term = [](double w, double x, double y) { return x > 0.0 ? w * std::log(x / y) : 0.0; };
  return term(std::sqrt(alpha * p), p, alpha) + term(std::sqrt((1.0 - alpha) * (1.0 - p)), 1.0 - p, 1.0 - alpha);
}

double h_half(double p) {
  auto term = [](double x) { return x > 0.0 ? std::sqrt(x) * std::log2(x) : 0.0; };
  return term(2.0 * p) + term(2.0 * (1.0 - p));
}

double obtuse_ratio_form(double alpha, double beta, double p) {
  auto u = [](double x) { return 4.0 * x * (1.0 - x); };
  return u(beta) * u(p) / u(alpha) + (1.0 - u(beta)) * (1.0 - u(p)) / (1.0 - u(alpha));
}

int local_minima_count(double a, double b, std::size_t grid) {
  // derivative in natural logs; C does not enter
  auto fprime = [a, b](double t) {
    return -std::log(t / (1.0 - t)) - a * (1.0 - 2.0 * t) / (2.0 * std::sqrt(t * (1.0 - t))) - b;
  };
  int minima = 0;
  double prev = fprime(1.0 / (grid + 1));
  for (std::size_t i = 2; i <= grid; ++i) {
    const double cur = fprime(static_cast<double>(i) / (grid + 1));
    if (prev < 0.0 && cur >= 0.0) ++minima;
    prev = cur;
  }
  return minima;
}

bool LemmaReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const LemmaCheck& c) { return c.passed; });
}

LemmaReport lemma_checks(const LemmaGrid& grid) {
  const std::size_t n = grid.points_per_unit;
  if (n < 4) throw std::invalid_argument("lemma_checks: grid too coarse");
  if (grid.m_min < 2 || grid.m_max < grid.m_min) throw std::invalid_argument("lemma_checks: invalid m range");
  const double h = 1.0 / static_cast<double>(n);
  LemmaReport report;

  // alpha in (0, 1/2], p in [1 - alpha, 1)
  Tracker mu_order("mu1_minus_mu0_nonnegative");
  Tracker l_positive("L_nonnegative");
  Tracker l_boundary("L_vanishes_at_one_minus_alpha");
  for (std::size_t i = 1; i <= n / 2; ++i) {
    const double alpha = i * h;
    l_boundary.observe(-std::abs(lemma_l(1.0 - alpha, alpha)), {alpha});
    for (std::size_t j = 0;; ++j) {
      const double p = 1.0 - alpha + j * h;
      if (p >= 1.0 - 0.5 * h) break;
      l_positive.observe(lemma_l(p, alpha), {alpha, p});
      if (std::abs(p - alpha) < 1e-12) continue;
      mu_order.observe(natural_mu_difference(p, alpha), {alpha, p}, 1e-10);
    }
  }
  report.checks.push_back(mu_order.check);
  report.checks.push_back(l_positive.check);
  report.checks.push_back(l_boundary.check);

  Tracker half_range("h_half_in_0_sqrt2");
  Tracker half_convex("h_half_convex");
  for (std::size_t i = 1; i < n; ++i) {
    const double p = i * h;
    const double v = h_half(p);
    half_range.observe(std::min(v, std::sqrt(2.0) - v), {p});
    if (i > 1 && i + 1 < n) half_convex.observe(h_half(p - h) + h_half(p + h) - 2.0 * v, {p});
  }
  report.checks.push_back(half_range.check);
  report.checks.push_back(half_convex.check);

  Tracker tilde_monotone("mu1_tilde_nondecreasing");
  Tracker tilde_flat_bound("minus_mu1_tilde_below_flat_value");
  Tracker tilde_unit_bound("minus_mu1_tilde_below_one");
  for (int m = grid.m_min; m <= grid.m_max; ++m) {
    const double start = (m - 1.0) / m;
    const auto steps = static_cast<std::size_t>(std::floor((1.0 - start) * n));
    const auto th = thresholds(m);
    double prev = obtuse_formula(start, m).mu1;
    tilde_flat_bound.observe(flat_split_value(m) + prev, {static_cast<double>(m), start}, 1e-12);
    for (std::size_t j = 1; j < steps; ++j) {
      const double p = start + j * h;
      const double cur = obtuse_formula(p, m).mu1;
      tilde_monotone.observe(cur - prev, {static_cast<double>(m), p});
      tilde_flat_bound.observe(flat_split_value(m) + cur, {static_cast<double>(m), p}, 1e-12);
      if (m <= 6 && th.p_of_m && p >= *th.p_of_m) tilde_unit_bound.observe(1.0 + cur, {static_cast<double>(m), p}, 1e-12);
      prev = cur;
    }
    if (m <= 6 && th.p_of_m)
      tilde_unit_bound.observe(1.0 + obtuse_formula(*th.p_of_m, m).mu1, {static_cast<double>(m), *th.p_of_m}, 1e-10);
  }
  report.checks.push_back(tilde_monotone.check);
  report.checks.push_back(tilde_flat_bound.check);
  report.checks.push_back(tilde_unit_bound.check);

  // alpha < 1/2, beta in [alpha, 1/2], p in [1 - alpha, 1]
  Tracker ratio("obtuse_ratio_form_at_most_one");
  for (std::size_t i = 1; i < n / 2; ++i) {
    const double alpha = i * h;
    for (std::size_t k = i; k <= n / 2; ++k) {
      const double beta = k * h;
      for (std::size_t j = 0;; ++j) {
        const double p = 1.0 - alpha + j * h;
        if (p > 1.0 + 1e-12) break;
        ratio.observe(1.0 - obtuse_ratio_form(alpha, beta, std::min(p, 1.0)), {alpha, beta, p});
      }
    }
  }
  report.checks.push_back(ratio.check);

  Tracker minima("local_minima_at_most_two");
  for (int ia = 1; ia <= 64; ++ia)
    for (int ib = -32; ib <= 32; ++ib) {
      const double a = ia * 0.125;
      const double b = ib * 0.25;
      minima.observe(2.0 - local_minima_count(a, b, 8 * n), {a, b});
    }
  report.checks.push_back(minima.check);

  // the two-point inequalities the lemmas build on, on a coarse 4-d grid
  Tracker lemma2("two_point_bound_acute");
  Tracker lemma2_tilde("two_point_bound_obtuse");
  const int coarse = 16;
  for (int ia = 1; ia <= coarse / 2; ++ia) {
    const double alpha = static_cast<double>(ia) / coarse;
    for (int jp = 0; jp < coarse; ++jp) {
      const double p = 1.0 - alpha + alpha * jp / coarse;
      if (std::abs(p - alpha) < 1e-12) continue;
      for (int kb = 0; kb <= coarse; ++kb) {
        const double beta = alpha + (0.5 - alpha) * kb / coarse;
        for (int lt = 0; lt <= 4 * coarse; ++lt) {
          const double t = static_cast<double>(lt) / (4 * coarse);
          lemma2.observe(lemma2_slack(alpha, p, beta, t, false), {alpha, p, beta, t}, 1e-9);
          // the tilde family is singular at p = 1 - alpha
          if (jp > 0) lemma2_tilde.observe(lemma2_slack(alpha, p, beta, t, true), {alpha, p, beta, t}, 1e-9);
        }
      }
    }
  }
  report.checks.push_back(lemma2.check);
  report.checks.push_back(lemma2_tilde.check);
  return report;
}

}  // namespace accinfo
