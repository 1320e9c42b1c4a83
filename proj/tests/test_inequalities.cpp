#include <doctest.h>

#include <cmath>
#include <numbers>

#include "accinfo/inequalities.hpp"
#include "accinfo/pyramids.hpp"
#include "accinfo/sampling.hpp"
#include "oracles.hpp"

using namespace accinfo;

namespace {

Point simplex_point(const RVector& t) { return t.cast<Complex>(); }

Params mp(int m, double p) { return {{"m", static_cast<double>(m)}, {"p", p}}; }
Params monly(int m) { return {{"m", static_cast<double>(m)}}; }

}  // namespace

TEST_CASE("ids and patterns round-trip through names") {
  for (auto id : all_inequalities()) CHECK(inequality_from_string(to_string(id)) == id);
  CHECK_THROWS_AS(inequality_from_string("nope"), std::invalid_argument);
  for (const auto& s : {"none", "uniform", "split(6,1)", "pairs(2)"}) CHECK(to_string(pattern_from_string(s)) == s);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(validate_params(InequalityId::basic, {{"m", 3.0}}), std::invalid_argument);
  CHECK_THROWS_AS(validate_params(InequalityId::basic, mp(3, 0.5)), std::invalid_argument);
  CHECK_THROWS_AS(validate_params(InequalityId::basic, {{"m", 3.0}, {"p", 0.9}, {"q", 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(validate_params(InequalityId::ineqz, monly(7)), std::invalid_argument);
  CHECK_THROWS_AS(validate_params(InequalityId::basic2, mp(3, 0.8)), std::invalid_argument);
  CHECK_THROWS_AS(gap(InequalityId::basic, simplex_point(RVector{{0.5, 0.6, 0.1}}), mp(3, 0.9)),
                  std::invalid_argument);
  CHECK_NOTHROW(validate_params(InequalityId::trine, {}));
}

TEST_CASE("coefficients against extended-precision values") {
  const auto acute = coeffs_acute(0.9, 3);
  CHECK(std::abs(acute.mu0 - oracle::kAcuteMu0_3_09) <= 1e-13);
  CHECK(std::abs(acute.mu1 - oracle::kAcuteMu1_3_09) <= 1e-13);
  const auto obtuse = coeffs_obtuse(0.95, 4);
  CHECK(std::abs(obtuse.mu0 - oracle::kObtuseMu0_4_095) <= 1e-13);
  CHECK(std::abs(obtuse.mu1 - oracle::kObtuseMu1_4_095) <= 1e-13);
  // acute mu0 >= 0, obtuse mu0 <= 0
  for (int m = 3; m <= 8; ++m)
    for (double f : {0.1, 0.5, 0.9}) {
      const double p = (m - 1.0) / m + f * (1.0 / m);
      CHECK(coeffs_acute(p, m).mu0 >= 0.0);
      if (m >= 7 || p >= *thresholds(m).p_of_m) CHECK(coeffs_obtuse(p, m).mu0 <= 0.0);
    }
}

TEST_CASE("limiting coefficients") {
  for (int m = 3; m <= 8; ++m) {
    const auto c = coeffs_acute((m - 1.0) / m, m);
    CHECK(std::abs(c.mu0 - std::log2(m - 1.0) / (m - 2.0)) <= 1e-12);
    CHECK(std::abs(c.mu1 - (m * std::log2(m - 1.0) / (m - 2.0) - std::log2(m))) <= 1e-12);
  }
  const auto gross = coeffs_binary(0.5);
  CHECK(gross.mu0 == doctest::Approx(kLog2E));
  CHECK(gross.mu1 == doctest::Approx(std::log2(std::numbers::e / 2)));
  for (int m = 3; m <= 6; ++m) CHECK(std::abs(coeffs_obtuse(*thresholds(m).p_of_m, m).mu1 + 1.0) <= 1e-10);
  for (int m = 3; m <= 10; ++m)
    CHECK(std::abs(-obtuse_formula((m - 1.0) / m, m).mu1 - flat_split_value(m)) <= 1e-12);
  CHECK(coeffs_obtuse(0.90, 4).mu1 <= coeffs_obtuse(0.95, 4).mu1);
}

TEST_CASE("general coefficients reduce to the m-families at alpha = 1/m") {
  for (int m = 3; m <= 8; ++m)
    for (double p : {0.9, 0.95, 0.99}) {
      const auto ga = coeffs_general(p, 1.0 / m, false);
      const auto a = coeffs_acute(p, m);
      CHECK(std::abs(ga.mu0 / m - a.mu0) <= 1e-12);
      CHECK(std::abs(ga.mu1 - std::log2(m) - a.mu1) <= 1e-12);
      const auto gt = coeffs_general(p, 1.0 / m, true);
      const auto o = obtuse_formula(p, m);
      CHECK(std::abs(gt.mu0 / m - o.mu0) <= 1e-12);
      CHECK(std::abs(gt.mu1 - std::log2(m) - o.mu1) <= 1e-12);
    }
  // alpha = 1/2 is the two-point family
  for (double p : {0.6, 0.8, 0.95}) {
    const auto g = coeffs_general(p, 0.5, false);
    const auto b = coeffs_binary(p);
    // relative entropy to (1/2, 1/2) is h(t) - 1
    CHECK(std::abs(g.mu0 - 2 * b.mu0) <= 1e-12);
    CHECK(std::abs(g.mu0 / 2 - g.mu1 + 1.0 + b.mu1) <= 1e-12);
  }
  CHECK_THROWS_AS(coeffs_general(0.3, 0.3, false), std::domain_error);
  CHECK(std::abs(lemma_l(0.9, 0.1)) <= 1e-15);
}

TEST_CASE("gap examples") {
  CHECK(std::abs(gap(InequalityId::basic, simplex_point(RVector{{0.9, 0.05, 0.05}}), mp(3, 0.9))) <= 1e-12);
  Point w(3);
  w << 1 / std::sqrt(2.0), -1 / std::sqrt(2.0), 0;
  CHECK(std::abs(gap(InequalityId::ineqw, w, monly(3))) <= 1e-12);
  CHECK(std::abs(gap(InequalityId::moser, Point::Constant(5, 0.2), monly(5))) <= 1e-12);
  CHECK(ineqw_rhs(6) == 1.0);
  for (int m = 7; m <= 12; ++m) {
    CHECK(std::abs(ineqw_rhs(m) - oracle::kFlatSplit[m - 7]) <= 1e-13);
    CHECK(ineqw_rhs(m) < 1.0);
  }
  for (int m = 3; m <= 6; ++m) CHECK(flat_split_value(m) > 1.0);
}

TEST_CASE("equality points") {
  const auto basic = equality_points(InequalityId::basic, mp(3, 0.9));
  CHECK(basic.size() == 3);
  const auto z4 = equality_points(InequalityId::ineqz, monly(4));
  CHECK(z4.size() == 12 + 4);
  for (auto id : all_inequalities()) {
    Params params;
    if (id == InequalityId::binary_ineq) params = {{"p", 0.8}};
    else if (id == InequalityId::basic) params = mp(5, 0.9);
    else if (id == InequalityId::basic2) params = mp(5, 0.9);
    else if (id != InequalityId::gross_ineq0 && id != InequalityId::trine) params = monly(5);
    for (const auto& z : equality_points(id, params)) CHECK(std::abs(gap(id, z, params)) <= 1e-9);
  }
  for (const auto& a : equality_points(InequalityId::trine, {})) CHECK(std::abs(gap(InequalityId::trine, a, {})) <= 1e-12);
}

TEST_CASE("basic with m = 2 is the binary inequality") {
  Rng rng(2);
  std::uniform_real_distribution<double> u(0.5, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double p = u(rng);
    const RVector t = random_simplex_point(2, rng);
    const double a = gap(InequalityId::basic, simplex_point(t), mp(2, p));
    const double b = gap(InequalityId::binary_ineq, simplex_point(t), {{"p", p}});
    CHECK(std::abs(a - b) <= 1e-12);
  }
}

TEST_CASE("the gap is tangent at the equality points of basic") {
  const double h = 1e-6;
  for (int m = 3; m <= 6; ++m)
    for (double p : {(m - 1.0) / m + 0.02, 0.9, 0.97}) {
      const auto params = mp(m, p);
      for (const auto& z : equality_points(InequalityId::basic, params)) {
        const RVector t = z.real();
        for (int i = 0; i < m; ++i)
          for (int j = i + 1; j < m; ++j) {
            RVector d = RVector::Zero(m);
            d(i) = 1.0;
            d(j) = -1.0;
            const double slope = (gap(InequalityId::basic, simplex_point(t + h * d), params) -
                                  gap(InequalityId::basic, simplex_point(t - h * d), params)) /
                                 (2 * h);
            CHECK(std::abs(slope) <= 1e-6);
          }
      }
    }
}

TEST_CASE("h is the envelope of the binary family") {
  for (double t : {0.55, 0.6, 0.7, 0.8, 0.9, 0.95}) {
    const RVector pt{{t, 1 - t}};
    double best_p = 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 10000; ++i) {
      const double p = 0.5 + 0.5 * i / 10000.0;
      const double g = gap(InequalityId::binary_ineq, simplex_point(pt), {{"p", p}});
      CHECK(g >= -1e-12);
      if (g < best) {
        best = g;
        best_p = p;
      }
    }
    CHECK(std::abs(best_p - t) <= 1e-4);
    CHECK(best <= 1e-6);
  }
}

TEST_CASE("complex points reduce to real ones for the flat inequality") {
  Rng rng(31);
  for (int i = 0; i < 1000; ++i) {
    const int m = 3 + i % 8;
    const CVector z = random_hyperplane_vector(m, rng);
    const RVector x = z.real();
    const RVector y = z.imag();
    const double p = x.squaredNorm();
    if (p < 1e-9 || p > 1 - 1e-9) continue;
    const double gx = gap(InequalityId::ineqw, (x / std::sqrt(p)).cast<Complex>(), monly(m));
    const double gy = gap(InequalityId::ineqw, (y / std::sqrt(1 - p)).cast<Complex>(), monly(m));
    CHECK(gap(InequalityId::ineqw, z, monly(m)) >= std::min(gx, gy) - 1e-12);
  }
}

TEST_CASE("the bound with the Bhattacharyya term beats the Moser bound near uniform") {
  Rng rng(41);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int m = 3; m <= 8; ++m) {
    int checked = 0;
    while (checked < 1000) {
      RVector d(m);
      for (int i = 0; i < m; ++i) d(i) = g(rng);
      d.array() -= d.mean();
      const RVector t = RVector::Constant(m, 1.0 / m) + (0.1 / m) * d;
      if (t.minCoeff() < 0 || 0.5 * (t.array() - 1.0 / m).abs().sum() > 0.05) continue;
      ++checked;
      // same left side, so a larger right side means a smaller gap
      CHECK(gap(InequalityId::basic11, simplex_point(t), monly(m)) <=
            gap(InequalityId::moser, simplex_point(t), monly(m)) + 1e-12);
    }
  }
}

TEST_CASE("obtuse family: the plus cross term gives the weaker bound") {
  Rng rng(43);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int m = 3; m <= 9; ++m) {
    const double lo = m <= 6 ? *thresholds(m).p_of_m : (m - 1.0) / m + 1e-6;
    for (int i = 0; i < 200; ++i) {
      const double p = lo + (1.0 - lo) * u(rng);
      const double beta = u(rng);
      const double t = u(rng);
      const auto c = coeffs_obtuse(p, m);
      const double plus = std::sqrt(beta * t) + std::sqrt((1 - beta) * (1 - t));
      const double minus = std::sqrt(beta * t) - std::sqrt((1 - beta) * (1 - t));
      CHECK(c.mu0 * plus * plus - c.mu1 <= c.mu0 * minus * minus - c.mu1 + 1e-12);
    }
  }
}

TEST_CASE("two-value scan patterns") {
  const auto w5 = two_value_scan(InequalityId::ineqw, monly(5));
  CHECK(std::abs(w5.worst_gap) <= 1e-9);
  CHECK(w5.pattern.kind == MinimizerPattern::Kind::pairs);
  const auto w8 = two_value_scan(InequalityId::ineqw, monly(8));
  CHECK(std::abs(w8.worst_gap) <= 1e-9);
  CHECK(to_string(w8.pattern) == "split(7,1)");
  const auto b = two_value_scan(InequalityId::basic, mp(3, 2.0 / 3.0));
  CHECK(std::abs(b.worst_gap) <= 1e-9);
  CHECK_THROWS_AS(two_value_scan(InequalityId::moser, monly(3)), std::invalid_argument);
}

TEST_CASE("sampled positivity on a few parameter sets") {
  const std::vector<std::pair<InequalityId, Params>> cases{
      {InequalityId::binary_ineq, {{"p", 0.7}}}, {InequalityId::gross_ineq0, {}},  {InequalityId::basic, mp(4, 0.9)},
      {InequalityId::basic11, monly(5)},        {InequalityId::basic2, mp(5, 0.95)}, {InequalityId::ineqz, monly(4)},
      {InequalityId::ineqw, monly(7)},          {InequalityId::trine, {}}};
  for (const auto& [id, params] : cases) {
    const auto r = sample_gap(id, params, 20000, 5);
    CAPTURE(to_string(id));
    CHECK(r.worst_gap >= -1e-9);
    CHECK(r.samples_used == 20000);
    for (double e : r.equality_residuals) CHECK(e <= 1e-9);
  }
}

TEST_CASE("sampling is deterministic and thread-count independent") {
  const auto a = sample_gap(InequalityId::basic, mp(4, 0.9), 5000, 9, 1);
  const auto b = sample_gap(InequalityId::basic, mp(4, 0.9), 5000, 9, 3);
  CHECK(a.worst_gap == b.worst_gap);
  CHECK((a.worst_point - b.worst_point).norm() == 0.0);
}

TEST_CASE("lemma helpers") {
  for (double alpha : {0.1, 0.25, 0.5}) CHECK(std::abs(lemma_l(1 - alpha, alpha)) <= 1e-15);
  CHECK(h_half(0.5) == 0.0);
  CHECK(local_minima_count(1.0, 0.0, 4096) <= 2);
  LemmaGrid small;
  small.m_max = 6;
  small.points_per_unit = 64;
  const auto report = lemma_checks(small);
  CHECK(report.passed());
  CHECK(report.checks.size() >= 10);
  CHECK_THROWS_AS(lemma_checks(LemmaGrid{2, 12, 2}), std::invalid_argument);
}
