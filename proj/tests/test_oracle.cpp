#include <doctest.h>

#include <cmath>

#include "accinfo/oracle.hpp"
#include "accinfo/pyramids.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace accinfo;

namespace {

CMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> g;
  CMatrix y(rows, cols);
  for (Eigen::Index i = 0; i < y.size(); ++i) y(i) = Complex(g(rng), g(rng));
  return y;
}

double inner(const CMatrix& a, const CMatrix& b) { return (a.adjoint() * b).trace().real(); }

}  // namespace

TEST_CASE("config validation") {
  AscentConfig cfg;
  cfg.n_outcomes = 1;
  CHECK_THROWS_AS(validate(cfg, 2), std::invalid_argument);
  cfg.n_outcomes = 5;
  CHECK_THROWS_AS(validate(cfg, 2), std::invalid_argument);
  cfg.n_outcomes = 3;
  CHECK_NOTHROW(validate(cfg, 2));
  cfg.restarts = 0;
  CHECK_THROWS_AS(validate(cfg, 2), std::invalid_argument);
  CHECK(step_rule_from_string(to_string(StepRule::fixed)) == StepRule::fixed);
}

TEST_CASE("euclidean gradient matches central differences") {
  Rng rng(101);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index d = 2 + trial % 3;
    const auto ens = testing::random_ensemble(d, static_cast<std::size_t>(d + 1), rng);
    const InfoObjective f(ens);
    const CMatrix u = InfoObjective::retract(random_matrix(d * d, d, rng));
    const CMatrix dir = random_matrix(d * d, d, rng);
    const double h = 1e-6;
    const double fd = (f.value(u + h * dir) - f.value(u - h * dir)) / (2 * h);
    const double an = inner(f.euclidean_gradient(u), dir);
    CHECK(std::abs(fd - an) <= 1e-4 * std::max(std::abs(an), 1e-6));
  }
}

TEST_CASE("riemannian gradient is tangent and matches retraction differences") {
  Rng rng(103);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index d = 2 + trial % 3;
    const auto ens = testing::random_ensemble(d, static_cast<std::size_t>(d + 2), rng);
    const InfoObjective f(ens);
    const CMatrix u = InfoObjective::retract(random_matrix(d * d, d, rng));
    const CMatrix xi = f.riemannian_gradient(u);
    CHECK(hermitian_part(u.adjoint() * xi).norm() <= 1e-12);
    CMatrix dir = random_matrix(d * d, d, rng);
    dir -= u * hermitian_part(u.adjoint() * dir);
    const double h = 1e-6;
    const double fd = (f.value(InfoObjective::retract(u + h * dir)) - f.value(InfoObjective::retract(u - h * dir))) / (2 * h);
    CHECK(std::abs(fd - inner(xi, dir)) <= 1e-4 * std::max(std::abs(fd), 1e-6));
  }
}

TEST_CASE("retraction keeps the elements summing to the identity") {
  Rng rng(7);
  const CMatrix u = InfoObjective::retract(random_matrix(9, 3, rng));
  CHECK((u.adjoint() * u - CMatrix::Identity(3, 3)).norm() <= 1e-12);
  CHECK_NOTHROW(InfoObjective::to_povm(u));
}

TEST_CASE("known maxima") {
  AscentConfig cfg;
  cfg.restarts = 8;
  {
    // two states with p = 0.9
    const double alpha = std::asin(0.8);
    const auto r = maximize_info(testing::two_state_ensemble(alpha), cfg);
    CHECK(std::abs(r.best_info - (1 - oracle::binary_entropy(0.9))) <= 1e-6);
    CHECK(r.best_info <= 1 - oracle::binary_entropy(0.9) + 1e-9);
  }
  {
    const auto r = maximize_info(build_pyramid_ensemble(PyramidSpec(3, 0.0)), cfg);
    CHECK(std::abs(r.best_info - std::log2(1.5)) <= 1e-6);
  }
  {
    const auto r = maximize_info(build_pyramid_ensemble(PyramidSpec(4, 0.25)), cfg);
    CHECK(std::abs(r.best_info - 2.0) <= 1e-6);
    CHECK(r.converged);
  }
}

TEST_CASE("oracle never exceeds the closed form") {
  AscentConfig cfg;
  cfg.restarts = 4;
  cfg.max_iters = 500;
  for (const auto& spec : {PyramidSpec(3, 0.95), PyramidSpec(3, 0.5), PyramidSpec(4, 0.1), PyramidSpec(4, 0.02)}) {
    const auto r = maximize_info(build_pyramid_ensemble(spec), cfg);
    CHECK(r.best_info - accessible_information(spec) <= 1e-9);
  }
}

TEST_CASE("ascent is deterministic and independent of the thread count") {
  AscentConfig cfg;
  cfg.restarts = 6;
  cfg.max_iters = 200;
  cfg.record_trace = true;
  const auto ens = build_pyramid_ensemble(PyramidSpec(3, 0.3));
  const auto a = maximize_info(ens, cfg);
  cfg.threads = 3;
  const auto b = maximize_info(ens, cfg);
  CHECK(a.best_info == b.best_info);
  CHECK(a.trace == b.trace);
  CHECK_FALSE(a.trace.empty());
  for (std::size_t i = 1; i < a.trace.size(); ++i) CHECK(a.trace[i] >= a.trace[i - 1] - 1e-15);
}

TEST_CASE("fixed step rule and reduced outcome counts") {
  AscentConfig cfg;
  cfg.restarts = 4;
  cfg.step_rule = StepRule::fixed;
  cfg.step = 0.1;
  cfg.max_iters = 300;
  cfg.n_outcomes = 2;
  const auto r = maximize_info(testing::two_state_ensemble(1.0), cfg);
  CHECK(r.best_povm.size() == 2);
  CHECK(r.best_info <= oracle::two_state_info(1.0) + 1e-9);
  CHECK(r.best_info >= oracle::two_state_info(1.0) - 1e-4);
}

TEST_CASE("gap minimizer examples") {
  const auto basic = minimize_gap(InequalityId::basic, {{"m", 3.0}, {"p", 0.9}});
  CHECK(std::abs(basic.min_gap) <= 1e-9);
  const RVector t = basic.argmin.real();
  // one coordinate at 0.9, two at 0.05
  CHECK(std::abs(t.maxCoeff() - 0.9) <= 1e-4);
  CHECK(std::abs(t.minCoeff() - 0.05) <= 1e-4);
  CHECK(std::abs(minimize_gap(InequalityId::ineqw, {{"m", 3.0}}).min_gap) <= 1e-9);
  CHECK(std::abs(minimize_gap(InequalityId::moser, {{"m", 3.0}}).min_gap) <= 1e-9);
  CHECK(std::abs(minimize_gap(InequalityId::trine, {}).min_gap) <= 1e-9);
  CHECK(std::abs(minimize_gap(InequalityId::gross_ineq0, {}).min_gap) <= 1e-9);
  CHECK_THROWS_AS(minimize_gap(InequalityId::basic, {{"m", 3.0}}), std::invalid_argument);
}
