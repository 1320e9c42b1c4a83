#include "accinfo/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "accinfo/sampling.hpp"

namespace accinfo {

std::string to_string(StepRule r) { return r == StepRule::armijo ? "armijo" : "fixed"; }

StepRule step_rule_from_string(const std::string& s) {
  if (s == "armijo") return StepRule::armijo;
  if (s == "fixed") return StepRule::fixed;
  throw std::invalid_argument("unknown step rule '" + s + "'");
}

InfoObjective::InfoObjective(const PureStateEnsemble& ens)
    : psi_(ens.dim(), static_cast<Eigen::Index>(ens.size())), pi_(static_cast<Eigen::Index>(ens.size())) {
  for (std::size_t j = 0; j < ens.size(); ++j) {
    psi_.col(static_cast<Eigen::Index>(j)) = ens.states()[j].amplitudes();
    pi_(static_cast<Eigen::Index>(j)) = ens.probs()[j];
  }
}

double InfoObjective::value(const CMatrix& u) const {
  const CMatrix a = u * psi_;
  const Eigen::MatrixXd p = a.cwiseAbs2() * pi_.asDiagonal();  // outcomes x states
  const RVector q = p.rowwise().sum();
  double info = 0.0;
  for (Eigen::Index k = 0; k < p.rows(); ++k)
    for (Eigen::Index j = 0; j < p.cols(); ++j)
      if (p(k, j) > 1e-300) info += p(k, j) * std::log2(p(k, j) / (pi_(j) * q(k)));
  return info;
}

CMatrix InfoObjective::euclidean_gradient(const CMatrix& u) const {
  const CMatrix a = u * psi_;
  const Eigen::MatrixXd p = a.cwiseAbs2() * pi_.asDiagonal();
  const RVector q = p.rowwise().sum();
  CMatrix b = CMatrix::Zero(a.rows(), a.cols());
  for (Eigen::Index k = 0; k < p.rows(); ++k)
    for (Eigen::Index j = 0; j < p.cols(); ++j)
      if (p(k, j) > 1e-300) b(k, j) = pi_(j) * std::log2(p(k, j) / (pi_(j) * q(k))) * a(k, j);
  return 2.0 * b * psi_.adjoint();
}

CMatrix InfoObjective::riemannian_gradient(const CMatrix& u) const {
  const CMatrix g = euclidean_gradient(u);
  return g - u * hermitian_part(u.adjoint() * g);
}

Povm InfoObjective::to_povm(const CMatrix& u) {
  std::vector<CVector> rows;
  for (Eigen::Index k = 0; k < u.rows(); ++k) rows.push_back(u.row(k).adjoint());
  return Povm::from_vectors(rows);
}

void validate(const AscentConfig& cfg, Eigen::Index dim) {
  const auto n = cfg.n_outcomes == 0 ? static_cast<std::size_t>(dim * dim) : cfg.n_outcomes;
  if (n < static_cast<std::size_t>(dim) || n > static_cast<std::size_t>(dim * dim))
    throw std::invalid_argument("AscentConfig: n_outcomes must lie between dim and dim^2");
  if (cfg.restarts == 0) throw std::invalid_argument("AscentConfig: restarts must be positive");
  if (cfg.max_iters == 0) throw std::invalid_argument("AscentConfig: max_iters must be positive");
  if (!(cfg.step > 0.0)) throw std::invalid_argument("AscentConfig: step must be positive");
}

namespace {

struct RestartOutcome {
  double info = -1.0;
  CMatrix u;
  bool converged = false;
  std::size_t iterations = 0;
  std::vector<double> trace;
};

RestartOutcome ascend(const InfoObjective& f, Eigen::Index n, const AscentConfig& cfg, std::uint64_t seed) {
  Rng rng(seed);
  std::normal_distribution<double> normal;
  CMatrix y(n, f.dim());
  for (Eigen::Index i = 0; i < y.size(); ++i) y(i) = Complex(normal(rng), normal(rng));
  RestartOutcome out;
  out.u = InfoObjective::retract(y);
  out.info = f.value(out.u);
  double step = cfg.step;
  std::size_t stalled = 0;
  for (std::size_t it = 0; it < cfg.max_iters; ++it) {
    out.iterations = it + 1;
    const CMatrix xi = f.riemannian_gradient(out.u);
    const double g2 = xi.squaredNorm();
    if (std::sqrt(g2) < cfg.grad_tol) {
      out.converged = true;
      break;
    }
    if (cfg.step_rule == StepRule::fixed) {
      out.u = InfoObjective::retract(out.u + cfg.step * xi);
      out.info = f.value(out.u);
    } else {
      step = std::min(step * 2.0, 1e3);
      double gain = 0.0;
      while (step > 1e-14) {
        const CMatrix cand = InfoObjective::retract(out.u + step * xi);
        const double v = f.value(cand);
        if (v >= out.info + 1e-4 * step * g2) {
          gain = v - out.info;
          out.u = cand;
          out.info = v;
          break;
        }
        step *= 0.5;
      }
      stalled = gain < 1e-15 ? stalled + 1 : 0;
      if (stalled >= 5) {
        out.converged = true;
        break;
      }
    }
    if (cfg.record_trace) out.trace.push_back(out.info);
  }
  return out;
}

}  // namespace

MaximizeResult maximize_info(const PureStateEnsemble& ens, const AscentConfig& cfg) {
  const auto d = ens.dim();
  validate(cfg, d);
  const auto n = static_cast<Eigen::Index>(cfg.n_outcomes == 0 ? static_cast<std::size_t>(d * d) : cfg.n_outcomes);
  const InfoObjective f(ens);
  std::vector<RestartOutcome> outs(cfg.restarts);
  const unsigned threads = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(cfg.restarts)));
  auto work = [&](std::size_t r) { outs[r] = ascend(f, n, cfg, derive_seed(cfg.seed, r)); };
  if (threads == 1) {
    for (std::size_t r = 0; r < cfg.restarts; ++r) work(r);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (std::size_t r = t; r < cfg.restarts; r += threads) work(r);
      });
    for (auto& th : pool) th.join();
  }
  std::size_t best = 0;
  std::size_t total_iters = 0;
  for (std::size_t r = 0; r < outs.size(); ++r) {
    total_iters += outs[r].iterations;
    if (outs[r].info > outs[best].info) best = r;
  }
  auto& b = outs[best];
  return MaximizeResult{b.info, InfoObjective::to_povm(b.u), b.converged, total_iters, std::move(b.trace)};
}

namespace {

/// Feasible set in real coordinates: `project` maps an ambient vector onto the
/// constraint set, `to_point` turns a feasible vector into an inequality point.
struct Chart {
  Eigen::Index dim;
  std::function<RVector(const RVector&)> project;
  std::function<Point(const RVector&)> to_point;
};

Chart make_chart(InequalityId id, int m) {
  switch (point_kind(id)) {
    case PointKind::simplex:
      return {m, [](const RVector& x) { return RVector(x / x.norm()); },
              [](const RVector& x) { return Point(x.cwiseAbs2().cast<Complex>()); }};
    case PointKind::sphere:
      return {2 * m, [](const RVector& x) { return RVector(x / x.norm()); },
              [m](const RVector& x) {
                Point z(m);
                for (int i = 0; i < m; ++i) z(i) = Complex(x(i), x(m + i));
                return z;
              }};
    case PointKind::hyperplane_sphere:
      return {2 * m,
              [m](const RVector& x) {
                RVector y = x;
                y.head(m).array() -= y.head(m).mean();
                y.tail(m).array() -= y.tail(m).mean();
                return RVector(y / y.norm());
              },
              [m](const RVector& x) {
                Point z(m);
                for (int i = 0; i < m; ++i) z(i) = Complex(x(i), x(m + i));
                return z;
              }};
    case PointKind::angle:
      return {1, [](const RVector& x) { return x; },
              [](const RVector& x) { return Point(Point::Constant(1, x(0))); }};
  }
  throw std::logic_error("make_chart: unhandled point kind");
}

/// Integer compositions of n into m non-negative parts.
void compositions(int n, int m, std::vector<int>& cur, const std::function<void(const std::vector<int>&)>& visit) {
  if (static_cast<int>(cur.size()) == m - 1) {
    cur.push_back(n);
    visit(cur);
    cur.pop_back();
    return;
  }
  for (int i = 0; i <= n; ++i) {
    cur.push_back(i);
    compositions(n - i, m, cur, visit);
    cur.pop_back();
  }
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

int auto_resolution(PointKind kind, int m) {
  if (kind == PointKind::angle) return 20000;
  const double budget = kind == PointKind::simplex ? 2e5 : 1e6;
  const double signs = kind == PointKind::simplex ? 1.0 : std::pow(2.0, m - 1);
  int n = 2;
  while (binomial(n + 1 + m - 1, m - 1) * signs <= budget) ++n;
  return n;
}

}  // namespace

MinimizeGapResult minimize_gap(InequalityId id, const Params& params, std::size_t grid_resolution,
                               std::size_t polish_budget) {
  validate_params(id, params);
  const int m = point_dimension(id, params);
  const auto kind = point_kind(id);
  const Chart chart = make_chart(id, m);
  const int n = grid_resolution ? static_cast<int>(grid_resolution) : auto_resolution(kind, m);

  std::size_t evaluations = 0;
  auto f = [&](const RVector& x) {
    ++evaluations;
    return gap(id, chart.to_point(x), params);
  };

  constexpr std::size_t kStarts = 16;
  std::vector<std::pair<double, RVector>> best;
  auto offer = [&](const RVector& x) {
    const double v = f(x);
    if (best.size() < kStarts || v < best.back().first) {
      best.emplace_back(v, x);
      std::stable_sort(best.begin(), best.end(), [](auto& a, auto& b) { return a.first < b.first; });
      if (best.size() > kStarts) best.pop_back();
    }
  };

  if (kind == PointKind::angle) {
    for (int i = 0; i < n; ++i) offer(RVector::Constant(1, 2.0 * std::numbers::pi * i / n));
  } else {
    std::vector<int> cur;
    compositions(n, m, cur, [&](const std::vector<int>& c) {
      RVector mod(m);
      for (int i = 0; i < m; ++i) mod(i) = std::sqrt(static_cast<double>(c[i]) / n);
      if (kind == PointKind::simplex) {
        offer(mod);
        return;
      }
      // real sign patterns with the first nonzero coordinate positive
      for (unsigned mask = 0; mask < (1u << (m - 1)); ++mask) {
        RVector x = RVector::Zero(2 * m);
        for (int i = 0; i < m; ++i) x(i) = (i > 0 && (mask >> (i - 1)) & 1u) ? -mod(i) : mod(i);
        if (kind == PointKind::hyperplane_sphere) {
          RVector y = x;
          y.head(m).array() -= y.head(m).mean();
          if (y.norm() < 1e-9) continue;
          x = chart.project(y);
        }
        offer(x);
      }
    });
  }

  // projected descent with central-difference gradients
  double min_gap = std::numeric_limits<double>::infinity();
  RVector argmin;
  for (auto& [v0, x0] : best) {
    RVector x = chart.project(x0);
    double fx = f(x);
    double step = 1e-2;
    for (std::size_t it = 0; it < polish_budget; ++it) {
      RVector g(chart.dim);
      const double h = 1e-7;
      for (Eigen::Index i = 0; i < chart.dim; ++i) {
        RVector xp = x;
        RVector xm = x;
        xp(i) += h;
        xm(i) -= h;
        g(i) = (f(chart.project(xp)) - f(chart.project(xm))) / (2.0 * h);
      }
      const double g2 = g.squaredNorm();
      if (g2 < 1e-24) break;
      step = std::min(step * 2.0, 1.0);
      bool moved = false;
      while (step > 1e-16) {
        const RVector xn = chart.project(x - step * g);
        const double fn = f(xn);
        if (fn <= fx - 1e-4 * step * g2) {
          moved = fx - fn > 0.0;
          x = xn;
          fx = fn;
          break;
        }
        step *= 0.5;
      }
      if (!moved) break;
    }
    if (fx < min_gap) {
      min_gap = fx;
      argmin = x;
    }
  }
  return MinimizeGapResult{min_gap, chart.to_point(argmin), evaluations};
}

}  // namespace accinfo
