#include "accinfo/optimality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "accinfo/sampling.hpp"

namespace accinfo {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::certified: return "certified";
    case Verdict::iib_failed: return "iib_failed";
    case Verdict::iia_violated: return "iia_violated";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Verdict verdict_from_string(const std::string& s) {
  for (auto v : {Verdict::certified, Verdict::iib_failed, Verdict::iia_violated, Verdict::inconclusive})
    if (to_string(v) == s) return v;
  throw std::invalid_argument("unknown verdict '" + s + "'");
}

NotACertificate::NotACertificate(double anti_hermitian_norm)
    : std::runtime_error("not-a-certificate: fitted dual variable has anti-Hermitian part of norm " +
                         std::to_string(anti_hermitian_norm)),
      norm_(anti_hermitian_norm) {}

namespace {

/// Rank-one components sqrt(lambda) v of a PSD element.
std::vector<CVector> rank_one_components(const CMatrix& m) {
  const auto e = eigh(m);
  const double top = std::max(0.0, e.values.maxCoeff());
  std::vector<CVector> out;
  for (Eigen::Index i = e.values.size() - 1; i >= 0; --i)
    if (e.values(i) > 1e-12 * top && e.values(i) > 0.0) out.push_back(std::sqrt(e.values(i)) * e.vectors.col(i));
  return out;
}

/// Dual-observable elements stacked as rows: q_j = sum over the rows of group j of |row . psi|^2.
struct GapFunction {
  CMatrix rows;
  std::vector<Eigen::Index> group;
  std::size_t outcomes = 0;
  CMatrix lambda;
  CMatrix support;
  bool restricted = false;

  GapFunction(const Povm& dual_obs, const HermitianOperator& lambda0)
      : lambda(lambda0.matrix()), support(dual_obs.support().matrix()), restricted(!dual_obs.full_support()) {
    if (lambda0.dim() != dual_obs.dim()) throw std::invalid_argument("check_iia: dimension mismatch");
    std::vector<CVector> vs;
    for (std::size_t j = 0; j < dual_obs.size(); ++j)
      for (auto& v : rank_one_components(dual_obs.elements()[j].matrix())) {
        vs.push_back(v);
        group.push_back(static_cast<Eigen::Index>(j));
      }
    outcomes = dual_obs.size();
    rows.resize(static_cast<Eigen::Index>(vs.size()), dual_obs.dim());
    for (std::size_t r = 0; r < vs.size(); ++r) rows.row(static_cast<Eigen::Index>(r)) = vs[r].adjoint();
  }

  std::vector<double> probs(const CVector& y) const {
    std::vector<double> q(outcomes, 0.0);
    for (Eigen::Index r = 0; r < y.size(); ++r) q[static_cast<std::size_t>(group[static_cast<std::size_t>(r)])] += std::norm(y(r));
    return q;
  }

  double value(const CVector& psi) const {
    const CVector y = rows * psi;
    return shannon_entropy(probs(y)) - psi.dot(lambda * psi).real();
  }

  /// Real gradient 2 dg/d(conj psi) projected onto the sphere tangent space.
  CVector gradient(const CVector& psi) const {
    const CVector y = rows * psi;
    const auto q = probs(y);
    CVector w(y.size());
    for (Eigen::Index r = 0; r < y.size(); ++r) {
      const double qj = q[static_cast<std::size_t>(group[static_cast<std::size_t>(r)])];
      w(r) = qj > 1e-300 ? -(std::log2(qj) + kLog2E) * y(r) : Complex(0.0);
    }
    CVector g = 2.0 * (rows.adjoint() * w - lambda * psi);
    if (restricted) g = support * g;
    return g - psi * psi.dot(g).real();
  }

  CVector project(const CVector& v) const {
    CVector x = restricted ? CVector(support * v) : v;
    const double n = x.norm();
    return n > 0.0 ? CVector(x / n) : v;
  }
};

struct Candidate {
  double gap;
  CVector psi;
};

struct PolishOutcome {
  double value;
  CVector psi;
  std::size_t evaluations;
  bool converged;
};

PolishOutcome sphere_descent(const GapFunction& f, CVector x, std::size_t max_iters) {
  x = f.project(x);
  double fx = f.value(x);
  std::size_t evals = 1;
  double step = 0.1;
  for (std::size_t it = 0; it < max_iters; ++it) {
    const CVector g = f.gradient(x);
    const double g2 = g.squaredNorm();
    if (g2 < 1e-22) return {fx, x, evals, true};
    step = std::min(step * 2.0, 10.0);
    bool accepted = false;
    while (step > 1e-18) {
      const CVector xn = f.project(x - step * g);
      const double fn = f.value(xn);
      ++evals;
      if (fn <= fx - 1e-4 * step * g2) {
        accepted = (fx - fn) > 1e-16 * (1.0 + std::abs(fx));
        x = xn;
        fx = fn;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) return {fx, x, evals, true};
  }
  return {fx, x, evals, false};
}

void keep_best(std::vector<Candidate>& best, Candidate c, std::size_t k) {
  if (k == 0) return;
  if (best.size() < k) {
    best.push_back(std::move(c));
    std::push_heap(best.begin(), best.end(), [](auto& a, auto& b) { return a.gap < b.gap; });
  } else if (c.gap < best.front().gap) {
    std::pop_heap(best.begin(), best.end(), [](auto& a, auto& b) { return a.gap < b.gap; });
    best.back() = std::move(c);
    std::push_heap(best.begin(), best.end(), [](auto& a, auto& b) { return a.gap < b.gap; });
  }
}

constexpr std::size_t kChunks = 16;

}  // namespace

HermitianOperator fit_lambda0(const PureStateEnsemble& ens, const Povm& candidate) {
  const auto rho = average_state(ens);
  const auto pair = dual_ensemble(ens, candidate);
  const auto d = rho.dim();
  CMatrix x = CMatrix::Zero(d, d);
  for (std::size_t k = 0; k < pair.states.size(); ++k) {
    const auto kop = k_operator(pair.states[k], pair.dual_obs);
    x += pair.weights[k] * kop.finite_part.matrix() * pair.states[k].matrix();
  }
  const CMatrix lam = x * pinv_psd(rho.matrix());
  const double anti = operator_norm(anti_hermitian_part(lam));
  if (anti > 1e-8) throw NotACertificate(anti);
  return HermitianOperator(hermitian_part(lam));
}

std::vector<double> check_iib(const PureStateEnsemble& ens, const Povm& candidate,
                              const HermitianOperator& lambda0) {
  if (lambda0.dim() != ens.dim()) throw std::invalid_argument("check_iib: dimension mismatch");
  const auto rho = average_state(ens);
  const CMatrix root = sqrtm_psd(rho.matrix());
  const Povm dual = dual_observable(ens);
  std::vector<double> residuals;
  for (const auto& element : candidate.elements()) {
    if ((rho.matrix() * element.matrix()).trace().real() <= 1e-14) continue;
    double worst = 0.0;
    for (const auto& v : rank_one_components(element.matrix())) {
      const CVector phi = root * v;
      const double pv = phi.squaredNorm();
      if (pv <= 1e-14) continue;
      const DensityOperator sigma(phi * phi.adjoint() / pv);
      const auto kop = k_operator(sigma, dual);
      worst = std::max(worst, ((kop.finite_part.matrix() - lambda0.matrix()) * phi).norm());
    }
    residuals.push_back(worst);
  }
  return residuals;
}

double iia_gap(const Povm& dual_obs, const HermitianOperator& lambda0, const CVector& psi) {
  return GapFunction(dual_obs, lambda0).value(psi);
}

IiaResult check_iia(const Povm& dual_obs, const HermitianOperator& lambda0, const IiaBudget& budget) {
  const GapFunction f(dual_obs, lambda0);
  const auto d = dual_obs.dim();
  const std::size_t k = budget.polish_starts;

  std::vector<std::vector<Candidate>> chunk_best(kChunks);
  auto run_chunk = [&](std::size_t c) {
    Rng rng(derive_seed(budget.seed, c));
    const std::size_t begin = budget.samples * c / kChunks;
    const std::size_t end = budget.samples * (c + 1) / kChunks;
    auto& best = chunk_best[c];
    for (std::size_t i = begin; i < end; ++i) {
      const CVector psi = f.project(random_unit_vector(d, rng));
      keep_best(best, {f.value(psi), psi}, std::max<std::size_t>(k, 1));
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(budget.threads, kChunks));
  if (threads == 1) {
    for (std::size_t c = 0; c < kChunks; ++c) run_chunk(c);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (std::size_t c = t; c < kChunks; c += threads) run_chunk(c);
      });
    for (auto& th : pool) th.join();
  }

  std::vector<Candidate> merged;
  for (auto& b : chunk_best)
    for (auto& c : b) merged.push_back(std::move(c));
  std::stable_sort(merged.begin(), merged.end(), [](auto& a, auto& b) { return a.gap < b.gap; });

  IiaResult result;
  result.evaluations = budget.samples;
  result.worst_gap = std::numeric_limits<double>::infinity();
  if (!merged.empty()) {
    result.worst_gap = merged.front().gap;
    result.worst_state = merged.front().psi;
  }
  std::vector<CVector> starts;
  for (const auto& s : budget.seeds) {
    if (s.size() != d) throw std::invalid_argument("check_iia: seed dimension mismatch");
    if (f.project(s).norm() > 0.5) starts.push_back(s);
  }
  for (std::size_t i = 0; i < std::min(k, merged.size()); ++i) starts.push_back(merged[i].psi);
  for (const auto& s : starts) {
    const auto out = sphere_descent(f, s, budget.polish_iters);
    result.evaluations += out.evaluations;
    if (!out.converged) result.budget_exhausted = true;
    if (out.value < result.worst_gap) {
      result.worst_gap = out.value;
      result.worst_state = out.psi;
    }
  }
  if (result.worst_state.size() == 0) result.worst_state = f.project(CVector::Unit(d, 0));
  return result;
}

double accessible_from_lambda(const PureStateEnsemble& ens, const HermitianOperator& lambda0) {
  const auto rho = average_state(ens);
  return shannon_entropy(ens.probs()) - (rho.matrix() * lambda0.matrix()).trace().real();
}

OptimalityReport verify_optimality(const PureStateEnsemble& ens, const Povm& candidate, IiaBudget budget) {
  const HermitianOperator lambda0 = fit_lambda0(ens, candidate);
  auto residuals = check_iib(ens, candidate, lambda0);
  const Povm dual = dual_observable(ens);

  // the dual states are the expected equality points of the entropy inequality
  const CMatrix root = sqrtm_psd(average_state(ens).matrix());
  for (const auto& element : candidate.elements())
    for (const auto& v : rank_one_components(element.matrix())) {
      const CVector phi = root * v;
      if (phi.squaredNorm() > 1e-14) budget.seeds.push_back(phi / phi.norm());
    }
  const auto iia = check_iia(dual, lambda0, budget);

  const double max_res = residuals.empty() ? 0.0 : *std::max_element(residuals.begin(), residuals.end());
  Verdict verdict = Verdict::certified;
  if (max_res > kIibTolerance)
    verdict = Verdict::iib_failed;
  else if (iia.worst_gap < -kIiaTolerance)
    verdict = Verdict::iia_violated;
  else if (budget.samples == 0 && budget.seeds.empty())
    verdict = Verdict::inconclusive;

  return OptimalityReport{lambda0,
                          std::move(residuals),
                          iia.worst_gap,
                          PureState::normalized(iia.worst_state),
                          accessible_from_lambda(ens, lambda0),
                          mutual_information(ens, candidate),
                          verdict};
}

}  // namespace accinfo
