#include "accinfo/quantum.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace accinfo {

namespace {

constexpr double kHermTol = 1e-12;
constexpr double kPsdTol = 1e-12;
constexpr double kSumTol = 1e-10;

double xlog2x(double x) { return x > kProbFloor ? x * std::log2(x) : 0.0; }

double min_eigenvalue(const CMatrix& m) { return eigh(m).values.minCoeff(); }

}  // namespace

ProbDist::ProbDist(std::vector<double> weights) : w_(std::move(weights)) {
  if (w_.empty()) throw std::invalid_argument("ProbDist: empty weight list");
  double sum = 0.0;
  for (auto& w : w_) {
    if (!std::isfinite(w)) throw std::invalid_argument("ProbDist: non-finite weight");
    if (w < -1e-14) throw std::invalid_argument("ProbDist: negative weight " + std::to_string(w));
    if (w < 0.0) w = 0.0;
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("ProbDist: weights sum to " + std::to_string(sum));
}

ProbDist ProbDist::uniform(std::size_t n) {
  if (n == 0) throw std::invalid_argument("ProbDist: empty weight list");
  return ProbDist(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

HermitianOperator::HermitianOperator(const CMatrix& m) {
  if (m.rows() == 0 || m.rows() != m.cols())
    throw std::invalid_argument("HermitianOperator: matrix must be square and non-empty");
  if (!m.allFinite()) throw std::invalid_argument("HermitianOperator: non-finite entry");
  if (max_abs_entry(m - m.adjoint()) > kHermTol)
    throw std::invalid_argument("HermitianOperator: matrix is not Hermitian");
  m_ = hermitian_part(m);
}

HermitianOperator HermitianOperator::identity(Eigen::Index dim) {
  return HermitianOperator(CMatrix::Identity(dim, dim));
}

HermitianOperator HermitianOperator::projector(const CVector& v) {
  return HermitianOperator(v * v.adjoint());
}

DensityOperator::DensityOperator(const CMatrix& m) : op_(m) {
  if (min_eigenvalue(op_.matrix()) < -kPsdTol)
    throw std::invalid_argument("DensityOperator: matrix is not positive semidefinite");
  if (std::abs(op_.matrix().trace().real() - 1.0) > 1e-12)
    throw std::invalid_argument("DensityOperator: trace differs from 1");
}

PureState::PureState(CVector amplitudes) : psi_(std::move(amplitudes)) {
  if (psi_.size() == 0) throw std::invalid_argument("PureState: empty amplitude vector");
  if (!psi_.allFinite()) throw std::invalid_argument("PureState: non-finite amplitude");
  if (std::abs(psi_.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("PureState: amplitudes are not normalized");
}

PureState PureState::normalized(const CVector& v) {
  const double n = v.norm();
  if (!(n > 0.0)) throw std::invalid_argument("PureState: zero vector");
  return PureState(v / n);
}

PureStateEnsemble::PureStateEnsemble(ProbDist probs, std::vector<PureState> states)
    : probs_(std::move(probs)), states_(std::move(states)) {
  if (states_.size() != probs_.size())
    throw std::invalid_argument("PureStateEnsemble: probability and state counts differ");
  for (const auto& s : states_)
    if (s.dim() != states_.front().dim())
      throw std::invalid_argument("PureStateEnsemble: states have different dimensions");
}

Povm::Povm(std::vector<HermitianOperator> elements, std::optional<HermitianOperator> support)
    : elements_(std::move(elements)),
      support_(support ? *support
                       : HermitianOperator::identity(elements_.empty() ? 1 : elements_.front().dim())) {
  if (elements_.empty()) throw std::invalid_argument("Povm: no elements");
  const auto d = elements_.front().dim();
  if (support_.dim() != d) throw std::invalid_argument("Povm: support dimension mismatch");
  CMatrix sum = CMatrix::Zero(d, d);
  for (const auto& e : elements_) {
    if (e.dim() != d) throw std::invalid_argument("Povm: elements have different dimensions");
    if (min_eigenvalue(e.matrix()) < -kPsdTol)
      throw std::invalid_argument("Povm: element is not positive semidefinite");
    sum += e.matrix();
  }
  if (max_abs_entry(sum - support_.matrix()) > kSumTol)
    throw std::invalid_argument(support ? "Povm: elements do not sum to the support projector"
                                        : "Povm: elements do not sum to the identity");
  if (support && max_abs_entry(support_.matrix() * support_.matrix() - support_.matrix()) > kSumTol)
    throw std::invalid_argument("Povm: support operator is not a projector");
}

Povm Povm::from_vectors(const std::vector<CVector>& vectors, std::optional<HermitianOperator> support) {
  std::vector<HermitianOperator> elements;
  elements.reserve(vectors.size());
  for (const auto& v : vectors) elements.push_back(HermitianOperator::projector(v));
  return Povm(std::move(elements), std::move(support));
}

bool Povm::full_support() const {
  return max_abs_entry(support_.matrix() - CMatrix::Identity(dim(), dim())) <= kSumTol;
}

double shannon_entropy(std::span<const double> t) {
  double h = 0.0;
  for (double x : t) h -= xlog2x(x);
  return h;
}

double shannon_entropy(const ProbDist& dist) { return shannon_entropy(dist.weights()); }

double binary_entropy(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("binary_entropy: t outside [0, 1]");
  return -xlog2x(t) - xlog2x(1.0 - t);
}

double relative_entropy(const ProbDist& p, const ProbDist& q) {
  if (p.size() != q.size()) throw std::invalid_argument("relative_entropy: length mismatch");
  double d = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (p[j] <= kProbFloor) continue;
    if (q[j] <= kProbFloor) return std::numeric_limits<double>::infinity();
    d += p[j] * std::log2(p[j] / q[j]);
  }
  return d;
}

double bhattacharyya(const ProbDist& p, const ProbDist& q) {
  if (p.size() != q.size()) throw std::invalid_argument("bhattacharyya: length mismatch");
  double b = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) b += std::sqrt(p[j] * q[j]);
  return b;
}

DensityOperator average_state(const PureStateEnsemble& ens) {
  const auto d = ens.dim();
  CMatrix rho = CMatrix::Zero(d, d);
  for (std::size_t j = 0; j < ens.size(); ++j) rho += ens.probs()[j] * ens.states()[j].projector();
  rho /= rho.trace().real();
  return DensityOperator(rho);
}

Eigen::MatrixXd joint_distribution(const PureStateEnsemble& ens, const Povm& obs) {
  if (ens.dim() != obs.dim()) throw std::invalid_argument("joint_distribution: dimension mismatch");
  Eigen::MatrixXd joint(static_cast<Eigen::Index>(ens.size()), static_cast<Eigen::Index>(obs.size()));
  for (std::size_t j = 0; j < ens.size(); ++j) {
    const CVector& psi = ens.states()[j].amplitudes();
    for (std::size_t k = 0; k < obs.size(); ++k) {
      const double q = psi.dot(obs.elements()[k].matrix() * psi).real();
      joint(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = ens.probs()[j] * std::max(q, 0.0);
    }
  }
  return joint;
}

double mutual_information(const Eigen::MatrixXd& joint) {
  const Eigen::VectorXd rows = joint.rowwise().sum();
  const Eigen::VectorXd cols = joint.colwise().sum();
  double info = 0.0;
  for (Eigen::Index j = 0; j < joint.rows(); ++j)
    for (Eigen::Index k = 0; k < joint.cols(); ++k) {
      const double p = joint(j, k);
      if (p <= kProbFloor) continue;
      info += p * std::log2(p / (rows(j) * cols(k)));
    }
  return std::max(info, 0.0);
}

double mutual_information(const PureStateEnsemble& ens, const Povm& obs) {
  return mutual_information(joint_distribution(ens, obs));
}

double mutual_information(const DualPair& pair) {
  const auto n = static_cast<Eigen::Index>(pair.states.size());
  const auto r = static_cast<Eigen::Index>(pair.dual_obs.size());
  Eigen::MatrixXd joint(n, r);
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index j = 0; j < r; ++j) {
      const double q = (pair.states[static_cast<std::size_t>(k)].matrix() *
                        pair.dual_obs.elements()[static_cast<std::size_t>(j)].matrix())
                           .trace()
                           .real();
      joint(k, j) = pair.weights[static_cast<std::size_t>(k)] * std::max(q, 0.0);
    }
  return mutual_information(joint);
}

Povm dual_observable(const PureStateEnsemble& ens) {
  const auto rho = average_state(ens);
  const CMatrix r = pinv_sqrtm(rho.matrix());
  std::vector<HermitianOperator> elements;
  elements.reserve(ens.size());
  for (std::size_t j = 0; j < ens.size(); ++j)
    elements.emplace_back(hermitian_part(ens.probs()[j] * r * ens.states()[j].projector() * r));
  const CMatrix basis = support_basis(rho.matrix());
  if (basis.cols() == rho.dim()) return Povm(std::move(elements));
  return Povm(std::move(elements), HermitianOperator(basis * basis.adjoint()));
}

DualPair dual_ensemble(const PureStateEnsemble& ens, const Povm& obs) {
  if (ens.dim() != obs.dim()) throw std::invalid_argument("dual_ensemble: dimension mismatch");
  const auto rho = average_state(ens);
  const CMatrix root = sqrtm_psd(rho.matrix());
  std::vector<double> weights;
  std::vector<DensityOperator> states;
  std::vector<std::size_t> index;
  CMatrix recon = CMatrix::Zero(rho.dim(), rho.dim());
  for (std::size_t k = 0; k < obs.size(); ++k) {
    const CMatrix x = hermitian_part(root * obs.elements()[k].matrix() * root);
    const double pk = x.trace().real();
    if (pk <= 1e-14) continue;
    recon += x;
    weights.push_back(pk);
    states.emplace_back(x / pk);
    index.push_back(k);
  }
  if (max_abs_entry(recon - rho.matrix()) > kSumTol)
    throw std::invalid_argument("dual_ensemble: observable does not resolve the support of the average state");
  double total = 0.0;
  for (double w : weights) total += w;
  for (double& w : weights) w /= total;
  return DualPair{ProbDist(std::move(weights)), std::move(states), dual_observable(ens), std::move(index)};
}

KOperator k_operator(const DensityOperator& sigma, const Povm& dual_obs) {
  if (sigma.dim() != dual_obs.dim()) throw std::invalid_argument("k_operator: dimension mismatch");
  const auto d = sigma.dim();
  CMatrix finite = CMatrix::Zero(d, d);
  std::vector<std::size_t> divergent;
  std::vector<double> probs;
  for (std::size_t j = 0; j < dual_obs.size(); ++j) {
    const CMatrix& m = dual_obs.elements()[j].matrix();
    const double q = std::max((sigma.matrix() * m).trace().real(), 0.0);
    probs.push_back(q);
    if (q > kProbFloor)
      finite -= std::log2(q) * m;
    else if (max_abs_entry(m) > 1e-12)
      divergent.push_back(j);
  }
  return KOperator{HermitianOperator(finite), std::move(divergent), std::move(probs)};
}

}  // namespace accinfo
