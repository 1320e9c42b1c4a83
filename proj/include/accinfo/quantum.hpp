#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "accinfo/linalg.hpp"

namespace accinfo {

inline constexpr double kLog2E = 1.4426950408889634074;
/// Probabilities below this are exact zeros in entropy sums.
inline constexpr double kProbFloor = 1e-15;

/// Probability vector: non-negative weights summing to 1 within 1e-12.
class ProbDist {
 public:
  explicit ProbDist(std::vector<double> weights);
  static ProbDist uniform(std::size_t n);

  std::size_t size() const { return w_.size(); }
  double operator[](std::size_t i) const { return w_[i]; }
  std::span<const double> weights() const { return w_; }

 private:
  std::vector<double> w_;
};

/// Hermitian matrix; validated to 1e-12 entrywise, then stored symmetrized.
class HermitianOperator {
 public:
  explicit HermitianOperator(const CMatrix& m);
  static HermitianOperator identity(Eigen::Index dim);
  static HermitianOperator projector(const CVector& v);

  Eigen::Index dim() const { return m_.rows(); }
  const CMatrix& matrix() const { return m_; }

 private:
  CMatrix m_;
};

class DensityOperator {
 public:
  explicit DensityOperator(const CMatrix& m);
  Eigen::Index dim() const { return op_.dim(); }
  const HermitianOperator& op() const { return op_; }
  const CMatrix& matrix() const { return op_.matrix(); }

 private:
  HermitianOperator op_;
};

class PureState {
 public:
  explicit PureState(CVector amplitudes);
  static PureState normalized(const CVector& v);

  Eigen::Index dim() const { return psi_.size(); }
  const CVector& amplitudes() const { return psi_; }
  CMatrix projector() const { return psi_ * psi_.adjoint(); }

 private:
  CVector psi_;
};

class PureStateEnsemble {
 public:
  PureStateEnsemble(ProbDist probs, std::vector<PureState> states);

  std::size_t size() const { return states_.size(); }
  Eigen::Index dim() const { return states_.front().dim(); }
  const ProbDist& probs() const { return probs_; }
  const std::vector<PureState>& states() const { return states_; }

 private:
  ProbDist probs_;
  std::vector<PureState> states_;
};

/// Finite POVM. Elements sum to the support projector (identity by default)
/// within 1e-10; a proper projector is used for observables living on the
/// support of a degenerate average state.
class Povm {
 public:
  explicit Povm(std::vector<HermitianOperator> elements,
                std::optional<HermitianOperator> support = std::nullopt);
  static Povm from_vectors(const std::vector<CVector>& vectors,
                           std::optional<HermitianOperator> support = std::nullopt);

  std::size_t size() const { return elements_.size(); }
  Eigen::Index dim() const { return elements_.front().dim(); }
  const std::vector<HermitianOperator>& elements() const { return elements_; }
  const HermitianOperator& support() const { return support_; }
  bool full_support() const;

 private:
  std::vector<HermitianOperator> elements_;
  HermitianOperator support_;
};

struct DualPair {
  ProbDist weights;
  std::vector<DensityOperator> states;
  Povm dual_obs;
  /// Index into the candidate POVM for each retained outcome (p_k > 0).
  std::vector<std::size_t> outcome_index;
};

/// K(sigma) = -sum_j M'_j log Tr sigma M'_j. Outcomes with zero probability
/// and nonzero M'_j carry a +infinity coefficient and are listed in `divergent`.
struct KOperator {
  HermitianOperator finite_part;
  std::vector<std::size_t> divergent;
  std::vector<double> outcome_probs;
  bool finite() const { return divergent.empty(); }
};

double shannon_entropy(std::span<const double> t);
double shannon_entropy(const ProbDist& dist);
double binary_entropy(double t);
/// +infinity when Q_j = 0 < P_j.
double relative_entropy(const ProbDist& p, const ProbDist& q);
double bhattacharyya(const ProbDist& p, const ProbDist& q);

DensityOperator average_state(const PureStateEnsemble& ens);
/// Joint distribution p_jk = pi_j Tr rho_j M_k as a (states x outcomes) matrix.
Eigen::MatrixXd joint_distribution(const PureStateEnsemble& ens, const Povm& obs);
/// Mutual information of a joint distribution matrix.
double mutual_information(const Eigen::MatrixXd& joint);
double mutual_information(const PureStateEnsemble& ens, const Povm& obs);
double mutual_information(const DualPair& pair);

Povm dual_observable(const PureStateEnsemble& ens);
DualPair dual_ensemble(const PureStateEnsemble& ens, const Povm& obs);
KOperator k_operator(const DensityOperator& sigma, const Povm& dual_obs);

}  // namespace accinfo
