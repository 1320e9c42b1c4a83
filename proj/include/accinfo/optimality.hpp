#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "accinfo/quantum.hpp"

namespace accinfo {

enum class Verdict { certified, iib_failed, iia_violated, inconclusive };

std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

inline constexpr double kIibTolerance = 1e-8;
inline constexpr double kIiaTolerance = 1e-6;

/// Raised when the fitted dual variable is not Hermitian, i.e. the candidate
/// cannot be optimal.
class NotACertificate : public std::runtime_error {
 public:
  explicit NotACertificate(double anti_hermitian_norm);
  double anti_hermitian_norm() const { return norm_; }

 private:
  double norm_;
};

/// Search budget for the global minimization in condition (ii.a).
struct IiaBudget {
  std::size_t samples = 200000;
  std::size_t polish_starts = 16;
  std::size_t polish_iters = 400;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  /// Extra descent starts, typically the expected equality points.
  std::vector<CVector> seeds;
};

struct IiaResult {
  double worst_gap = 0.0;
  CVector worst_state;
  std::size_t evaluations = 0;
  bool budget_exhausted = false;
};

struct OptimalityReport {
  HermitianOperator lambda0;
  std::vector<double> iib_residuals;
  double iia_worst_gap;
  PureState iia_worst_state;
  double accessible_info;
  double candidate_info;
  Verdict verdict;
};

HermitianOperator fit_lambda0(const PureStateEnsemble& ens, const Povm& candidate);

/// One residual per outcome with p_k > 0. Higher-rank elements are split into
/// their eigenvectors and the largest component residual is reported.
std::vector<double> check_iib(const PureStateEnsemble& ens, const Povm& candidate,
                              const HermitianOperator& lambda0);

/// g(psi) = H({<psi|M'_j|psi>}) - <psi|lambda0|psi>, in bits.
double iia_gap(const Povm& dual_obs, const HermitianOperator& lambda0, const CVector& psi);

IiaResult check_iia(const Povm& dual_obs, const HermitianOperator& lambda0, const IiaBudget& budget);

/// A = H(pi) - Tr rho_bar lambda0.
double accessible_from_lambda(const PureStateEnsemble& ens, const HermitianOperator& lambda0);

OptimalityReport verify_optimality(const PureStateEnsemble& ens, const Povm& candidate,
                                   IiaBudget budget = {});

}  // namespace accinfo
