#pragma once

#include <cmath>

#include "accinfo/quantum.hpp"
#include "accinfo/sampling.hpp"

namespace testing {

inline accinfo::PureStateEnsemble two_state_ensemble(double alpha) {
  using namespace accinfo;
  CVector plus(2), minus(2);
  plus << std::cos(alpha / 2), std::sin(alpha / 2);
  minus << std::cos(alpha / 2), -std::sin(alpha / 2);
  return PureStateEnsemble(ProbDist::uniform(2), {PureState(plus), PureState(minus)});
}

inline accinfo::Povm plus_minus_basis() {
  using namespace accinfo;
  CVector up(2), down(2);
  up << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  down << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
  return Povm::from_vectors({up, down});
}

/// n random states in dimension d with random priors; n >= d keeps the average state full rank.
inline accinfo::PureStateEnsemble random_ensemble(Eigen::Index d, std::size_t n, accinfo::Rng& rng) {
  using namespace accinfo;
  const RVector w = random_simplex_point(static_cast<Eigen::Index>(n), rng);
  std::vector<double> probs(w.data(), w.data() + w.size());
  std::vector<PureState> states;
  for (std::size_t i = 0; i < n; ++i) states.push_back(PureState(random_unit_vector(d, rng)));
  return PureStateEnsemble(ProbDist(probs), std::move(states));
}

/// Random rank-one POVM with n outcomes from a Haar-like isometry.
inline accinfo::Povm random_povm(Eigen::Index d, Eigen::Index n, accinfo::Rng& rng) {
  using namespace accinfo;
  std::normal_distribution<double> g;
  CMatrix y(n, d);
  for (Eigen::Index i = 0; i < y.size(); ++i) y(i) = Complex(g(rng), g(rng));
  const CMatrix u = polar_isometry(y);
  std::vector<CVector> rows;
  for (Eigen::Index k = 0; k < n; ++k) rows.push_back(u.row(k).adjoint());
  return Povm::from_vectors(rows);
}

}  // namespace testing
