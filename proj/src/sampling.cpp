#include "accinfo/sampling.hpp"

namespace accinfo {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer over the combined key
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

CVector random_unit_vector(Eigen::Index dim, Rng& rng) {
  std::normal_distribution<double> n;
  CVector v(dim);
  do {
    for (Eigen::Index i = 0; i < dim; ++i) v(i) = Complex(n(rng), n(rng));
  } while (v.norm() < 1e-12);
  return v / v.norm();
}

RVector random_real_unit_vector(Eigen::Index dim, Rng& rng) {
  std::normal_distribution<double> n;
  RVector v(dim);
  do {
    for (Eigen::Index i = 0; i < dim; ++i) v(i) = n(rng);
  } while (v.norm() < 1e-12);
  return v / v.norm();
}

RVector random_simplex_point(Eigen::Index m, Rng& rng) {
  std::exponential_distribution<double> e(1.0);
  RVector t(m);
  for (Eigen::Index i = 0; i < m; ++i) t(i) = e(rng);
  return t / t.sum();
}

CVector random_hyperplane_vector(Eigen::Index m, Rng& rng) {
  std::normal_distribution<double> n;
  CVector v(m);
  do {
    for (Eigen::Index i = 0; i < m; ++i) v(i) = Complex(n(rng), n(rng));
    v.array() -= v.mean();
  } while (v.norm() < 1e-12);
  return v / v.norm();
}

}  // namespace accinfo
