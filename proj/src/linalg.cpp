#include "accinfo/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace accinfo {

HermitianEigen eigh(const CMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("eigh: matrix is not square");
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian_part(a));
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigh: decomposition failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

CMatrix spectral_map(const CMatrix& a, const std::function<double(double)>& f) {
  const auto e = eigh(a);
  RVector mapped(e.values.size());
  for (Eigen::Index i = 0; i < e.values.size(); ++i) mapped(i) = f(e.values(i));
  return e.vectors * mapped.cast<Complex>().asDiagonal() * e.vectors.adjoint();
}

CMatrix sqrtm_psd(const CMatrix& a) {
  return spectral_map(a, [](double x) { return x > 0.0 ? std::sqrt(x) : 0.0; });
}

namespace {

double cutoff_for(const CMatrix& a, double rel_cutoff) {
  const auto e = eigh(a);
  const double top = e.values.size() ? std::max(0.0, e.values.maxCoeff()) : 0.0;
  return rel_cutoff * top;
}

}  // namespace

CMatrix pinv_sqrtm(const CMatrix& a, double rel_cutoff) {
  const double cut = cutoff_for(a, rel_cutoff);
  return spectral_map(a, [cut](double x) { return x > cut ? 1.0 / std::sqrt(x) : 0.0; });
}

CMatrix pinv_psd(const CMatrix& a, double rel_cutoff) {
  const double cut = cutoff_for(a, rel_cutoff);
  return spectral_map(a, [cut](double x) { return x > cut ? 1.0 / x : 0.0; });
}

CMatrix support_basis(const CMatrix& a, double rel_cutoff) {
  const auto e = eigh(a);
  const double top = e.values.size() ? std::max(0.0, e.values.maxCoeff()) : 0.0;
  const double cut = rel_cutoff * top;
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < e.values.size(); ++i)
    if (e.values(i) > cut) keep.push_back(i);
  CMatrix basis(a.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c)
    basis.col(static_cast<Eigen::Index>(c)) = e.vectors.col(keep[c]);
  return basis;
}

CMatrix hermitian_part(const CMatrix& a) { return 0.5 * (a + a.adjoint()); }

CMatrix anti_hermitian_part(const CMatrix& a) { return 0.5 * (a - a.adjoint()); }

double operator_norm(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(a);
  return svd.singularValues()(0);
}

double max_abs_entry(const CMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

CMatrix polar_isometry(const CMatrix& y) {
  const CMatrix gram = y.adjoint() * y;
  return y * spectral_map(gram, [](double x) { return x > 0.0 ? 1.0 / std::sqrt(x) : 0.0; });
}

}  // namespace accinfo
