#include "accinfo/roots.hpp"

#include <cmath>
#include <stdexcept>

namespace accinfo {

double bisect(const std::function<double(double)>& f, double lo, double hi, double tol, int max_iters) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) throw std::domain_error("bisect: no sign change on the bracket");
  for (int i = 0; i < max_iters && hi - lo > tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace accinfo
