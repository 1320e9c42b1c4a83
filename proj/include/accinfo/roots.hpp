#pragma once

#include <functional>

namespace accinfo {

/// Bracketed bisection for a sign change of f on [lo, hi].
/// Stops after max_iters halvings or once the bracket is narrower than tol.
/// Throws std::domain_error when f(lo) and f(hi) have the same strict sign.
double bisect(const std::function<double(double)>& f, double lo, double hi,
              double tol = 1e-12, int max_iters = 200);

}  // namespace accinfo
