#pragma once

#include <functional>
#include <vector>

#include "lr/exact/matrix.hpp"

namespace lr {

// Visits every nonzero integer vector x with x^T g x <= bound, where g is a
// positive definite rational Gram matrix. The callback receives x and its
// exact value. Enumeration uses the exact LDL decomposition of g.
void for_each_short_vector(const QMatrix& g, const Rat& bound,
                           const std::function<void(const std::vector<long>&, const Rat&)>& visit);

// counts[n] = #{x != 0 : x^T g x = n} for 0 <= n <= nmax; the form must take
// integer values on Z^n (checked).
std::vector<Int> theta_counts(const QMatrix& g, long nmax);

}  // namespace lr
