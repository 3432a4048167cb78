#pragma once

#include <cstdint>

#include "dppdisc/space.hpp"

namespace dppdisc {

// Rising factorial (a)_n = a (a+1) ... (a+n-1); (a)_0 = 1.
double pochhammer(double a, int n);

// Product form of (num)_n / (den)_n, accumulated one factor ratio at a time
// to avoid overflow of the separate products.
double pochhammer_ratio(double num, double den, int n);

// Jacobi polynomial P_n^{(a,b)}(x) for a > -1, b > -1, evaluated by the
// forward three-term recurrence. Requires x in [-1, 1].
double jacobi_eval(double a, double b, int degree, double x);

// Dimension of the span of the first L+1 eigenspaces of the Laplacian:
//   (alpha+beta+2)_L (alpha+2)_L / ((beta+1)_L L!).
// The product is an integer for every Table row; the floating accumulation is
// rounded and checked to 1e-6 relative before returning.
std::int64_t eigenspace_dimension(const Space& space, int level);

}  // namespace dppdisc
