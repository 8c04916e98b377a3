// bessel.hpp - Bessel functions of the first kind, J_0..J_n at fixed
// argument, by downward (Miller) recurrence with Neumann-series
// renormalization.  Upward recurrence is unstable for order > argument,
// downward is not.

#pragma once

#include <vector>

namespace qwalk {

// J_0(x) .. J_n_max(x) for x >= 0.
std::vector<double> bessel_j_array(double x, int n_max);

// Single value, any integer order (J_{-n} = (-1)^n J_n).
double bessel_j(int n, double x);

} // namespace qwalk
