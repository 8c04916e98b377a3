// bessel.cpp - Miller-type downward recurrence for J_n arrays.

#include "bessel.hpp"

#include <cmath>
#include <cstddef>

#include "error.hpp"

namespace qwalk {

std::vector<double> bessel_j_array(double x, int n_max) {
    if (!(x >= 0.0))
        throw Error(ErrorCode::invalid_argument,
                    "bessel_j_array requires x >= 0");
    if (n_max < 0)
        throw Error(ErrorCode::invalid_argument,
                    "bessel_j_array requires n_max >= 0");

    std::vector<double> out(static_cast<std::size_t>(n_max) + 1, 0.0);
    if (x == 0.0) {
        out[0] = 1.0;
        return out;
    }

    // Start far enough above both the requested order and the turning
    // point n ~ x that the minimal solution has decayed below machine
    // precision relative to J_{n_max}.
    double top = std::max(static_cast<double>(n_max), x);
    int start = static_cast<int>(top) + 16 +
                static_cast<int>(2.0 * std::sqrt(top));

    double fp1 = 0.0;    // unnormalized J_{n+1}
    double f = 1e-30;    // unnormalized J_n
    double norm = 0.0;   // accumulates J_0 + 2 sum_{m>=1} J_{2m}
    for (int n = start; n >= 0; --n) {
        if (n <= n_max) out[n] = f;
        if (n % 2 == 0) norm += (n == 0) ? f : 2.0 * f;
        double fm1 = (2.0 * n / x) * f - fp1;
        fp1 = f;
        f = fm1;
        if (std::abs(f) > 1e280) {
            // Rescale before overflow; the normalization fixes the scale.
            f *= 1e-280;
            fp1 *= 1e-280;
            norm *= 1e-280;
            for (int k = std::min(n_max, n); k <= n_max; ++k) out[k] *= 1e-280;
        }
    }
    double scale = 1.0 / norm;
    for (double& v : out) v *= scale;
    return out;
}

double bessel_j(int n, double x) {
    int m = n >= 0 ? n : -n;
    double v = bessel_j_array(x, m)[m];
    if (n < 0 && (m % 2) != 0) v = -v;
    return v;
}

} // namespace qwalk
