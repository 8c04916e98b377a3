// asymptotics.hpp - closed-form and long-time solutions of the walk:
// the Fourier-integral Hadamard amplitudes, the interference-sum
// constants, the Bessel-kernel long-time solution with its moment
// formulas, and the kicked-rotor parameter correspondence.

#pragma once

#include <utility>

#include "walk_core.hpp"

namespace qwalk {

namespace constants {

// Long-time interference sums of the Hadamard walk started from
// a_0 = 1, b_0 = 0:  sum_j beta_j -> A,  sum_j j beta_j -> -A t + B.
double interference_sum_A(); // (2 - sqrt(2)) / 4
double interference_sum_B(); // 1 - 5 sqrt(2) / 8

} // namespace constants

// Dispersion relation sin(w_k) = sin(k) / sqrt(2) on the branch with
// cos(w_k) = +sqrt(1 + cos^2 k) / sqrt(2), continuous in k.
double dispersion_omega(double k);

struct FourierOptions {
    double tolerance = 1e-9; // refinement-doubling convergence target
    long max_nodes = 1 << 22;
};

// Hadamard amplitudes (a_j(t), b_j(t)) for the initial condition
// a_j(0) = delta_j0, b_j(0) = 0, evaluated from the Fourier integrals
// with composite Simpson quadrature and node doubling until successive
// refinements agree within the tolerance.
std::pair<Complex, Complex> hadamard_amplitudes_fourier(
    long j, long t, const FourierOptions& options = {});

// Asymptotic interference sums (sum0, sum1) = (A, -A t + B).
std::pair<double, double> interference_sums_asymptotic(double t);

// Long-time propagation speed of the probability front, cos(theta).
double propagation_speed(const CoinAngle& coin);

// Kicked-rotor correspondence cos(theta) = K / (4 pi p).
struct KickedRotorParams {
    double strength = 0.0;   // K
    int resonance_order = 1; // p
};

CoinAngle coin_from_kicked_rotor(const KickedRotorParams& params);
double kicked_rotor_strength(const CoinAngle& coin, int resonance_order);

// Max residual of the decoupled two-step chirality map
//   xi_i(t+2) - xi_i(t) = cos(theta) [xi_{i+1}(t+1) - xi_{i-1}(t+1)]
// over both components and all sites; the inputs must be three
// consecutive states.
double decoupled_map_residual(const SpinorField& s0, const SpinorField& s1,
                              const SpinorField& s2, const CoinAngle& coin);

// Effective initial amplitudes for the long-time Bessel solution (also
// the value type of that solution).  These seeds are not the discrete
// map's initial state; the difference-to-derivative approximation does
// not hold at small times.
struct AmplitudeField {
    long origin = 0;
    std::vector<Complex> a;
    std::vector<Complex> b;

    std::size_t size() const noexcept { return a.size(); }
    Complex a_at(long site) const noexcept;
    Complex b_at(long site) const noexcept;
    double norm() const noexcept; // sum |a|^2 + |b|^2
};

// Normalization within 1e-4 is enforced.
AmplitudeField make_effective_initials(long origin, std::vector<Complex> a,
                                       std::vector<Complex> b);

// Seed amplitudes matched to the Hadamard walk started at the origin:
// a_0 = b_0 = 0.70206, a_{+-2} = b_{+-2} = -0.05963, zero otherwise.
AmplitudeField default_effective_initials();

// Long-time solution xi_i(t) = sum_l (-1)^{i-l} xi_l(0) J_{i-l}(t cos theta),
// applied to both components.  Conserves the norm within 1e-10.
AmplitudeField bessel_solution(const AmplitudeField& init, const CoinAngle& coin,
                               double t);

struct BesselMoments {
    double t = 0.0;
    double m1 = 0.0;
    double m2 = 0.0;

    double variance() const noexcept { return m2 - m1 * m1; }
};

// Closed-form moments of the Bessel solution:
//   M1(t) = -t cos(theta) sum_l Re[a_l a*_{l-1} + b_l b*_{l-1}] + M1(0)
//   M2(t) = (t^2 cos^2 theta / 2) {1 + sum_l Re[a_l a*_{l-2} + b_l b*_{l-2}]}
//           - t cos(theta) sum_l (2l-1) Re[a_l a*_{l-1} + b_l b*_{l-1}] + M2(0)
BesselMoments bessel_moments(const AmplitudeField& init, const CoinAngle& coin,
                             double t);

} // namespace qwalk
