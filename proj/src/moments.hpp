// moments.hpp - moments and variance of the position distribution,
// the exact moment recurrences, closed-form long-time solutions and
// least-squares growth-law fits.

#pragma once

#include <vector>

#include "walk_core.hpp"

namespace qwalk {

struct MomentRecord {
    long t = 0;
    double m1 = 0.0;
    double m2 = 0.0;

    double variance() const noexcept { return m2 - m1 * m1; }
};

// Time-ordered sequence of MomentRecord (strictly increasing t).
class MomentSeries {
public:
    void append(const MomentRecord& rec);
    const std::vector<MomentRecord>& records() const noexcept { return records_; }
    std::size_t size() const noexcept { return records_.size(); }

    // CSV with header "t,m1,m2,var", full double precision.
    void write_csv(std::ostream& os) const;

private:
    std::vector<MomentRecord> records_;
};

enum class MomentField { m1, m2, variance };

struct FitResult {
    double c0 = 0.0; // coefficients of c0 + c1 t + c2 t^2
    double c1 = 0.0;
    double c2 = 0.0;
    long t_min = 0;
    long t_max = 0;
    std::size_t n_points = 0;
    double residual_rms = 0.0;
};

// Exact weighted sums over the window.  The distribution must be
// normalized within 1e-9.
MomentRecord moments_direct(const PositionDistribution& dist);
MomentRecord moments_direct(const JointDistribution& dist);

// One application of the exact moment recurrence
//   M1(t+1) = 2 cos^2(theta) M1(t) - cos(2 theta) M1(t-1) - 2 sin(2 theta) sum_i beta_i(t)
//   M2(t+1) = 2 cos^2(theta) [1 + M2(t)] - cos(2 theta) M2(t-1) - 4 sin(2 theta) sum_i i beta_i(t)
// where beta_t belongs to the state at time m_t.t.
MomentRecord moments_recurrence_step(const MomentRecord& m_t,
                                     const MomentRecord& m_tm1,
                                     const InterferenceField& beta_t,
                                     const CoinAngle& coin);

// Decoherent closed form:
//   M1(t) = C11 + C12 e^{-2 t tan^2 theta}
//   M2(t) = C22 + t / tan^2(theta) + C21 e^{-2 t tan^2 theta}
// Trivial angles are rejected (tan^2 is 0 or infinite).
std::pair<double, double> decoherent_closed_form(double t, const CoinAngle& coin,
                                                 double c11, double c12,
                                                 double c21, double c22);

// Long-time Hadamard moment map: (M1, M2) at t -> values at t+1,
//   M1 -> M1 - 2A,  M2 -> M2 + 4At + (1 - 4B).
std::pair<double, double> hadamard_moment_map(double m1, double m2, long t);

// tau = cot^2(theta); the decoherent transient is negligible for t >> tau.
double relaxation_time(const CoinAngle& coin);

// Ordinary least squares on raw samples; degree 1 or 2.
FitResult fit_poly(const std::vector<double>& x, const std::vector<double>& y,
                   int degree);

// Least-squares fit of the selected field over t in [t_min, t_max].
// Restricted to the even-time subsequence by default: alternate-step
// distributions are structurally different and leave a period-2
// oscillation in residuals otherwise.
FitResult fit_polynomial(const MomentSeries& series, MomentField field,
                         int degree, long t_min, long t_max,
                         bool even_times_only = true);

} // namespace qwalk
