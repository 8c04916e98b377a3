// walk_core.hpp - discrete-time quantum walk on the line.
//
// The walker state is a two-component complex amplitude field (a_m, b_m)
// on a finite lattice window; the upper component a is the LEFT-moving
// chirality, the lower component b the RIGHT-moving one.  One time step
// applies the coin rotation followed by the chirality-conditioned shift:
//
//   a_i(t+1) = a_{i+1}(t) cos(theta) + b_{i+1}(t) sin(theta)
//   b_i(t+1) = a_{i-1}(t) sin(theta) - b_{i-1}(t) cos(theta)
//
// theta = pi/4 gives the usual Hadamard walk.  All operations are pure:
// stepping returns a new value, inputs are never mutated.

#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

#include "error.hpp"

namespace qwalk {

using Complex = std::complex<double>;

// Single real parameter of the coin rotation, restricted to [0, pi/2].
// theta = 0 and theta = pi/2 are representable but flagged trivial (pure
// translations); analysis code may refuse them.
class CoinAngle {
public:
    explicit CoinAngle(double theta);

    static CoinAngle hadamard();

    double theta() const noexcept { return theta_; }
    double cos_theta() const noexcept { return cos_; }
    double sin_theta() const noexcept { return sin_; }
    double cos_sq() const noexcept { return cos_ * cos_; }
    double sin_sq() const noexcept { return sin_ * sin_; }
    double cos2theta() const noexcept { return cos2_; }
    double sin2theta() const noexcept { return sin2_; }
    bool trivial() const noexcept { return trivial_; }

private:
    double theta_;
    double cos_;
    double sin_;
    double cos2_;
    double sin2_;
    bool trivial_;
};

// Real probability pairs (P_left, P_right) on a lattice window.
struct JointDistribution {
    long origin = 0; // site index of probs[0]
    std::vector<double> left;
    std::vector<double> right;
    long time = 0;

    std::size_t size() const noexcept { return left.size(); }
    double left_at(long site) const noexcept;
    double right_at(long site) const noexcept;
    double total() const noexcept; // compensated summation
    // Throws Error(consistency) on negative entries (below -tol) or a total
    // probability off from 1 by more than tol.
    void validate(double tol = 1e-12) const;
};

// Position-only marginal P_i = P_iL + P_iR.
struct PositionDistribution {
    long origin = 0;
    std::vector<double> p;
    long time = 0;

    std::size_t size() const noexcept { return p.size(); }
    double at(long site) const noexcept;
    double total() const noexcept;
};

// Interference sequence beta_i = Re[a_i b_i^*] with its two weighted sums,
// sum0 = sum_i beta_i and sum1 = sum_i i*beta_i (absolute site index i).
struct InterferenceField {
    long origin = 0;
    std::vector<double> beta;
    double sum0 = 0.0;
    double sum1 = 0.0;

    std::size_t size() const noexcept { return beta.size(); }
    double at(long site) const noexcept;
};

class SpinorField {
public:
    // State localized at `site` with chirality pair (left, right).
    // |left|^2 + |right|^2 must equal 1 within 1e-12.
    static SpinorField localized(long site, Complex left, Complex right);

    // Arbitrary window; total probability must equal 1 within 1e-12.
    static SpinorField from_amplitudes(long origin, std::vector<Complex> a,
                                       std::vector<Complex> b, long time = 0);

    long origin() const noexcept { return origin_; }
    long time() const noexcept { return time_; }
    std::size_t size() const noexcept { return a_.size(); }

    // Amplitudes by absolute site index; exactly zero outside the window.
    Complex left(long site) const noexcept;
    Complex right(long site) const noexcept;
    const std::vector<Complex>& left_amps() const noexcept { return a_; }
    const std::vector<Complex>& right_amps() const noexcept { return b_; }

    double total_probability() const noexcept;

    // One application of the evolution map; the window grows by one site
    // on each side.
    SpinorField step(const CoinAngle& coin) const;

    // `steps` applications of step().
    SpinorField evolve(const CoinAngle& coin, long steps) const;

    JointDistribution distribution() const;
    InterferenceField interference() const;

    // Debug serialization: one line per site, tab-separated columns
    //   site re_a im_a re_b im_b
    void write_text(std::ostream& os) const;

private:
    SpinorField() = default;

    long origin_ = 0;
    long time_ = 0;
    std::vector<Complex> a_;
    std::vector<Complex> b_;
};

// True iff the predecessor position distribution P(t-1) is reproduced by
// P_m(t-1) = |a_{m-1}(t)|^2 + |b_{m+1}(t)|^2 at every site within tol.
// The predecessor must carry time stamp state.time()-1.
bool two_step_position_identity(const SpinorField& state,
                                const PositionDistribution& predecessor,
                                double tol = 1e-12);

namespace detail {

// Neumaier compensated summation.
class AccurateSum {
public:
    void add(double x) noexcept {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// Round capacity reservations up to 256-site blocks.
std::size_t block_capacity(std::size_t n) noexcept;

} // namespace detail

} // namespace qwalk
