// walk_core.cpp - state representation and the exact one-step evolution.

#include "walk_core.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <utility>

namespace qwalk {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTrivialTol = 1e-14;
constexpr double kNormTol = 1e-12;

} // namespace

namespace detail {

std::size_t block_capacity(std::size_t n) noexcept {
    return (n + 255) / 256 * 256;
}

} // namespace detail

CoinAngle::CoinAngle(double theta) : theta_(theta) {
    if (!(theta >= 0.0 && theta <= kPi / 2.0))
        throw Error(ErrorCode::invalid_argument,
                    "coin angle must lie in [0, pi/2]");
    cos_ = std::cos(theta);
    sin_ = std::sin(theta);
    cos2_ = std::cos(2.0 * theta);
    sin2_ = std::sin(2.0 * theta);
    trivial_ = theta <= kTrivialTol || kPi / 2.0 - theta <= kTrivialTol;
}

CoinAngle CoinAngle::hadamard() { return CoinAngle(kPi / 4.0); }

double JointDistribution::left_at(long site) const noexcept {
    long k = site - origin;
    return (k >= 0 && k < static_cast<long>(left.size())) ? left[k] : 0.0;
}

double JointDistribution::right_at(long site) const noexcept {
    long k = site - origin;
    return (k >= 0 && k < static_cast<long>(right.size())) ? right[k] : 0.0;
}

double JointDistribution::total() const noexcept {
    detail::AccurateSum s;
    for (double v : left) s.add(v);
    for (double v : right) s.add(v);
    return s.value();
}

void JointDistribution::validate(double tol) const {
    for (std::size_t k = 0; k < left.size(); ++k) {
        if (left[k] < -tol || right[k] < -tol)
            throw Error(ErrorCode::consistency,
                        "negative probability entry in joint distribution");
    }
    if (std::abs(total() - 1.0) > tol)
        throw Error(ErrorCode::consistency,
                    "joint distribution does not sum to 1");
}

double PositionDistribution::at(long site) const noexcept {
    long k = site - origin;
    return (k >= 0 && k < static_cast<long>(p.size())) ? p[k] : 0.0;
}

double PositionDistribution::total() const noexcept {
    detail::AccurateSum s;
    for (double v : p) s.add(v);
    return s.value();
}

double InterferenceField::at(long site) const noexcept {
    long k = site - origin;
    return (k >= 0 && k < static_cast<long>(beta.size())) ? beta[k] : 0.0;
}

SpinorField SpinorField::localized(long site, Complex left, Complex right) {
    double norm = std::norm(left) + std::norm(right);
    if (std::abs(norm - 1.0) > kNormTol)
        throw Error(ErrorCode::not_normalized,
                    "chirality pair is not normalized: |aL|^2 + |aR|^2 = " +
                        std::to_string(norm));
    SpinorField s;
    s.origin_ = site;
    s.time_ = 0;
    s.a_.reserve(detail::block_capacity(1));
    s.b_.reserve(detail::block_capacity(1));
    s.a_.push_back(left);
    s.b_.push_back(right);
    return s;
}

SpinorField SpinorField::from_amplitudes(long origin, std::vector<Complex> a,
                                         std::vector<Complex> b, long time) {
    if (a.size() != b.size() || a.empty())
        throw Error(ErrorCode::invalid_argument,
                    "amplitude arrays must be non-empty and equally sized");
    if (time < 0)
        throw Error(ErrorCode::invalid_argument, "time must be nonnegative");
    SpinorField s;
    s.origin_ = origin;
    s.time_ = time;
    s.a_ = std::move(a);
    s.b_ = std::move(b);
    double norm = s.total_probability();
    if (std::abs(norm - 1.0) > kNormTol)
        throw Error(ErrorCode::not_normalized,
                    "state is not normalized: total probability = " +
                        std::to_string(norm));
    return s;
}

Complex SpinorField::left(long site) const noexcept {
    long k = site - origin_;
    return (k >= 0 && k < static_cast<long>(a_.size())) ? a_[k] : Complex{};
}

Complex SpinorField::right(long site) const noexcept {
    long k = site - origin_;
    return (k >= 0 && k < static_cast<long>(b_.size())) ? b_[k] : Complex{};
}

double SpinorField::total_probability() const noexcept {
    detail::AccurateSum s;
    for (const Complex& v : a_) s.add(std::norm(v));
    for (const Complex& v : b_) s.add(std::norm(v));
    return s.value();
}

SpinorField SpinorField::step(const CoinAngle& coin) const {
    const double c = coin.cos_theta();
    const double sn = coin.sin_theta();
    const std::size_t n = a_.size();
    const std::size_t m = n + 2;

    SpinorField out;
    out.origin_ = origin_ - 1;
    out.time_ = time_ + 1;
    out.a_.reserve(detail::block_capacity(m));
    out.b_.reserve(detail::block_capacity(m));
    out.a_.assign(m, Complex{});
    out.b_.assign(m, Complex{});

    // New index k corresponds to site out.origin_ + k; sources sit at the
    // old indices k (one site to the right) and k-2 (one to the left).
    for (std::size_t k = 0; k < n; ++k) {
        out.a_[k] = c * a_[k] + sn * b_[k];
        out.b_[k + 2] = sn * a_[k] - c * b_[k];
    }
    return out;
}

SpinorField SpinorField::evolve(const CoinAngle& coin, long steps) const {
    if (steps < 0)
        throw Error(ErrorCode::invalid_argument, "steps must be nonnegative");
    SpinorField s = *this;
    for (long i = 0; i < steps; ++i) s = s.step(coin);
    return s;
}

JointDistribution SpinorField::distribution() const {
    JointDistribution d;
    d.origin = origin_;
    d.time = time_;
    d.left.resize(a_.size());
    d.right.resize(b_.size());
    for (std::size_t k = 0; k < a_.size(); ++k) {
        d.left[k] = std::norm(a_[k]);
        d.right[k] = std::norm(b_[k]);
    }
    return d;
}

InterferenceField SpinorField::interference() const {
    InterferenceField f;
    f.origin = origin_;
    f.beta.resize(a_.size());
    detail::AccurateSum s0;
    detail::AccurateSum s1;
    for (std::size_t k = 0; k < a_.size(); ++k) {
        double beta = (a_[k] * std::conj(b_[k])).real();
        f.beta[k] = beta;
        s0.add(beta);
        s1.add(static_cast<double>(origin_ + static_cast<long>(k)) * beta);
    }
    f.sum0 = s0.value();
    f.sum1 = s1.value();
    return f;
}

void SpinorField::write_text(std::ostream& os) const {
    char line[160];
    for (std::size_t k = 0; k < a_.size(); ++k) {
        std::snprintf(line, sizeof line, "%ld\t%.17g\t%.17g\t%.17g\t%.17g\n",
                      origin_ + static_cast<long>(k), a_[k].real(),
                      a_[k].imag(), b_[k].real(), b_[k].imag());
        os << line;
    }
}

bool two_step_position_identity(const SpinorField& state,
                                const PositionDistribution& predecessor,
                                double tol) {
    if (state.time() < 1 || predecessor.time != state.time() - 1)
        throw Error(ErrorCode::invalid_argument,
                    "predecessor distribution must be one step behind the state");
    // Reconstruction P_m(t-1) = |a_{m-1}(t)|^2 + |b_{m+1}(t)|^2 can be
    // nonzero anywhere within one site of the state's window.
    long lo = std::min(state.origin() - 1, predecessor.origin);
    long hi = std::max(state.origin() + static_cast<long>(state.size()),
                       predecessor.origin + static_cast<long>(predecessor.size()) - 1);
    for (long m = lo; m <= hi; ++m) {
        double rebuilt = std::norm(state.left(m - 1)) + std::norm(state.right(m + 1));
        if (std::abs(rebuilt - predecessor.at(m)) > tol) return false;
    }
    return true;
}

} // namespace qwalk
