// markov.cpp - master equation, two-step position recursion, kernel.

#include "markov.hpp"

#include <cmath>

namespace qwalk {

double TransitionKernel::entry(long i, long j, Chirality s, Chirality l) const noexcept {
    if (s == Chirality::left && j == i + 1)
        return l == Chirality::left ? coin_.cos_sq() : coin_.sin_sq();
    if (s == Chirality::right && j == i - 1)
        return l == Chirality::right ? coin_.cos_sq() : coin_.sin_sq();
    return 0.0;
}

JointDistribution step_master(const JointDistribution& dist, const CoinAngle& coin) {
    const double c2 = coin.cos_sq();
    const double s2 = coin.sin_sq();
    const std::size_t n = dist.size();
    const std::size_t m = n + 2;

    JointDistribution out;
    out.origin = dist.origin - 1;
    out.time = dist.time + 1;
    out.left.assign(m, 0.0);
    out.right.assign(m, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        out.left[k] = c2 * dist.left[k] + s2 * dist.right[k];
        out.right[k + 2] = s2 * dist.left[k] + c2 * dist.right[k];
    }
    return out;
}

JointDistribution step_master_with_interference(const JointDistribution& dist,
                                                const InterferenceField& beta,
                                                const CoinAngle& coin) {
    JointDistribution out = step_master(dist, coin);
    const double s2t = coin.sin2theta();
    for (std::size_t k = 0; k < out.size(); ++k) {
        long site = out.origin + static_cast<long>(k);
        out.left[k] += s2t * beta.at(site + 1);
        out.right[k] -= s2t * beta.at(site - 1);
    }
    for (std::size_t k = 0; k < out.size(); ++k) {
        if (out.left[k] < -1e-12 || out.right[k] < -1e-12)
            throw Error(ErrorCode::consistency,
                        "interference field is inconsistent with the "
                        "distribution: negative probability produced");
    }
    return out;
}

PositionDistribution step_position_twostep(const PositionDistribution& p_t,
                                           const PositionDistribution& p_tm1,
                                           const InterferenceField* beta,
                                           const CoinAngle& coin) {
    if (p_t.time != p_tm1.time + 1)
        throw Error(ErrorCode::window_mismatch,
                    "P(t) and P(t-1) must be consecutive marginals");
    const double c2 = coin.cos_sq();
    const double c2t = coin.cos2theta();
    const double s2t = coin.sin2theta();

    long lo = std::min(p_t.origin - 1, p_tm1.origin);
    long hi = std::max(p_t.origin + static_cast<long>(p_t.size()),
                       p_tm1.origin + static_cast<long>(p_tm1.size()) - 1);
    PositionDistribution out;
    out.origin = lo;
    out.time = p_t.time + 1;
    out.p.assign(static_cast<std::size_t>(hi - lo + 1), 0.0);
    for (long i = lo; i <= hi; ++i) {
        double v = (p_t.at(i + 1) + p_t.at(i - 1)) * c2 - p_tm1.at(i) * c2t;
        if (beta) v += (beta->at(i + 1) - beta->at(i - 1)) * s2t;
        out.p[i - lo] = v;
    }
    return out;
}

double diffusion_coefficient(const CoinAngle& coin) {
    if (coin.theta() == 0.0 || coin.sin_theta() == 0.0)
        throw Error(ErrorCode::trivial_angle,
                    "diffusion coefficient diverges at theta = 0");
    double cot = coin.cos_theta() / coin.sin_theta();
    return 0.5 * cot * cot;
}

} // namespace qwalk
