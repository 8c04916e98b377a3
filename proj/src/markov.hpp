// markov.hpp - Markovian (decoherent) evolution of the walk.
//
// Dropping the interference term from the exact probability map leaves a
// master equation P_is(t+1) = sum_jl T_ij,sl P_jl(t) with the doubly
// stochastic kernel
//
//   T_i,i+1,LL = T_i,i-1,RR = cos^2(theta)
//   T_i,i+1,LR = T_i,i-1,RL = sin^2(theta)
//   T = 0 otherwise.
//
// The kernel is never materialized; stepping applies it as a two-point
// stencil in O(window).

#pragma once

#include <optional>

#include "walk_core.hpp"

namespace qwalk {

enum class Chirality { left, right };

class TransitionKernel {
public:
    explicit TransitionKernel(CoinAngle coin) : coin_(coin) {}

    // T_{ij,sl}: probability flowing from source (j, l) into (i, s).
    double entry(long i, long j, Chirality s, Chirality l) const noexcept;

    const CoinAngle& coin() const noexcept { return coin_; }

private:
    CoinAngle coin_;
};

// One master-equation step without the interference source.
JointDistribution step_master(const JointDistribution& dist,
                              const CoinAngle& coin);

// Full equation: master step plus the source term beta_iL = +beta_{i+1},
// beta_iR = -beta_{i-1}, each weighted by sin(2 theta).  When beta comes
// from the unitary state whose distribution is `dist`, the result equals
// the exact quantum distribution after one step.  Entries below -1e-12
// signal an inconsistent beta and raise Error(consistency).
JointDistribution step_master_with_interference(const JointDistribution& dist,
                                                const InterferenceField& beta,
                                                const CoinAngle& coin);

// Position-only two-step recursion
//   P_i(t+1) = [P_{i+1}(t) + P_{i-1}(t)] cos^2(theta) - P_i(t-1) cos(2 theta)
//              + [beta_{i+1}(t) - beta_{i-1}(t)] sin(2 theta)
// with the beta bracket omitted when beta is null.
PositionDistribution step_position_twostep(const PositionDistribution& p_t,
                                           const PositionDistribution& p_tm1,
                                           const InterferenceField* beta,
                                           const CoinAngle& coin);

// D(theta) = cot^2(theta) / 2.  Diverges at theta = 0; zero at pi/2.
double diffusion_coefficient(const CoinAngle& coin);

} // namespace qwalk
