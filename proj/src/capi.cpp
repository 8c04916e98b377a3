// capi.cpp - extern "C" surface of the shared library.  Thin wrappers:
// validate handles, call the core, map exceptions to status codes.

#include "qwalk/qwalk.h"

#include <cstring>
#include <fstream>
#include <string>

#include "asymptotics.hpp"
#include "markov.hpp"
#include "moments.hpp"
#include "walk_core.hpp"

struct qw_coin { qwalk::CoinAngle v; };
struct qw_state { qwalk::SpinorField v; };
struct qw_dist { qwalk::JointDistribution v; };
struct qw_pos_dist { qwalk::PositionDistribution v; };
struct qw_interference { qwalk::InterferenceField v; };
struct qw_series { qwalk::MomentSeries v; };
struct qw_amp_field { qwalk::AmplitudeField v; };

namespace {

thread_local std::string g_last_error;

qw_status fail(qw_status code, const char* what) {
    g_last_error = what;
    return code;
}

qw_status current_exception_status() {
    try {
        throw;
    } catch (const qwalk::Error& e) {
        g_last_error = e.what();
        return static_cast<qw_status>(static_cast<int>(e.code()));
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return QW_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return QW_ERR_INTERNAL;
    }
}

qwalk::Complex to_complex(qw_complex z) { return {z.re, z.im}; }
qw_complex from_complex(qwalk::Complex z) { return {z.real(), z.imag()}; }

static_assert(static_cast<int>(qwalk::ErrorCode::invalid_argument) ==
              QW_ERR_INVALID_ARGUMENT);
static_assert(static_cast<int>(qwalk::ErrorCode::io) == QW_ERR_IO);

} // namespace

extern "C" {

const char* qw_version(void) {
#ifdef QWALK_VERSION
    return QWALK_VERSION;
#else
    return "0.0.0";
#endif
}

const char* qw_status_message(qw_status status) {
    switch (status) {
    case QW_OK: return "ok";
    case QW_ERR_INVALID_ARGUMENT: return "invalid argument";
    case QW_ERR_NOT_NORMALIZED: return "not normalized";
    case QW_ERR_TRIVIAL_ANGLE: return "trivial coin angle";
    case QW_ERR_WINDOW_MISMATCH: return "window mismatch";
    case QW_ERR_CONSISTENCY: return "consistency violation";
    case QW_ERR_NO_CONVERGENCE: return "numerical convergence failure";
    case QW_ERR_NO_CORRESPONDENCE: return "no parameter correspondence";
    case QW_ERR_IO: return "i/o failure";
    case QW_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* qw_last_error(void) { return g_last_error.c_str(); }

/* ---- coin ------------------------------------------------------------ */

qw_status qw_coin_create(double theta, qw_coin** out) {
    if (!out) return fail(QW_ERR_INVALID_ARGUMENT, "null output handle");
    try {
        *out = new qw_coin{qwalk::CoinAngle(theta)};
        return QW_OK;
    } catch (...) {
        return current_exception_status();
    }
}

qw_status qw_coin_hadamard(qw_coin** out) {
    if (!out) return fail(QW_ERR_INVALID_ARGUMENT, "null output handle");
    try {
        *out = new qw_coin{qwalk::CoinAngle::hadamard()};
        return QW_OK;
    } catch (...) {
        return current_exception_status();
    }
}

qw_status qw_coin_from_kicked_rotor(double strength, int resonance_order,
                                    qw_coin** out) {
    if (!out) return fail(QW_ERR_INVALID_ARGUMENT, "null output handle");
    try {
        *out = new qw_coin{
            qwalk::coin_from_kicked_rotor({strength, resonance_order})};
        return QW_OK;
    } catch (...) {
        return current_exception_status();
    }
}

void qw_coin_destroy(qw_coin* coin) { delete coin; }

double qw_coin_theta(const qw_coin* coin) { return coin ? coin->v.theta() : 0.0; }

int qw_coin_is_trivial(const qw_coin* coin) {
    return coin && coin->v.trivial() ? 1 : 0;
}

qw_status qw_kicked_rotor_strength(const qw_coin* coin, int resonance_order,
                                   double* out) {
    if (!coin || !out) return fail(QW_ERR_INVALID_ARGUMENT, "null argument");
    try {
        *out = qwalk::kicked_rotor_strength(coin->v, resonance_order);
        return QW_OK;
    } catch (...) {
        return current_exception_status();
    }
}

qw_status qw_diffusion_coefficient(const qw_coin* coin, double* out) {
    if (!coin || !out) return fail(QW_ERR_INVALID_ARGUMENT, "null argument");
    try {
        *out = qwalk::diffusion_coefficient(coin->v);
        return QW_OK;
    } catch (...) {
        return current_exception_status();
    }
}

qw_status qw_relaxation_time(const qw_coin* coin, double* out) {
    if (!coin || !out) return fail(QW_ERR_INVALID_ARGUMENT, "null argument");
    try {
        *out = qwalk::relaxation_time(coin->v);
        return QW_OK;
    } catch (...) {
        return current_exception_status();
    }
}

qw_status qw_propagation_speed(const qw_coin* coin, double* out) {
    if (!coin || !out) return fail(QW_ERR_INVALID_ARGUMENT, "null argument");
    *out = qwalk::propagation_speed(coin->v);
    return QW_OK;
}

qw_status qw_kernel_entry(const qw_coin* coin, long i, long j, qw_chirality s,
                          qw_chirality l, double* out) {
    if (!coin || !out) return fail(QW_ERR_INVALID_ARGUMENT, "null argument");
    qwalk::TransitionKernel kernel(coin->v);
    auto conv = [](qw_chirality c) {
        return c == QW_LEFT ? qwalk::Chirality::left : qwalk::Chirality::right;
    };
    *out = kernel.entry(i, j, conv(s), conv(l));
    return QW_OK;
}

/* ---- state ------------------------------------------------------------ */

qw_status qw_state_localized(long site, qw_complex left, qw_complex right,
                             qw_state** out) {
    if (!out) return fail(QW_ERR_INVALID_ARGUMENT, "null output handle");
    try {
        *out = new qw_state{qwalk::SpinorField::localized(
            site, to_complex(left), to_complex(right))};
        return QW_OK;
    } catch (...) {
        return current_exception_status();
    }
}

qw_status qw_state_from_amplitudes(long origin, const qw_complex* a,
                                   const qw_complex* b, size_t n, long time,
                                   qw_state** out) {
    if (!a || !b || !out || n == 0)
        return fail(QW_ERR_INVALID_ARGUMENT, "null argument");
    try {
        std::vector<qwalk::Complex> va(n);
        std::vector<qwalk::Complex> vb(n);
        for (size_t k = 0; k < n; ++k) {
            va[k] = to_complex(a[k]);
            vb[k] = to_complex(b[k]);
        }
        *out = new qw_state{qwalk::SpinorField::from_amplitudes(
            origin, std::move(va), std::move(vb), time)};
        return QW_OK;
    } catch (...) {
        return current_exception_status();
    }
}

void qw_state_destroy(qw_state* state) { delete state; }

long qw_state_origin(const qw_state* state) {
    return state ? state->v.origin() : 0;
}

long qw_state_time(const qw_state* state) { return state ? state->v.time() : 0; }

size_t qw_state_size(const qw_state* state) {
    return state ? state->v.size() : 0;
}

qw_status qw_state_amplitudes(const qw_state* state, qw_complex* a,
                              qw_complex* b, size_t n) {
    if (!state || !a || !b) return fail(QW_ERR_INVALID_ARGUMENT, "null argument");
    if (n < state->v.size())
        return fail(QW_ERR_INVALID_ARGUMENT, "buffer too small");
    for (size_t k = 0; k < state->v.size(); ++k) {
        a[k] = from_complex(state->v.left_amps()[k]);
        b[k] = from_complex(state->v.right_amps()[k]);
    }
    return QW_OK;
}

double qw_state_total_probability(const qw_state* state) {
    return state ? state->v.total_probability() : 0.0;
}

qw_status qw_state_step(const qw_state* state, const qw_coin* coin,
                        qw_state** out) {
    if (!state || !coin || !out)
        return fail(QW_ERR_INVALID_ARGUMENT, "null argument");
    try {
        *out = new qw_state{state->v.step(coin->v)};
        return QW_OK;
    } catch (...) {
        return current_exception_status();
    }
}

qw_status qw_state_evolve(const qw_state* state, const qw_coin* coin,
                          long steps, qw_state** out) {
    if (!state || !coin || !out)
        return fail(QW_ERR_INVALID_ARGUMENT, "null argument");
    try {
        *out = new qw_state{state->v.evolve(coin->v, steps)};
        return QW_OK;
    } catch (...) {
        return current_exception_status();
    }
}

qw_status qw_state_write_text(const qw_state* state, const char* path) {
    if (!state || !path) return fail(QW_ERR_INVALID_ARGUMENT, "null argument");
    std::ofstream os(path);
    if (!os) return fail(QW_ERR_IO, "cannot open output file");
    state->v.write_text(os);
    os.flush();
    if (!os) return fail(QW_ERR_IO, "write failure");
    return QW_OK;
}

qw_status qw_state_distribution(const qw_state* state, qw_dist** out) {
    if (!state || !out) return fail(QW_ERR_INVALID_ARGUMENT, "null argument");
    try {
        *out = new qw_dist{state->v.distribution()};
        return QW_OK;
    } catch (...) {
        return current_exception_status();
    }
}

qw_status qw_state_interference(const qw_state* state, qw_interference** out) {
    if (!state || !out) return fail(QW_ERR_INVALID_ARGUMENT, "null argument");
    try {
        *out = new qw_interference{state->v.interference()};
        return QW_OK;
    } catch (...) {
        return current_exception_status();
    }
}

qw_status qw_two_step_identity(const qw_state* state,
                               const qw_pos_dist* predecessor, int* ok) {
    if (!state || !predecessor || !ok)
        return fail(QW_ERR_INVALID_ARGUMENT, "null argument");
    try {
        *ok = qwalk::two_step_position_identity(state->v, predecessor->v) ? 1 : 0;
        return QW_OK;
    } catch (...) {
        return current_exception_status();
    }
}

/* ---- distributions ----------------------------------------------------- */

void qw_dist_destroy(qw_dist* dist) { delete dist; }

long qw_dist_origin(const qw_dist* dist) { return dist ? dist->v.origin : 0; }

long qw_dist_time(const qw_dist* dist) { return dist ? dist->v.time : 0; }

size_t qw_dist_size(const qw_dist* dist) { return dist ? dist->v.size() : 0; }

qw_status qw_dist_probabilities(const qw_dist* dist, double* left,
                                double* right, size_t n) {
    if (!dist || !left || !right)
        return fail(QW_ERR_INVALID_ARGUMENT, "null argument");
    if (n < dist->v.size())
        return fail(QW_ERR_INVALID_ARGUMENT, "buffer too small");
    std::memcpy(left, dist->v.left.data(), dist->v.size() * sizeof(double));
    std::memcpy(right, dist->v.right.data(), dist->v.size() * sizeof(double));
    return QW_OK;
}

double qw_dist_total(const qw_dist* dist) { return dist ? dist->v.total() : 0.0; }

qw_status qw_dist_marginal(const qw_dist* dist, qw_pos_dist** out) {
    if (!dist || !out) return fail(QW_ERR_INVALID_ARGUMENT, "null argument");
    try {
        qwalk::PositionDistribution p;
        p.origin = dist->v.origin;
        p.time = dist->v.time;
        p.p.resize(dist->v.size());
        for (size_t k = 0; k < dist->v.size(); ++k)
            p.p[k] = dist->v.left[k] + dist->v.right[k];
        *out = new qw_pos_dist{std::move(p)};
        return QW_OK;
    } catch (...) {
        return current_exception_status();
    }
}

qw_status qw_dist_moments(const qw_dist* dist, double* m1, double* m2,
                          double* var) {
    if (!dist || !m1 || !m2 || !var)
        return fail(QW_ERR_INVALID_ARGUMENT, "null argument");
    try {
        qwalk::MomentRecord rec = qwalk::moments_direct(dist->v);
        *m1 = rec.m1;
        *m2 = rec.m2;
        *var = rec.variance();
        return QW_OK;
    } catch (...) {
        return current_exception_status();
    }
}

qw_status qw_dist_step_master(const qw_dist* dist, const qw_coin* coin,
                              qw_dist** out) {
    if (!dist || !coin || !out)
        return fail(QW_ERR_INVALID_ARGUMENT, "null argument");
    try {
        *out = new qw_dist{qwalk::step_master(dist->v, coin->v)};
        return QW_OK;
    } catch (...) {
        return current_exception_status();
    }
}

qw_status qw_dist_step_master_with_interference(const qw_dist* dist,
                                                const qw_interference* beta,
                                                const qw_coin* coin,
                                                qw_dist** out) {
    if (!dist || !beta || !coin || !out)
        return fail(QW_ERR_INVALID_ARGUMENT, "null argument");
    try {
        *out = new qw_dist{
            qwalk::step_master_with_interference(dist->v, beta->v, coin->v)};
        return QW_OK;
    } catch (...) {
        return current_exception_status();
    }
}

qw_status qw_pos_dist_create(long origin, const double* p, size_t n, long time,
                             qw_pos_dist** out) {
    if (!p || !out || n == 0)
        return fail(QW_ERR_INVALID_ARGUMENT, "null argument");
    qwalk::PositionDistribution d;
    d.origin = origin;
    d.time = time;
    d.p.assign(p, p + n);
    *out = new qw_pos_dist{std::move(d)};
    return QW_OK;
}

void qw_pos_dist_destroy(qw_pos_dist* dist) { delete dist; }

long qw_pos_dist_origin(const qw_pos_dist* dist) {
    return dist ? dist->v.origin : 0;
}

long qw_pos_dist_time(const qw_pos_dist* dist) { return dist ? dist->v.time : 0; }

size_t qw_pos_dist_size(const qw_pos_dist* dist) {
    return dist ? dist->v.size() : 0;
}

qw_status qw_pos_dist_probabilities(const qw_pos_dist* dist, double* p,
                                    size_t n) {
    if (!dist || !p) return fail(QW_ERR_INVALID_ARGUMENT, "null argument");
    if (n < dist->v.size())
        return fail(QW_ERR_INVALID_ARGUMENT, "buffer too small");
    std::memcpy(p, dist->v.p.data(), dist->v.size() * sizeof(double));
    return QW_OK;
}

double qw_pos_dist_total(const qw_pos_dist* dist) {
    return dist ? dist->v.total() : 0.0;
}

qw_status qw_pos_dist_moments(const qw_pos_dist* dist, double* m1, double* m2,
                              double* var) {
    if (!dist || !m1 || !m2 || !var)
        return fail(QW_ERR_INVALID_ARGUMENT, "null argument");
    try {
        qwalk::MomentRecord rec = qwalk::moments_direct(dist->v);
        *m1 = rec.m1;
        *m2 = rec.m2;
        *var = rec.variance();
        return QW_OK;
    } catch (...) {
        return current_exception_status();
    }
}

qw_status qw_step_position_twostep(const qw_pos_dist* p_t,
                                   const qw_pos_dist* p_tm1,
                                   const qw_interference* beta,
                                   const qw_coin* coin, qw_pos_dist** out) {
    if (!p_t || !p_tm1 || !coin || !out)
        return fail(QW_ERR_INVALID_ARGUMENT, "null argument");
    try {
        *out = new qw_pos_dist{qwalk::step_position_twostep(
            p_t->v, p_tm1->v, beta ? &beta->v : nullptr, coin->v)};
        return QW_OK;
    } catch (...) {
        return current_exception_status();
    }
}

/* ---- interference ------------------------------------------------------ */

void qw_interference_destroy(qw_interference* field) { delete field; }

long qw_interference_origin(const qw_interference* field) {
    return field ? field->v.origin : 0;
}

size_t qw_interference_size(const qw_interference* field) {
    return field ? field->v.size() : 0;
}

qw_status qw_interference_values(const qw_interference* field, double* beta,
                                 size_t n) {
    if (!field || !beta) return fail(QW_ERR_INVALID_ARGUMENT, "null argument");
    if (n < field->v.size())
        return fail(QW_ERR_INVALID_ARGUMENT, "buffer too small");
    std::memcpy(beta, field->v.beta.data(), field->v.size() * sizeof(double));
    return QW_OK;
}

double qw_interference_sum(const qw_interference* field) {
    return field ? field->v.sum0 : 0.0;
}

double qw_interference_weighted_sum(const qw_interference* field) {
    return field ? field->v.sum1 : 0.0;
}

/* ---- series and fits ---------------------------------------------------- */

qw_status qw_series_create(qw_series** out) {
    if (!out) return fail(QW_ERR_INVALID_ARGUMENT, "null output handle");
    *out = new qw_series{};
    return QW_OK;
}

void qw_series_destroy(qw_series* series) { delete series; }

qw_status qw_series_append(qw_series* series, long t, double m1, double m2) {
    if (!series) return fail(QW_ERR_INVALID_ARGUMENT, "null argument");
    try {
        series->v.append({t, m1, m2});
        return QW_OK;
    } catch (...) {
        return current_exception_status();
    }
}

size_t qw_series_size(const qw_series* series) {
    return series ? series->v.size() : 0;
}

qw_status qw_series_get(const qw_series* series, size_t index, long* t,
                        double* m1, double* m2, double* var) {
    if (!series) return fail(QW_ERR_INVALID_ARGUMENT, "null argument");
    if (index >= series->v.size())
        return fail(QW_ERR_INVALID_ARGUMENT, "index out of range");
    const qwalk::MomentRecord& r = series->v.records()[index];
    if (t) *t = r.t;
    if (m1) *m1 = r.m1;
    if (m2) *m2 = r.m2;
    if (var) *var = r.variance();
    return QW_OK;
}

qw_status qw_series_write_csv(const qw_series* series, const char* path) {
    if (!series || !path) return fail(QW_ERR_INVALID_ARGUMENT, "null argument");
    std::ofstream os(path);
    if (!os) return fail(QW_ERR_IO, "cannot open output file");
    series->v.write_csv(os);
    os.flush();
    if (!os) return fail(QW_ERR_IO, "write failure");
    return QW_OK;
}

qw_status qw_series_fit(const qw_series* series, qw_moment_field field,
                        int degree, long t_min, long t_max,
                        int even_times_only, qw_fit_result* out) {
    if (!series || !out) return fail(QW_ERR_INVALID_ARGUMENT, "null argument");
    try {
        qwalk::MomentField f = field == QW_FIELD_M1 ? qwalk::MomentField::m1
                               : field == QW_FIELD_M2
                                   ? qwalk::MomentField::m2
                                   : qwalk::MomentField::variance;
        qwalk::FitResult fit = qwalk::fit_polynomial(
            series->v, f, degree, t_min, t_max, even_times_only != 0);
        *out = {fit.c0, fit.c1, fit.c2, fit.t_min, fit.t_max, fit.n_points,
                fit.residual_rms};
        return QW_OK;
    } catch (...) {
        return current_exception_status();
    }
}

qw_status qw_fit_poly(const double* x, const double* y, size_t n, int degree,
                      qw_fit_result* out) {
    if (!x || !y || !out) return fail(QW_ERR_INVALID_ARGUMENT, "null argument");
    try {
        std::vector<double> vx(x, x + n);
        std::vector<double> vy(y, y + n);
        qwalk::FitResult fit = qwalk::fit_poly(vx, vy, degree);
        *out = {fit.c0, fit.c1, fit.c2, fit.t_min, fit.t_max, fit.n_points,
                fit.residual_rms};
        return QW_OK;
    } catch (...) {
        return current_exception_status();
    }
}

qw_status qw_moments_recurrence_step(double m1_t, double m2_t, double m1_tm1,
                                     double m2_tm1,
                                     const qw_interference* beta_t,
                                     const qw_coin* coin, double* m1_next,
                                     double* m2_next) {
    if (!beta_t || !coin || !m1_next || !m2_next)
        return fail(QW_ERR_INVALID_ARGUMENT, "null argument");
    try {
        qwalk::MomentRecord m_t{1, m1_t, m2_t};
        qwalk::MomentRecord m_tm1{0, m1_tm1, m2_tm1};
        qwalk::MomentRecord next =
            qwalk::moments_recurrence_step(m_t, m_tm1, beta_t->v, coin->v);
        *m1_next = next.m1;
        *m2_next = next.m2;
        return QW_OK;
    } catch (...) {
        return current_exception_status();
    }
}

qw_status qw_decoherent_closed_form(double t, const qw_coin* coin, double c11,
                                    double c12, double c21, double c22,
                                    double* m1, double* m2) {
    if (!coin || !m1 || !m2)
        return fail(QW_ERR_INVALID_ARGUMENT, "null argument");
    try {
        auto [v1, v2] = qwalk::decoherent_closed_form(t, coin->v, c11, c12,
                                                      c21, c22);
        *m1 = v1;
        *m2 = v2;
        return QW_OK;
    } catch (...) {
        return current_exception_status();
    }
}

void qw_hadamard_moment_map(double m1, double m2, long t, double* m1_next,
                            double* m2_next) {
    auto [v1, v2] = qwalk::hadamard_moment_map(m1, m2, t);
    if (m1_next) *m1_next = v1;
    if (m2_next) *m2_next = v2;
}

/* ---- asymptotics -------------------------------------------------------- */

double qw_interference_constant_A(void) {
    return qwalk::constants::interference_sum_A();
}

double qw_interference_constant_B(void) {
    return qwalk::constants::interference_sum_B();
}

void qw_interference_sums_asymptotic(double t, double* sum0, double* sum1) {
    auto [s0, s1] = qwalk::interference_sums_asymptotic(t);
    if (sum0) *sum0 = s0;
    if (sum1) *sum1 = s1;
}

double qw_dispersion_omega(double k) { return qwalk::dispersion_omega(k); }

qw_status qw_hadamard_amplitude_fourier(long j, long t, double tolerance,
                                        qw_complex* a, qw_complex* b) {
    if (!a || !b) return fail(QW_ERR_INVALID_ARGUMENT, "null argument");
    try {
        qwalk::FourierOptions opts;
        if (tolerance > 0.0) opts.tolerance = tolerance;
        auto [va, vb] = qwalk::hadamard_amplitudes_fourier(j, t, opts);
        *a = from_complex(va);
        *b = from_complex(vb);
        return QW_OK;
    } catch (...) {
        return current_exception_status();
    }
}

qw_status qw_amp_field_create(long origin, const qw_complex* a,
                              const qw_complex* b, size_t n,
                              qw_amp_field** out) {
    if (!a || !b || !out || n == 0)
        return fail(QW_ERR_INVALID_ARGUMENT, "null argument");
    try {
        std::vector<qwalk::Complex> va(n);
        std::vector<qwalk::Complex> vb(n);
        for (size_t k = 0; k < n; ++k) {
            va[k] = to_complex(a[k]);
            vb[k] = to_complex(b[k]);
        }
        *out = new qw_amp_field{qwalk::make_effective_initials(
            origin, std::move(va), std::move(vb))};
        return QW_OK;
    } catch (...) {
        return current_exception_status();
    }
}

qw_status qw_amp_field_default_initials(qw_amp_field** out) {
    if (!out) return fail(QW_ERR_INVALID_ARGUMENT, "null output handle");
    try {
        *out = new qw_amp_field{qwalk::default_effective_initials()};
        return QW_OK;
    } catch (...) {
        return current_exception_status();
    }
}

void qw_amp_field_destroy(qw_amp_field* field) { delete field; }

long qw_amp_field_origin(const qw_amp_field* field) {
    return field ? field->v.origin : 0;
}

size_t qw_amp_field_size(const qw_amp_field* field) {
    return field ? field->v.size() : 0;
}

qw_status qw_amp_field_amplitudes(const qw_amp_field* field, qw_complex* a,
                                  qw_complex* b, size_t n) {
    if (!field || !a || !b) return fail(QW_ERR_INVALID_ARGUMENT, "null argument");
    if (n < field->v.size())
        return fail(QW_ERR_INVALID_ARGUMENT, "buffer too small");
    for (size_t k = 0; k < field->v.size(); ++k) {
        a[k] = from_complex(field->v.a[k]);
        b[k] = from_complex(field->v.b[k]);
    }
    return QW_OK;
}

double qw_amp_field_norm(const qw_amp_field* field) {
    return field ? field->v.norm() : 0.0;
}

qw_status qw_bessel_solution(const qw_amp_field* init, const qw_coin* coin,
                             double t, qw_amp_field** out) {
    if (!init || !coin || !out)
        return fail(QW_ERR_INVALID_ARGUMENT, "null argument");
    try {
        *out = new qw_amp_field{qwalk::bessel_solution(init->v, coin->v, t)};
        return QW_OK;
    } catch (...) {
        return current_exception_status();
    }
}

qw_status qw_bessel_moments(const qw_amp_field* init, const qw_coin* coin,
                            double t, double* m1, double* m2, double* var) {
    if (!init || !coin || !m1 || !m2 || !var)
        return fail(QW_ERR_INVALID_ARGUMENT, "null argument");
    try {
        qwalk::BesselMoments mom = qwalk::bessel_moments(init->v, coin->v, t);
        *m1 = mom.m1;
        *m2 = mom.m2;
        *var = mom.variance();
        return QW_OK;
    } catch (...) {
        return current_exception_status();
    }
}

qw_status qw_decoupled_map_residual(const qw_state* s0, const qw_state* s1,
                                    const qw_state* s2, const qw_coin* coin,
                                    double* out) {
    if (!s0 || !s1 || !s2 || !coin || !out)
        return fail(QW_ERR_INVALID_ARGUMENT, "null argument");
    try {
        *out = qwalk::decoupled_map_residual(s0->v, s1->v, s2->v, coin->v);
        return QW_OK;
    } catch (...) {
        return current_exception_status();
    }
}

} /* extern "C" */
