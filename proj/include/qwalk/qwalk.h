/* qwalk.h - C API of the quantum-walk-on-the-line library.
 *
 * The library simulates the generalized discrete-time quantum walk on the
 * line, its Markovian (decoherent) counterpart, and the long-time closed
 * forms: Fourier-integral Hadamard amplitudes, interference-sum constants,
 * the Bessel-kernel solution with its moment formulas, and the kicked-rotor
 * parameter correspondence.
 *
 * All objects are opaque handles created and destroyed through this API.
 * Functions that can fail return qw_status; results go to out-parameters.
 * A human-readable detail for the most recent failure on the calling
 * thread is available from qw_last_error().
 */

#ifndef QWALK_QWALK_H
#define QWALK_QWALK_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qw_status {
    QW_OK = 0,
    QW_ERR_INVALID_ARGUMENT = 1,
    QW_ERR_NOT_NORMALIZED = 2,
    QW_ERR_TRIVIAL_ANGLE = 3,
    QW_ERR_WINDOW_MISMATCH = 4,
    QW_ERR_CONSISTENCY = 5,
    QW_ERR_NO_CONVERGENCE = 6,
    QW_ERR_NO_CORRESPONDENCE = 7,
    QW_ERR_IO = 8,
    QW_ERR_INTERNAL = 9
} qw_status;

typedef enum qw_chirality { QW_LEFT = 0, QW_RIGHT = 1 } qw_chirality;

typedef enum qw_moment_field {
    QW_FIELD_M1 = 0,
    QW_FIELD_M2 = 1,
    QW_FIELD_VAR = 2
} qw_moment_field;

typedef struct qw_complex {
    double re;
    double im;
} qw_complex;

typedef struct qw_fit_result {
    double c0; /* coefficients of c0 + c1 t + c2 t^2 */
    double c1;
    double c2;
    long t_min;
    long t_max;
    size_t n_points;
    double residual_rms;
} qw_fit_result;

typedef struct qw_coin qw_coin;               /* coin angle */
typedef struct qw_state qw_state;             /* spinor field */
typedef struct qw_dist qw_dist;               /* joint (L,R) distribution */
typedef struct qw_pos_dist qw_pos_dist;       /* position marginal */
typedef struct qw_interference qw_interference;
typedef struct qw_series qw_series;           /* moment time series */
typedef struct qw_amp_field qw_amp_field;     /* effective amplitudes */

const char* qw_version(void);
const char* qw_status_message(qw_status status);
/* Detail for the last failure on this thread; empty string if none. */
const char* qw_last_error(void);

/* ---- coin angle ------------------------------------------------------ */

/* theta in [0, pi/2]; 0 and pi/2 are accepted but flagged trivial. */
qw_status qw_coin_create(double theta, qw_coin** out);
qw_status qw_coin_hadamard(qw_coin** out);
/* theta = arccos(K / (4 pi p)); fails unless K/(4 pi p) lies in [0, 1]. */
qw_status qw_coin_from_kicked_rotor(double strength, int resonance_order,
                                    qw_coin** out);
void qw_coin_destroy(qw_coin* coin);
double qw_coin_theta(const qw_coin* coin);
int qw_coin_is_trivial(const qw_coin* coin);
/* K = 4 pi p cos(theta); the inverse of qw_coin_from_kicked_rotor. */
qw_status qw_kicked_rotor_strength(const qw_coin* coin, int resonance_order,
                                   double* out);
/* D(theta) = cot^2(theta)/2; fails at theta = 0. */
qw_status qw_diffusion_coefficient(const qw_coin* coin, double* out);
/* tau = cot^2(theta); fails at theta = 0. */
qw_status qw_relaxation_time(const qw_coin* coin, double* out);
/* cos(theta). */
qw_status qw_propagation_speed(const qw_coin* coin, double* out);
/* Transition probability T_{ij,sl} of the Markov kernel. */
qw_status qw_kernel_entry(const qw_coin* coin, long i, long j, qw_chirality s,
                          qw_chirality l, double* out);

/* ---- walker state ---------------------------------------------------- */

/* State localized at `site`; |left|^2 + |right|^2 must be 1 within 1e-12. */
qw_status qw_state_localized(long site, qw_complex left, qw_complex right,
                             qw_state** out);
/* Arbitrary window of n sites starting at `origin`, time stamp `time`. */
qw_status qw_state_from_amplitudes(long origin, const qw_complex* a,
                                   const qw_complex* b, size_t n, long time,
                                   qw_state** out);
void qw_state_destroy(qw_state* state);
long qw_state_origin(const qw_state* state);
long qw_state_time(const qw_state* state);
size_t qw_state_size(const qw_state* state);
/* Copies the window into caller buffers of qw_state_size() entries. */
qw_status qw_state_amplitudes(const qw_state* state, qw_complex* a,
                              qw_complex* b, size_t n);
double qw_state_total_probability(const qw_state* state);
/* One step of the unitary map; window grows by one site per side. */
qw_status qw_state_step(const qw_state* state, const qw_coin* coin,
                        qw_state** out);
qw_status qw_state_evolve(const qw_state* state, const qw_coin* coin,
                          long steps, qw_state** out);
/* Debug dump: one line per site, tab-separated
 * "site re_a im_a re_b im_b". */
qw_status qw_state_write_text(const qw_state* state, const char* path);
qw_status qw_state_distribution(const qw_state* state, qw_dist** out);
qw_status qw_state_interference(const qw_state* state, qw_interference** out);
/* 1 iff P_m(t-1) = |a_{m-1}(t)|^2 + |b_{m+1}(t)|^2 reproduces the stored
 * predecessor within 1e-12 at every site. */
qw_status qw_two_step_identity(const qw_state* state,
                               const qw_pos_dist* predecessor, int* ok);

/* ---- distributions --------------------------------------------------- */

void qw_dist_destroy(qw_dist* dist);
long qw_dist_origin(const qw_dist* dist);
long qw_dist_time(const qw_dist* dist);
size_t qw_dist_size(const qw_dist* dist);
qw_status qw_dist_probabilities(const qw_dist* dist, double* left,
                                double* right, size_t n);
double qw_dist_total(const qw_dist* dist);
qw_status qw_dist_marginal(const qw_dist* dist, qw_pos_dist** out);
/* Moments M1 = sum i P_i, M2 = sum i^2 P_i, var = M2 - M1^2. */
qw_status qw_dist_moments(const qw_dist* dist, double* m1, double* m2,
                          double* var);
/* Master equation without the interference source. */
qw_status qw_dist_step_master(const qw_dist* dist, const qw_coin* coin,
                              qw_dist** out);
/* Full equation; equals the unitary one-step marginals when beta comes
 * from the state whose distribution is `dist`. */
qw_status qw_dist_step_master_with_interference(const qw_dist* dist,
                                                const qw_interference* beta,
                                                const qw_coin* coin,
                                                qw_dist** out);

qw_status qw_pos_dist_create(long origin, const double* p, size_t n, long time,
                             qw_pos_dist** out);
void qw_pos_dist_destroy(qw_pos_dist* dist);
long qw_pos_dist_origin(const qw_pos_dist* dist);
long qw_pos_dist_time(const qw_pos_dist* dist);
size_t qw_pos_dist_size(const qw_pos_dist* dist);
qw_status qw_pos_dist_probabilities(const qw_pos_dist* dist, double* p,
                                    size_t n);
double qw_pos_dist_total(const qw_pos_dist* dist);
qw_status qw_pos_dist_moments(const qw_pos_dist* dist, double* m1, double* m2,
                              double* var);
/* Two-step position recursion; beta may be NULL (decoherent variant). */
qw_status qw_step_position_twostep(const qw_pos_dist* p_t,
                                   const qw_pos_dist* p_tm1,
                                   const qw_interference* beta,
                                   const qw_coin* coin, qw_pos_dist** out);

/* ---- interference field ---------------------------------------------- */

void qw_interference_destroy(qw_interference* field);
long qw_interference_origin(const qw_interference* field);
size_t qw_interference_size(const qw_interference* field);
qw_status qw_interference_values(const qw_interference* field, double* beta,
                                 size_t n);
/* sum_i beta_i */
double qw_interference_sum(const qw_interference* field);
/* sum_i i beta_i */
double qw_interference_weighted_sum(const qw_interference* field);

/* ---- moment series and fits ------------------------------------------ */

qw_status qw_series_create(qw_series** out);
void qw_series_destroy(qw_series* series);
qw_status qw_series_append(qw_series* series, long t, double m1, double m2);
size_t qw_series_size(const qw_series* series);
qw_status qw_series_get(const qw_series* series, size_t index, long* t,
                        double* m1, double* m2, double* var);
/* CSV with header "t,m1,m2,var", 17 significant digits. */
qw_status qw_series_write_csv(const qw_series* series, const char* path);
/* Least-squares fit of the field over t in [t_min, t_max]; degree 1 or 2.
 * even_times_only != 0 restricts to even t (removes the period-2 parity
 * oscillation). */
qw_status qw_series_fit(const qw_series* series, qw_moment_field field,
                        int degree, long t_min, long t_max,
                        int even_times_only, qw_fit_result* out);
/* Fit on raw samples. */
qw_status qw_fit_poly(const double* x, const double* y, size_t n, int degree,
                      qw_fit_result* out);

/* One application of the exact moment recurrence; beta_t belongs to the
 * state at time t (the time of m1_t/m2_t). */
qw_status qw_moments_recurrence_step(double m1_t, double m2_t, double m1_tm1,
                                     double m2_tm1,
                                     const qw_interference* beta_t,
                                     const qw_coin* coin, double* m1_next,
                                     double* m2_next);
/* Decoherent closed form M1 = C11 + C12 e^{-2t tan^2},
 * M2 = C22 + t/tan^2 + C21 e^{-2t tan^2}. */
qw_status qw_decoherent_closed_form(double t, const qw_coin* coin, double c11,
                                    double c12, double c21, double c22,
                                    double* m1, double* m2);
/* Hadamard long-time map M1 -> M1 - 2A, M2 -> M2 + 4At + (1 - 4B). */
void qw_hadamard_moment_map(double m1, double m2, long t, double* m1_next,
                            double* m2_next);

/* ---- asymptotics ------------------------------------------------------ */

/* A = (2 - sqrt 2)/4 and B = 1 - 5 sqrt(2)/8. */
double qw_interference_constant_A(void);
double qw_interference_constant_B(void);
/* (sum0, sum1) = (A, -A t + B). */
void qw_interference_sums_asymptotic(double t, double* sum0, double* sum1);
/* Branch with cos(omega) >= 0 of sin(omega) = sin(k)/sqrt(2). */
double qw_dispersion_omega(double k);
/* Fourier-integral Hadamard amplitudes for a_j(0) = delta_j0, b = 0.
 * tolerance <= 0 selects the default 1e-9. */
qw_status qw_hadamard_amplitude_fourier(long j, long t, double tolerance,
                                        qw_complex* a, qw_complex* b);

qw_status qw_amp_field_create(long origin, const qw_complex* a,
                              const qw_complex* b, size_t n,
                              qw_amp_field** out);
/* Seeds matched to the Hadamard walk from the origin: a_0 = b_0 = 0.70206,
 * a_{+-2} = b_{+-2} = -0.05963, zero otherwise. */
qw_status qw_amp_field_default_initials(qw_amp_field** out);
void qw_amp_field_destroy(qw_amp_field* field);
long qw_amp_field_origin(const qw_amp_field* field);
size_t qw_amp_field_size(const qw_amp_field* field);
qw_status qw_amp_field_amplitudes(const qw_amp_field* field, qw_complex* a,
                                  qw_complex* b, size_t n);
double qw_amp_field_norm(const qw_amp_field* field);
/* xi_i(t) = sum_l (-1)^{i-l} xi_l(0) J_{i-l}(t cos theta). */
qw_status qw_bessel_solution(const qw_amp_field* init, const qw_coin* coin,
                             double t, qw_amp_field** out);
/* Closed-form moments of the Bessel solution. */
qw_status qw_bessel_moments(const qw_amp_field* init, const qw_coin* coin,
                            double t, double* m1, double* m2, double* var);
/* Max residual of xi_i(t+2) - xi_i(t) = cos(theta)[xi_{i+1}(t+1) -
 * xi_{i-1}(t+1)] over three consecutive states. */
qw_status qw_decoupled_map_residual(const qw_state* s0, const qw_state* s1,
                                    const qw_state* s2, const qw_coin* coin,
                                    double* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* QWALK_QWALK_H */
