// test_moments.cpp - direct moments, the exact recurrence, closed forms,
// the Hadamard moment map and least-squares fits.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "asymptotics.hpp"
#include "markov.hpp"
#include "moments.hpp"
#include "test_support.hpp"

using namespace qwalk;

namespace {
const double kPi = 3.14159265358979323846;
const double kSqrt2 = std::sqrt(2.0);
}

TEST_CASE("direct moments of simple distributions") {
    PositionDistribution point;
    point.origin = 0;
    point.p = {1.0};
    MomentRecord m = moments_direct(point);
    CHECK(m.m1 == 0.0);
    CHECK(m.m2 == 0.0);
    CHECK(m.variance() == 0.0);

    // Exact Hadamard t=2 distribution {1/4, 1/2, 1/4} on {-2, 0, 2}.
    PositionDistribution t2;
    t2.origin = -2;
    t2.p = {0.25, 0.0, 0.5, 0.0, 0.25};
    t2.time = 2;
    m = moments_direct(t2);
    CHECK(m.m1 == doctest::Approx(0.0));
    CHECK(m.m2 == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(m.variance() == doctest::Approx(2.0).epsilon(1e-15));

    PositionDistribution sym;
    sym.origin = -1;
    sym.p = {0.5, 0.0, 0.5};
    m = moments_direct(sym);
    CHECK(m.m1 == 0.0);
    CHECK(m.m2 == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("direct moments reject unnormalized input") {
    PositionDistribution bad;
    bad.origin = 0;
    bad.p = {0.7};
    CHECK_THROWS_AS(moments_direct(bad), Error);
    try {
        moments_direct(bad);
        FAIL("expected normalization error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::not_normalized);
    }
}

TEST_CASE("moment recurrence hand example at t = 2") {
    // M(1) = (0, 1), M(0) = (0, 0), beta(1) = 0 -> M(2) = (0, 2).
    InterferenceField zero;
    zero.origin = 0;
    zero.beta = {0.0};
    MomentRecord m1{1, 0.0, 1.0};
    MomentRecord m0{0, 0.0, 0.0};
    MomentRecord m2 = moments_recurrence_step(m1, m0, zero, CoinAngle::hadamard());
    CHECK(m2.t == 2);
    CHECK(m2.m1 == 0.0);
    CHECK(m2.m2 == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("beta-free recurrence at pi/4 collapses to unit-slope growth") {
    InterferenceField zero;
    zero.origin = 0;
    zero.beta = {0.0};
    CoinAngle coin = CoinAngle::hadamard();
    MomentRecord prev{0, 0.0, 0.0};
    MomentRecord cur{1, 0.0, 1.0};
    for (long t = 1; t < 20; ++t) {
        MomentRecord next = moments_recurrence_step(cur, prev, zero, coin);
        CHECK(next.m2 == doctest::Approx(1.0 + cur.m2).epsilon(1e-15));
        prev = cur;
        cur = next;
    }
}

TEST_CASE("recurrence agrees with direct moments along unitary runs") {
    for (double theta : {kPi / 6.0, kPi / 4.0, kPi / 3.0}) {
        CoinAngle coin(theta);
        SpinorField state = SpinorField::localized(0, {1.0, 0.0}, {0.0, 0.0});
        SpinorField next = state.step(coin);
        MomentRecord m_prev = moments_direct(state.distribution());
        MomentRecord m_cur = moments_direct(next.distribution());
        for (long t = 1; t < 50; ++t) {
            MomentRecord predicted =
                moments_recurrence_step(m_cur, m_prev, next.interference(), coin);
            next = next.step(coin);
            MomentRecord actual = moments_direct(next.distribution());
            CHECK(std::abs(predicted.m1 - actual.m1) < 1e-10);
            CHECK(std::abs(predicted.m2 - actual.m2) < 1e-10);
            m_prev = m_cur;
            m_cur = actual;
        }
    }
}

TEST_CASE("recurrence rejects non-consecutive records") {
    InterferenceField zero;
    zero.origin = 0;
    zero.beta = {0.0};
    MomentRecord a{5, 0.0, 1.0};
    MomentRecord b{3, 0.0, 1.0};
    CHECK_THROWS_AS(moments_recurrence_step(a, b, zero, CoinAngle::hadamard()),
                    Error);
}

TEST_CASE("decoherent closed form") {
    CoinAngle coin = CoinAngle::hadamard();
    auto [m1_at_0, m2_at_0] = decoherent_closed_form(0.0, coin, 1.5, -0.5, 2.0, 3.0);
    CHECK(m1_at_0 == doctest::Approx(1.0).epsilon(1e-15));  // C11 + C12
    CHECK(m2_at_0 == doctest::Approx(5.0).epsilon(1e-15));  // C22 + C21

    CHECK_THROWS_AS(decoherent_closed_form(1.0, CoinAngle(0.0), 0, 0, 0, 0), Error);
    CHECK_THROWS_AS(decoherent_closed_form(1.0, CoinAngle(kPi / 2.0), 0, 0, 0, 0),
                    Error);

    // Constants matched to the first two master-equation points keep the
    // closed form within 0.5% of the run beyond 10 tau.
    CoinAngle c6(kPi / 6.0);
    JointDistribution d =
        SpinorField::localized(0, {1.0, 0.0}, {0.0, 0.0}).distribution();
    std::vector<double> m2_run;
    m2_run.push_back(moments_direct(d).m2);
    for (long t = 1; t <= 200; ++t) {
        d = step_master(d, c6);
        m2_run.push_back(moments_direct(d).m2);
    }
    // M2(t) = C22 + t cot^2 + C21 e^{-2 t tan^2}; match at t = 0, 1.
    double tan2 = c6.sin_sq() / c6.cos_sq();
    double cot2 = 1.0 / tan2;
    double decay = std::exp(-2.0 * tan2);
    double c21 = (m2_run[1] - m2_run[0] - cot2) / (decay - 1.0);
    double c22 = m2_run[0] - c21;
    long t_lo = static_cast<long>(std::ceil(10.0 * cot2));
    for (long t = t_lo; t <= 200; ++t) {
        auto [m1_cf, m2_cf] = decoherent_closed_form(
            static_cast<double>(t), c6, 0.0, 0.0, c21, c22);
        CHECK(std::abs(m2_cf - m2_run[t]) / m2_run[t] < 0.005);
    }
}

TEST_CASE("Hadamard moment map closed forms") {
    const double a_const = constants::interference_sum_A();
    const double b_const = constants::interference_sum_B();
    double m1 = 0.0, m2 = 0.0;
    const long T = 500;
    for (long t = 0; t < T; ++t) {
        auto [n1, n2] = hadamard_moment_map(m1, m2, t);
        m1 = n1;
        m2 = n2;
    }
    // M1(T) = -2AT, M2(T) = 2AT^2 + (1 - 4B - 2A)T with C = C' = 0.
    double expect_m1 = -2.0 * a_const * T;
    double expect_m2 =
        2.0 * a_const * T * T + (1.0 - 4.0 * b_const - 2.0 * a_const) * T;
    CHECK(std::abs(m1 - expect_m1) < 1e-9);
    CHECK(std::abs(m2 - expect_m2) < 1e-7);
    // The implied variance coefficient is 2A(1 - 2A) = (sqrt 2 - 1)/2.
    double var_coeff = (m2 - m1 * m1) / (static_cast<double>(T) * T);
    CHECK(var_coeff ==
          doctest::Approx(2.0 * a_const * (1.0 - 2.0 * a_const)).epsilon(1e-2));
    CHECK(2.0 * a_const * (1.0 - 2.0 * a_const) ==
          doctest::Approx((kSqrt2 - 1.0) / 2.0).epsilon(1e-15));
}

TEST_CASE("relaxation time") {
    CHECK(relaxation_time(CoinAngle::hadamard()) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(relaxation_time(CoinAngle(kPi / 6.0)) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(relaxation_time(CoinAngle(kPi / 3.0)) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK_THROWS_AS(relaxation_time(CoinAngle(0.0)), Error);
}

TEST_CASE("series enforces strictly increasing time stamps") {
    MomentSeries series;
    series.append({0, 0.0, 0.0});
    series.append({1, 0.0, 1.0});
    CHECK_THROWS_AS(series.append({1, 0.0, 2.0}), Error);
    CHECK_THROWS_AS(series.append({0, 0.0, 2.0}), Error);
    CHECK(series.size() == 2);
}

TEST_CASE("polynomial fits recover exact growth laws") {
    MomentSeries linear;
    MomentSeries quadratic;
    for (long t = 0; t <= 100; ++t) {
        double v_lin = 0.5 * t;
        double v_quad = 0.2071 * t * t;
        // m2 chosen so that var = m2 - m1^2 equals the target curve
        linear.append({t, 0.0, v_lin});
        quadratic.append({t, 0.0, v_quad});
    }
    FitResult f1 = fit_polynomial(linear, MomentField::variance, 1, 0, 100);
    CHECK(f1.c1 == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(f1.residual_rms < 1e-12);

    FitResult f2 = fit_polynomial(quadratic, MomentField::variance, 2, 0, 100);
    CHECK(f2.c2 == doctest::Approx(0.2071).epsilon(1e-12));
    CHECK(f2.residual_rms < 1e-9);
}

TEST_CASE("fit validation and the even-time policy") {
    MomentSeries series;
    for (long t = 0; t <= 40; ++t) {
        // Clean line on even t, garbage on odd t: the policy must ignore odd rows.
        double v = (t % 2 == 0) ? 2.0 * t + 1.0 : 1000.0;
        series.append({t, 0.0, v});
    }
    FitResult fit = fit_polynomial(series, MomentField::m2, 1, 0, 40);
    CHECK(fit.c1 == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(fit.c0 == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(fit.n_points == 21);

    FitResult all = fit_polynomial(series, MomentField::m2, 1, 0, 40, false);
    CHECK(all.n_points == 41);
    CHECK(std::abs(all.c1 - 2.0) > 0.1); // odd-row garbage shifts the naive fit

    CHECK_THROWS_AS(fit_polynomial(series, MomentField::m2, 3, 0, 40), Error);
    CHECK_THROWS_AS(fit_polynomial(series, MomentField::m2, 2, 0, 4), Error);
    CHECK_THROWS_AS(fit_polynomial(series, MomentField::m2, 1, 30, 20), Error);
}

TEST_CASE("moment records from valid distributions satisfy Jensen") {
    std::mt19937_64 rng(41);
    for (int rep = 0; rep < 50; ++rep) {
        SpinorField s = test::random_state(rng, -10, 21);
        MomentRecord m = moments_direct(s.distribution());
        CHECK(m.m2 - m.m1 * m.m1 >= -1e-12);
    }
}

TEST_CASE("csv serialization round-trips at full precision") {
    MomentSeries series;
    series.append({0, 0.0, 0.0});
    series.append({1, -1.0 / 3.0, kSqrt2});
    series.append({2, 0.12345678901234567, 1e-17});
    std::ostringstream os;
    series.write_csv(os);
    std::istringstream is(os.str());
    std::string header;
    std::getline(is, header);
    CHECK(header == "t,m1,m2,var");
    for (const MomentRecord& r : series.records()) {
        std::string line;
        REQUIRE(std::getline(is, line));
        long t = 0;
        double m1 = 0.0, m2 = 0.0, var = 0.0;
        CHECK(std::sscanf(line.c_str(), "%ld,%lf,%lf,%lf", &t, &m1, &m2, &var) == 4);
        CHECK(t == r.t);
        CHECK(m1 == r.m1); // 17 significant digits reproduce the double exactly
        CHECK(m2 == r.m2);
        CHECK(var == r.variance());
    }
}
