// moments.cpp - moment extraction, recurrences, closed forms and fits.

#include "moments.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "asymptotics.hpp"

namespace qwalk {

namespace {

MomentRecord moments_from_window(long origin, const std::vector<double>& weights,
                                 long time, double total) {
    if (std::abs(total - 1.0) > 1e-9)
        throw Error(ErrorCode::not_normalized,
                    "distribution is not normalized: total = " +
                        std::to_string(total));
    detail::AccurateSum s1;
    detail::AccurateSum s2;
    for (std::size_t k = 0; k < weights.size(); ++k) {
        double x = static_cast<double>(origin + static_cast<long>(k));
        s1.add(x * weights[k]);
        s2.add(x * x * weights[k]);
    }
    return MomentRecord{time, s1.value(), s2.value()};
}

} // namespace

void MomentSeries::append(const MomentRecord& rec) {
    if (!records_.empty() && rec.t <= records_.back().t)
        throw Error(ErrorCode::invalid_argument,
                    "series time stamps must be strictly increasing");
    records_.push_back(rec);
}

void MomentSeries::write_csv(std::ostream& os) const {
    os << "t,m1,m2,var\n";
    char line[128];
    for (const MomentRecord& r : records_) {
        std::snprintf(line, sizeof line, "%ld,%.17g,%.17g,%.17g\n", r.t, r.m1,
                      r.m2, r.variance());
        os << line;
    }
}

MomentRecord moments_direct(const PositionDistribution& dist) {
    return moments_from_window(dist.origin, dist.p, dist.time, dist.total());
}

MomentRecord moments_direct(const JointDistribution& dist) {
    std::vector<double> p(dist.size());
    for (std::size_t k = 0; k < dist.size(); ++k)
        p[k] = dist.left[k] + dist.right[k];
    return moments_from_window(dist.origin, p, dist.time, dist.total());
}

MomentRecord moments_recurrence_step(const MomentRecord& m_t,
                                     const MomentRecord& m_tm1,
                                     const InterferenceField& beta_t,
                                     const CoinAngle& coin) {
    if (m_t.t != m_tm1.t + 1)
        throw Error(ErrorCode::invalid_argument,
                    "moment records must be consecutive in time");
    const double c2 = 2.0 * coin.cos_sq();
    const double c2t = coin.cos2theta();
    const double s2t = coin.sin2theta();
    MomentRecord next;
    next.t = m_t.t + 1;
    next.m1 = c2 * m_t.m1 - c2t * m_tm1.m1 - 2.0 * s2t * beta_t.sum0;
    next.m2 = c2 * (1.0 + m_t.m2) - c2t * m_tm1.m2 - 4.0 * s2t * beta_t.sum1;
    return next;
}

std::pair<double, double> decoherent_closed_form(double t, const CoinAngle& coin,
                                                 double c11, double c12,
                                                 double c21, double c22) {
    if (coin.trivial())
        throw Error(ErrorCode::trivial_angle,
                    "closed form undefined for trivial angles");
    double tan2 = coin.sin_sq() / coin.cos_sq();
    double decay = std::exp(-2.0 * t * tan2);
    double m1 = c11 + c12 * decay;
    double m2 = c22 + t / tan2 + c21 * decay;
    return {m1, m2};
}

std::pair<double, double> hadamard_moment_map(double m1, double m2, long t) {
    const double a = constants::interference_sum_A();
    const double b = constants::interference_sum_B();
    return {m1 - 2.0 * a, m2 + 4.0 * a * static_cast<double>(t) + (1.0 - 4.0 * b)};
}

double relaxation_time(const CoinAngle& coin) {
    if (coin.theta() == 0.0 || coin.sin_theta() == 0.0)
        throw Error(ErrorCode::trivial_angle,
                    "relaxation time diverges at theta = 0");
    double cot = coin.cos_theta() / coin.sin_theta();
    return cot * cot;
}

FitResult fit_poly(const std::vector<double>& x, const std::vector<double>& y,
                   int degree) {
    if (degree < 1 || degree > 2)
        throw Error(ErrorCode::invalid_argument, "fit degree must be 1 or 2");
    const std::size_t n = x.size();
    if (y.size() != n)
        throw Error(ErrorCode::invalid_argument, "x/y length mismatch");
    if (n < static_cast<std::size_t>(degree) + 2)
        throw Error(ErrorCode::invalid_argument,
                    "fit window must contain at least degree + 2 points");

    // Center the abscissa for conditioning; solve the (d+1)x(d+1) normal
    // equations in long double.
    long double xbar = 0.0L;
    for (double v : x) xbar += v;
    xbar /= static_cast<long double>(n);

    const int d = degree;
    std::array<long double, 5> sx{};  // sums of u^k, k = 0..2d
    std::array<long double, 3> sxy{}; // sums of y u^k, k = 0..d
    for (std::size_t i = 0; i < n; ++i) {
        long double u = static_cast<long double>(x[i]) - xbar;
        long double pw = 1.0L;
        for (int k = 0; k <= 2 * d; ++k) {
            sx[k] += pw;
            if (k <= d) sxy[k] += static_cast<long double>(y[i]) * pw;
            pw *= u;
        }
    }

    // Gaussian elimination with partial pivoting on the small system.
    const int m = d + 1;
    long double mat[3][4] = {};
    for (int r = 0; r < m; ++r) {
        for (int c = 0; c < m; ++c) mat[r][c] = sx[r + c];
        mat[r][m] = sxy[r];
    }
    for (int col = 0; col < m; ++col) {
        int piv = col;
        for (int r = col + 1; r < m; ++r)
            if (std::abs(static_cast<double>(mat[r][col])) >
                std::abs(static_cast<double>(mat[piv][col])))
                piv = r;
        for (int c = 0; c <= m; ++c) std::swap(mat[piv][c], mat[col][c]);
        if (mat[col][col] == 0.0L)
            throw Error(ErrorCode::invalid_argument, "degenerate fit system");
        for (int r = 0; r < m; ++r) {
            if (r == col) continue;
            long double f = mat[r][col] / mat[col][col];
            for (int c = col; c <= m; ++c) mat[r][c] -= f * mat[col][c];
        }
    }
    long double q[3] = {};
    for (int r = 0; r < m; ++r) q[r] = mat[r][m] / mat[r][r];

    // Un-center: p(t) = q0 + q1 (t - xbar) + q2 (t - xbar)^2.
    FitResult fit;
    long double q2 = (d == 2) ? q[2] : 0.0L;
    fit.c2 = static_cast<double>(q2);
    fit.c1 = static_cast<double>(q[1] - 2.0L * q2 * xbar);
    fit.c0 = static_cast<double>(q[0] - q[1] * xbar + q2 * xbar * xbar);
    fit.n_points = n;

    long double rss = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
        long double u = static_cast<long double>(x[i]) - xbar;
        long double pred = q[0] + q[1] * u + q2 * u * u;
        long double r = static_cast<long double>(y[i]) - pred;
        rss += r * r;
    }
    fit.residual_rms = static_cast<double>(std::sqrt(static_cast<double>(
        rss / static_cast<long double>(n))));
    return fit;
}

FitResult fit_polynomial(const MomentSeries& series, MomentField field,
                         int degree, long t_min, long t_max,
                         bool even_times_only) {
    if (t_min > t_max)
        throw Error(ErrorCode::invalid_argument, "empty fit window");
    std::vector<double> x;
    std::vector<double> y;
    for (const MomentRecord& r : series.records()) {
        if (r.t < t_min || r.t > t_max) continue;
        if (even_times_only && (r.t % 2 != 0)) continue;
        x.push_back(static_cast<double>(r.t));
        switch (field) {
        case MomentField::m1: y.push_back(r.m1); break;
        case MomentField::m2: y.push_back(r.m2); break;
        case MomentField::variance: y.push_back(r.variance()); break;
        }
    }
    FitResult fit = fit_poly(x, y, degree);
    fit.t_min = t_min;
    fit.t_max = t_max;
    return fit;
}

} // namespace qwalk
