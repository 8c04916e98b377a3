// qwalk_cli.cpp - command-line harness for walk experiments.
//
// Subcommands: evolve, figure1, figure2, bessel-check, fourier-check,
// rotor, sweep.  Everything goes through the shared-library C API; the
// harness itself only parses configuration, drives runs and writes CSV
// plus a run.json metadata file next to each output set.
//
// Exit codes: 0 success, 2 configuration error, 3 i/o failure,
// 4 numerical convergence failure.

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qwalk/qwalk.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct CliError {
    int exit_code;
    std::string message;
};

[[noreturn]] void die(int code, const std::string& message) {
    throw CliError{code, message};
}

int exit_code_for(qw_status st) {
    switch (st) {
    case QW_ERR_IO: return 3;
    case QW_ERR_NO_CONVERGENCE: return 4;
    default: return 2;
    }
}

void check(qw_status st, const std::string& context) {
    if (st != QW_OK)
        die(exit_code_for(st),
            context + ": " + qw_status_message(st) + " (" + qw_last_error() + ")");
}

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// RAII wrappers around the C handles.
struct CoinDeleter { void operator()(qw_coin* p) const { qw_coin_destroy(p); } };
struct StateDeleter { void operator()(qw_state* p) const { qw_state_destroy(p); } };
struct DistDeleter { void operator()(qw_dist* p) const { qw_dist_destroy(p); } };
struct PosDeleter { void operator()(qw_pos_dist* p) const { qw_pos_dist_destroy(p); } };
struct InterfDeleter { void operator()(qw_interference* p) const { qw_interference_destroy(p); } };
struct SeriesDeleter { void operator()(qw_series* p) const { qw_series_destroy(p); } };
struct AmpDeleter { void operator()(qw_amp_field* p) const { qw_amp_field_destroy(p); } };

using CoinPtr = std::unique_ptr<qw_coin, CoinDeleter>;
using StatePtr = std::unique_ptr<qw_state, StateDeleter>;
using DistPtr = std::unique_ptr<qw_dist, DistDeleter>;
using PosPtr = std::unique_ptr<qw_pos_dist, PosDeleter>;
using InterfPtr = std::unique_ptr<qw_interference, InterfDeleter>;
using SeriesPtr = std::unique_ptr<qw_series, SeriesDeleter>;
using AmpPtr = std::unique_ptr<qw_amp_field, AmpDeleter>;

struct RotorParams {
    double strength = 0.0;
    int resonance_order = 1;

    bool operator==(const RotorParams&) const = default;
};

struct InitialState {
    long site = 0;
    double left_re = 1.0;
    double left_im = 0.0;
    double right_re = 0.0;
    double right_im = 0.0;

    bool operator==(const InitialState&) const = default;
};

struct RunConfig {
    std::string mode = "unitary"; // unitary | markov | twostep
    std::optional<double> theta;
    std::optional<RotorParams> rotor;
    long steps = 0;
    InitialState initial;
    std::optional<std::pair<long, long>> fit_window;
    std::vector<std::string> emit = {"moments"};
    std::string out_dir = "out";

    bool operator==(const RunConfig&) const = default;
};

json config_to_json(const RunConfig& cfg) {
    json j;
    j["mode"] = cfg.mode;
    if (cfg.theta) j["theta"] = *cfg.theta;
    if (cfg.rotor)
        j["rotor"] = {{"K", cfg.rotor->strength}, {"p", cfg.rotor->resonance_order}};
    j["steps"] = cfg.steps;
    j["initial"] = {{"site", cfg.initial.site},
                    {"aL", {cfg.initial.left_re, cfg.initial.left_im}},
                    {"aR", {cfg.initial.right_re, cfg.initial.right_im}}};
    if (cfg.fit_window)
        j["fit_window"] = {cfg.fit_window->first, cfg.fit_window->second};
    j["emit"] = cfg.emit;
    j["out"] = cfg.out_dir;
    return j;
}

RunConfig config_from_json(const json& j) {
    RunConfig cfg;
    try {
        if (j.contains("mode")) cfg.mode = j.at("mode").get<std::string>();
        if (j.contains("theta")) cfg.theta = j.at("theta").get<double>();
        if (j.contains("rotor")) {
            RotorParams r;
            r.strength = j.at("rotor").at("K").get<double>();
            r.resonance_order = j.at("rotor").at("p").get<int>();
            cfg.rotor = r;
        }
        if (j.contains("steps")) cfg.steps = j.at("steps").get<long>();
        if (j.contains("initial")) {
            const json& init = j.at("initial");
            cfg.initial.site = init.at("site").get<long>();
            cfg.initial.left_re = init.at("aL").at(0).get<double>();
            cfg.initial.left_im = init.at("aL").at(1).get<double>();
            cfg.initial.right_re = init.at("aR").at(0).get<double>();
            cfg.initial.right_im = init.at("aR").at(1).get<double>();
        }
        if (j.contains("fit_window"))
            cfg.fit_window = {j.at("fit_window").at(0).get<long>(),
                              j.at("fit_window").at(1).get<long>()};
        if (j.contains("emit")) cfg.emit = j.at("emit").get<std::vector<std::string>>();
        if (j.contains("out")) cfg.out_dir = j.at("out").get<std::string>();
    } catch (const json::exception& e) {
        die(2, std::string("malformed config: ") + e.what());
    }
    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) die(3, "cannot open config file: " + path);
    json j;
    try {
        is >> j;
    } catch (const json::exception& e) {
        die(2, std::string("config is not valid JSON: ") + e.what());
    }
    return config_from_json(j);
}

void validate_config(const RunConfig& cfg, bool rotor_command) {
    if (cfg.steps < 1) die(2, "steps must be >= 1");
    if (cfg.mode != "unitary" && cfg.mode != "markov" && cfg.mode != "twostep")
        die(2, "mode must be one of unitary|markov|twostep");
    if (cfg.theta && cfg.rotor)
        die(2, "provide exactly one of --theta or --K/--p, not both");
    if (!cfg.theta && !cfg.rotor)
        die(2, "provide exactly one of --theta or --K/--p");
    if (rotor_command && !cfg.rotor) die(2, "rotor requires --K and --p");
    if (cfg.rotor && cfg.rotor->resonance_order < 1)
        die(2, "resonance order p must be a positive integer");
    if (cfg.fit_window) {
        if (cfg.fit_window->first > cfg.fit_window->second ||
            cfg.fit_window->first < 0 || cfg.fit_window->second > cfg.steps)
            die(2, "fit window must satisfy 0 <= tmin <= tmax <= steps");
    }
    for (const std::string& e : cfg.emit) {
        if (e != "moments" && e != "distribution" && e != "interference")
            die(2, "emit must be a subset of moments,distribution,interference");
        if (e == "interference" && cfg.mode != "unitary")
            die(2, "interference output requires unitary mode (no amplitudes otherwise)");
        if (e == "distribution" && cfg.mode == "twostep")
            die(2, "distribution output is not available in twostep mode "
                   "(no chirality split)");
    }
    double norm = cfg.initial.left_re * cfg.initial.left_re +
                  cfg.initial.left_im * cfg.initial.left_im +
                  cfg.initial.right_re * cfg.initial.right_re +
                  cfg.initial.right_im * cfg.initial.right_im;
    if (std::abs(norm - 1.0) > 1e-12)
        die(2, "initial chirality pair is not normalized: |aL|^2 + |aR|^2 = " +
               g17(norm));
}

CoinPtr make_coin(const RunConfig& cfg) {
    qw_coin* coin = nullptr;
    if (cfg.rotor)
        check(qw_coin_from_kicked_rotor(cfg.rotor->strength,
                                        cfg.rotor->resonance_order, &coin),
              "kicked-rotor correspondence");
    else
        check(qw_coin_create(*cfg.theta, &coin), "coin angle");
    return CoinPtr(coin);
}

StatePtr make_initial_state(const RunConfig& cfg) {
    qw_state* state = nullptr;
    check(qw_state_localized(cfg.initial.site,
                             {cfg.initial.left_re, cfg.initial.left_im},
                             {cfg.initial.right_re, cfg.initial.right_im},
                             &state),
          "initial state");
    return StatePtr(state);
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream os(path);
    if (!os) die(3, "cannot open output file: " + path.string());
    return os;
}

void ensure_out_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) die(3, "cannot create output directory " + dir.string() + ": " +
                   ec.message());
}

struct FitSummary {
    std::string field;
    int degree = 0;
    qw_fit_result result{};
};

void write_run_json(const fs::path& dir, const std::string& command,
                    const RunConfig& cfg, const qw_coin* coin,
                    const std::optional<FitSummary>& fit) {
    json j;
    j["version"] = qw_version();
    j["command"] = command;
    j["config"] = config_to_json(cfg);
    j["theta_effective"] = qw_coin_theta(coin);
    j["coin_trivial"] = qw_coin_is_trivial(coin) != 0;
    if (fit) {
        j["fit"] = {{"field", fit->field},
                    {"degree", fit->degree},
                    {"t_min", fit->result.t_min},
                    {"t_max", fit->result.t_max},
                    {"n_points", fit->result.n_points},
                    {"c0", fit->result.c0},
                    {"c1", fit->result.c1},
                    {"c2", fit->result.c2},
                    {"residual_rms", fit->result.residual_rms}};
    }
    std::ofstream os = open_output(dir / "run.json");
    os << j.dump(2) << "\n";
    if (!os) die(3, "write failure on run.json");
}

bool emits(const RunConfig& cfg, const char* what) {
    for (const std::string& e : cfg.emit)
        if (e == what) return true;
    return false;
}

// Default fit windows: coherent runs use [200, 1000], decoherent runs
// [ceil(10 tau), ceil(10 tau) + 1000], both clipped to the run length.
std::optional<std::pair<long, long>> default_fit_window(const RunConfig& cfg,
                                                        const qw_coin* coin) {
    long lo = 200;
    long hi = 1000;
    if (cfg.mode == "markov") {
        double tau = 0.0;
        if (qw_relaxation_time(coin, &tau) != QW_OK) return std::nullopt;
        lo = static_cast<long>(std::ceil(10.0 * tau));
        hi = lo + 1000;
    }
    hi = std::min(hi, cfg.steps);
    if (hi - lo < 8) return std::nullopt;
    return std::make_pair(lo, hi);
}

void run_evolve(const std::string& command, const RunConfig& cfg) {
    CoinPtr coin = make_coin(cfg);
    if (qw_coin_is_trivial(coin.get()))
        std::cerr << "note: theta = " << g17(qw_coin_theta(coin.get()))
                  << " is a trivial angle (pure translation)\n";

    fs::path dir(cfg.out_dir);
    ensure_out_dir(dir);

    SeriesPtr series([] {
        qw_series* s = nullptr;
        check(qw_series_create(&s), "series");
        return s;
    }());

    std::ofstream interference_csv;
    if (emits(cfg, "interference")) {
        interference_csv = open_output(dir / "interference.csv");
        interference_csv << "t,sum_beta,sum_i_beta\n";
    }

    auto append_moments = [&](long t, double m1, double m2) {
        check(qw_series_append(series.get(), t, m1, m2), "series append");
    };

    if (cfg.mode == "unitary") {
        StatePtr state = make_initial_state(cfg);
        for (long t = 0; t <= cfg.steps; ++t) {
            DistPtr dist([&] {
                qw_dist* d = nullptr;
                check(qw_state_distribution(state.get(), &d), "distribution");
                return d;
            }());
            double m1 = 0.0, m2 = 0.0, var = 0.0;
            check(qw_dist_moments(dist.get(), &m1, &m2, &var), "moments");
            append_moments(t, m1, m2);
            if (interference_csv.is_open()) {
                InterfPtr f([&] {
                    qw_interference* p = nullptr;
                    check(qw_state_interference(state.get(), &p), "interference");
                    return p;
                }());
                interference_csv << t << ',' << g17(qw_interference_sum(f.get()))
                                 << ',' << g17(qw_interference_weighted_sum(f.get()))
                                 << '\n';
            }
            if (t == cfg.steps && emits(cfg, "distribution")) {
                std::ofstream os = open_output(
                    dir / ("distribution_t" + std::to_string(t) + ".csv"));
                os << "site,p_left,p_right,p_total\n";
                size_t n = qw_dist_size(dist.get());
                std::vector<double> left(n), right(n);
                check(qw_dist_probabilities(dist.get(), left.data(), right.data(), n),
                      "distribution values");
                long origin = qw_dist_origin(dist.get());
                for (size_t k = 0; k < n; ++k)
                    os << origin + static_cast<long>(k) << ',' << g17(left[k]) << ','
                       << g17(right[k]) << ',' << g17(left[k] + right[k]) << '\n';
            }
            if (t < cfg.steps) {
                qw_state* next = nullptr;
                check(qw_state_step(state.get(), coin.get(), &next), "step");
                state.reset(next);
            }
        }
    } else if (cfg.mode == "markov") {
        StatePtr init = make_initial_state(cfg);
        DistPtr dist([&] {
            qw_dist* d = nullptr;
            check(qw_state_distribution(init.get(), &d), "distribution");
            return d;
        }());
        for (long t = 0; t <= cfg.steps; ++t) {
            double m1 = 0.0, m2 = 0.0, var = 0.0;
            check(qw_dist_moments(dist.get(), &m1, &m2, &var), "moments");
            append_moments(t, m1, m2);
            if (t == cfg.steps && emits(cfg, "distribution")) {
                std::ofstream os = open_output(
                    dir / ("distribution_t" + std::to_string(t) + ".csv"));
                os << "site,p_left,p_right,p_total\n";
                size_t n = qw_dist_size(dist.get());
                std::vector<double> left(n), right(n);
                check(qw_dist_probabilities(dist.get(), left.data(), right.data(), n),
                      "distribution values");
                long origin = qw_dist_origin(dist.get());
                for (size_t k = 0; k < n; ++k)
                    os << origin + static_cast<long>(k) << ',' << g17(left[k]) << ','
                       << g17(right[k]) << ',' << g17(left[k] + right[k]) << '\n';
            }
            if (t < cfg.steps) {
                qw_dist* next = nullptr;
                check(qw_dist_step_master(dist.get(), coin.get(), &next),
                      "master step");
                dist.reset(next);
            }
        }
    } else { // twostep
        StatePtr init = make_initial_state(cfg);
        DistPtr d0([&] {
            qw_dist* d = nullptr;
            check(qw_state_distribution(init.get(), &d), "distribution");
            return d;
        }());
        PosPtr prev([&] {
            qw_pos_dist* p = nullptr;
            check(qw_dist_marginal(d0.get(), &p), "marginal");
            return p;
        }());
        // Seed P(1) with one exact unitary step; the beta-free recursion
        // then runs on position marginals alone.
        StatePtr s1([&] {
            qw_state* s = nullptr;
            check(qw_state_step(init.get(), coin.get(), &s), "seed step");
            return s;
        }());
        DistPtr d1([&] {
            qw_dist* d = nullptr;
            check(qw_state_distribution(s1.get(), &d), "distribution");
            return d;
        }());
        PosPtr cur([&] {
            qw_pos_dist* p = nullptr;
            check(qw_dist_marginal(d1.get(), &p), "marginal");
            return p;
        }());
        double m1 = 0.0, m2 = 0.0, var = 0.0;
        check(qw_pos_dist_moments(prev.get(), &m1, &m2, &var), "moments");
        append_moments(0, m1, m2);
        if (cfg.steps >= 1) {
            check(qw_pos_dist_moments(cur.get(), &m1, &m2, &var), "moments");
            append_moments(1, m1, m2);
        }
        for (long t = 2; t <= cfg.steps; ++t) {
            qw_pos_dist* next = nullptr;
            check(qw_step_position_twostep(cur.get(), prev.get(), nullptr,
                                           coin.get(), &next),
                  "two-step recursion");
            prev = std::move(cur);
            cur.reset(next);
            check(qw_pos_dist_moments(cur.get(), &m1, &m2, &var), "moments");
            append_moments(t, m1, m2);
        }
    }

    check(qw_series_write_csv(series.get(), (dir / "moments.csv").string().c_str()),
          "moments.csv");

    std::optional<FitSummary> fit;
    std::optional<std::pair<long, long>> window =
        cfg.fit_window ? cfg.fit_window : default_fit_window(cfg, coin.get());
    if (window) {
        FitSummary f;
        f.field = "var";
        f.degree = (cfg.mode == "markov") ? 1 : 2;
        qw_status st = qw_series_fit(series.get(), QW_FIELD_VAR, f.degree,
                                     window->first, window->second, 1, &f.result);
        if (st == QW_OK) {
            fit = f;
            std::cout << "fit var on [" << window->first << ", " << window->second
                      << "]: c0=" << g17(f.result.c0) << " c1=" << g17(f.result.c1)
                      << " c2=" << g17(f.result.c2)
                      << " residual_rms=" << g17(f.result.residual_rms) << "\n";
        }
    }
    write_run_json(dir, command, cfg, coin.get(), fit);
    std::cout << "wrote " << (dir / "moments.csv").string() << "\n";
}

void run_figure1(const RunConfig& cfg) {
    if (cfg.rotor)
        die(2, "figure1 takes --theta only (the Hadamard angle is enforced)");
    if (cfg.theta && std::abs(*cfg.theta - kPi / 4.0) > 1e-12)
        die(2, "figure1 requires the Hadamard angle theta = pi/4 "
               "(constants A and B are Hadamard-specific)");
    RunConfig eff = cfg;
    eff.theta = kPi / 4.0;
    eff.initial = InitialState{}; // a_0 = 1, b_0 = 0
    validate_config(eff, false);

    CoinPtr coin = make_coin(eff);
    fs::path dir(eff.out_dir);
    ensure_out_dir(dir);

    const double a_const = qw_interference_constant_A();
    const double b_const = qw_interference_constant_B();

    std::ofstream os = open_output(dir / "fig1.csv");
    os << "t,delta_A_over_A,delta_Bp_over_Bp\n";
    StatePtr state = make_initial_state(eff);
    for (long t = 0; t <= eff.steps; ++t) {
        InterfPtr f([&] {
            qw_interference* p = nullptr;
            check(qw_state_interference(state.get(), &p), "interference");
            return p;
        }());
        double s0 = qw_interference_sum(f.get());
        double s1 = qw_interference_weighted_sum(f.get());
        double line = -a_const * static_cast<double>(t) + b_const;
        os << t << ',' << g17((s0 - a_const) / a_const) << ','
           << g17((s1 + a_const * static_cast<double>(t) - b_const) / line) << '\n';
        if (t < eff.steps) {
            qw_state* next = nullptr;
            check(qw_state_step(state.get(), coin.get(), &next), "step");
            state.reset(next);
        }
    }
    write_run_json(dir, "figure1", eff, coin.get(), std::nullopt);
    std::cout << "wrote " << (dir / "fig1.csv").string() << "\n";
}

// Shared by figure2 (theta fixed at pi/4) and bessel-check (any theta).
void run_figure2(const std::string& command, const RunConfig& cfg) {
    if (cfg.rotor)
        die(2, command + " takes --theta only");
    RunConfig eff = cfg;
    if (!eff.theta) eff.theta = kPi / 4.0;
    eff.initial = InitialState{}; // exact run starts at the origin, a_0 = 1
    validate_config(eff, false);

    CoinPtr coin = make_coin(eff);
    fs::path dir(eff.out_dir);
    ensure_out_dir(dir);

    AmpPtr init([&] {
        qw_amp_field* f = nullptr;
        check(qw_amp_field_default_initials(&f), "effective initials");
        return f;
    }());

    std::ofstream os = open_output(dir / "fig2.csv");
    os << "t,var_exact,var_bessel,delta_var_over_var\n";
    StatePtr state = make_initial_state(eff);
    for (long t = 0; t <= eff.steps; ++t) {
        if (t >= 1) {
            DistPtr dist([&] {
                qw_dist* d = nullptr;
                check(qw_state_distribution(state.get(), &d), "distribution");
                return d;
            }());
            double m1 = 0.0, m2 = 0.0, var_exact = 0.0;
            check(qw_dist_moments(dist.get(), &m1, &m2, &var_exact), "moments");
            double bm1 = 0.0, bm2 = 0.0, var_bessel = 0.0;
            check(qw_bessel_moments(init.get(), coin.get(),
                                    static_cast<double>(t), &bm1, &bm2,
                                    &var_bessel),
                  "bessel moments");
            os << t << ',' << g17(var_exact) << ',' << g17(var_bessel) << ','
               << g17((var_bessel - var_exact) / var_exact) << '\n';
        }
        if (t < eff.steps) {
            qw_state* next = nullptr;
            check(qw_state_step(state.get(), coin.get(), &next), "step");
            state.reset(next);
        }
    }
    write_run_json(dir, command, eff, coin.get(), std::nullopt);
    std::cout << "wrote " << (dir / "fig2.csv").string() << "\n";
}

int run_fourier_check(long t_max, long guard, double tolerance) {
    if (t_max < 0) die(2, "t-max must be nonnegative");
    if (t_max > guard)
        die(2, "t-max exceeds the quadrature cost guard (" + std::to_string(guard) +
               "); raise --guard explicitly for long runs");

    qw_coin* coin_raw = nullptr;
    check(qw_coin_hadamard(&coin_raw), "coin");
    CoinPtr coin(coin_raw);
    qw_state* s0 = nullptr;
    check(qw_state_localized(0, {1.0, 0.0}, {0.0, 0.0}, &s0), "state");
    StatePtr state(s0);

    double worst = 0.0;
    for (long t = 0; t <= t_max; ++t) {
        size_t n = qw_state_size(state.get());
        std::vector<qw_complex> a(n), b(n);
        check(qw_state_amplitudes(state.get(), a.data(), b.data(), n), "amplitudes");
        long origin = qw_state_origin(state.get());

        double max_dev = 0.0;
        for (long j = -t; j <= t; ++j) {
            qw_complex fa{}, fb{};
            qw_status st = qw_hadamard_amplitude_fourier(j, t, tolerance, &fa, &fb);
            if (st == QW_ERR_NO_CONVERGENCE)
                die(4, std::string("quadrature convergence failure: ") + qw_last_error());
            check(st, "fourier amplitude");
            long k = j - origin;
            qw_complex ma{}, mb{};
            if (k >= 0 && k < static_cast<long>(n)) {
                ma = a[k];
                mb = b[k];
            }
            max_dev = std::max(max_dev, std::hypot(fa.re - ma.re, fa.im - ma.im));
            max_dev = std::max(max_dev, std::hypot(fb.re - mb.re, fb.im - mb.im));
        }
        std::printf("t=%ld max_deviation=%.3e\n", t, max_dev);
        worst = std::max(worst, max_dev);
        if (t < t_max) {
            qw_state* next = nullptr;
            check(qw_state_step(state.get(), coin.get(), &next), "step");
            state.reset(next);
        }
    }
    std::printf("overall max deviation: %.3e (%s 1e-6)\n", worst,
                worst < 1e-6 ? "<" : ">=");
    return worst < 1e-6 ? 0 : 1;
}

void run_sweep(const RunConfig& base, const std::string& range_spec) {
    double lo = 0.0, hi = 0.0;
    int count = 0;
    if (std::sscanf(range_spec.c_str(), "%lf:%lf:%d", &lo, &hi, &count) != 3 ||
        count < 1)
        die(2, "sweep range must be given as a:b:n with n >= 1");

    std::vector<RunConfig> configs;
    for (int i = 0; i < count; ++i) {
        double theta = (count == 1)
                           ? lo
                           : lo + (hi - lo) * static_cast<double>(i) /
                                     static_cast<double>(count - 1);
        RunConfig cfg = base;
        cfg.theta = theta;
        cfg.rotor.reset();
        char sub[48];
        std::snprintf(sub, sizeof sub, "theta_%.6f", theta);
        cfg.out_dir = (fs::path(base.out_dir) / sub).string();
        validate_config(cfg, false);
        configs.push_back(cfg);
    }

    std::atomic<size_t> cursor{0};
    std::atomic<bool> failed{false};
    std::string first_error;
    std::mutex error_mutex;
    unsigned n_workers = std::min<unsigned>(
        std::max(1u, std::thread::hardware_concurrency()),
        static_cast<unsigned>(configs.size()));
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < n_workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                size_t i = cursor.fetch_add(1);
                if (i >= configs.size() || failed.load()) return;
                try {
                    run_evolve("sweep", configs[i]);
                } catch (const CliError& e) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!failed.exchange(true)) first_error = e.message;
                    return;
                }
            }
        });
    }
    for (std::thread& th : pool) th.join();
    if (failed.load()) die(2, "sweep run failed: " + first_error);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"discrete-time quantum walk on the line: simulation harness"};
    app.require_subcommand(1);

    // Options shared by run-style subcommands.
    std::string config_path;
    double theta = 0.0;
    double rotor_k = 0.0;
    int rotor_p = 0;
    long steps = 0;
    std::string mode;
    std::vector<double> initial_raw;
    std::string fit_spec;
    std::vector<std::string> emit;
    std::string out_dir;
    bool dump_config = false;

    auto add_run_options = [&](CLI::App* cmd, bool with_mode) {
        cmd->add_option("--config", config_path, "JSON config file; flags override");
        cmd->add_option("--theta", theta, "coin angle in radians, [0, pi/2]");
        cmd->add_option("--K", rotor_k, "kicked-rotor strength parameter");
        cmd->add_option("--p", rotor_p, "kicked-rotor resonance order (positive integer)");
        cmd->add_option("--steps", steps, "number of time steps (>= 1)");
        if (with_mode)
            cmd->add_option("--mode", mode, "unitary|markov|twostep (default unitary)");
        cmd->add_option("--initial", initial_raw,
                        "initial condition site,aL_re,aL_im,aR_re,aR_im")
            ->delimiter(',')
            ->expected(5);
        cmd->add_option("--fit", fit_spec, "fit window tmin:tmax");
        cmd->add_option("--emit", emit,
                        "outputs: moments,distribution,interference")
            ->delimiter(',');
        cmd->add_option("--out", out_dir, "output directory");
        cmd->add_flag("--dump-config", dump_config,
                      "print the effective config as JSON and exit");
    };

    CLI::App* cmd_evolve = app.add_subcommand("evolve", "run one evolution and write CSV outputs");
    add_run_options(cmd_evolve, true);
    CLI::App* cmd_rotor = app.add_subcommand("rotor", "map kicked-rotor parameters to a walk and run it");
    add_run_options(cmd_rotor, false);
    CLI::App* cmd_fig1 = app.add_subcommand("figure1", "fractional convergence of the interference sums");
    add_run_options(cmd_fig1, false);
    CLI::App* cmd_fig2 = app.add_subcommand("figure2", "exact vs Bessel-approximation variance (Hadamard)");
    add_run_options(cmd_fig2, false);
    CLI::App* cmd_bessel = app.add_subcommand("bessel-check", "figure2 machinery at arbitrary theta");
    add_run_options(cmd_bessel, false);

    CLI::App* cmd_fourier = app.add_subcommand("fourier-check", "quadrature amplitudes vs the exact map");
    long fourier_tmax = 50;
    long fourier_guard = 200;
    double fourier_tol = 1e-9;
    cmd_fourier->add_option("--tmax", fourier_tmax, "check all |j| <= t <= tmax");
    cmd_fourier->add_option("--guard", fourier_guard, "cost guard on tmax (default 200)");
    cmd_fourier->add_option("--tol", fourier_tol, "quadrature refinement tolerance");

    CLI::App* cmd_sweep = app.add_subcommand("sweep", "run several theta values concurrently");
    std::string sweep_range;
    add_run_options(cmd_sweep, true);
    cmd_sweep->add_option("--theta-range", sweep_range, "theta sweep a:b:n")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        CLI::App* active = app.get_subcommands().front();

        if (active == cmd_fourier)
            return run_fourier_check(fourier_tmax, fourier_guard, fourier_tol);

        auto given = [&](const std::string& name) {
            const CLI::Option* opt = active->get_option_no_throw(name);
            return opt != nullptr && opt->count() > 0;
        };

        RunConfig cfg;
        if (!config_path.empty()) cfg = load_config_file(config_path);
        if (given("--theta")) cfg.theta = theta;
        if (given("--K") || given("--p")) {
            RotorParams r;
            if (cfg.rotor) r = *cfg.rotor;
            if (given("--K")) r.strength = rotor_k;
            if (given("--p")) r.resonance_order = rotor_p;
            cfg.rotor = r;
        }
        if (given("--theta") && cfg.rotor && !given("--K") && !given("--p"))
            cfg.rotor.reset(); // flag overrides a rotor pair from the config file
        if (given("--steps")) cfg.steps = steps;
        if (given("--mode")) cfg.mode = mode;
        if (given("--initial")) {
            cfg.initial.site = static_cast<long>(initial_raw[0]);
            cfg.initial.left_re = initial_raw[1];
            cfg.initial.left_im = initial_raw[2];
            cfg.initial.right_re = initial_raw[3];
            cfg.initial.right_im = initial_raw[4];
        }
        if (given("--fit")) {
            long lo = 0, hi = 0;
            if (std::sscanf(fit_spec.c_str(), "%ld:%ld", &lo, &hi) != 2)
                die(2, "fit window must be given as tmin:tmax");
            cfg.fit_window = {lo, hi};
        }
        if (given("--emit")) cfg.emit = emit;
        if (given("--out")) cfg.out_dir = out_dir;

        // Subcommand defaults.
        if (active == cmd_fig1 || active == cmd_fig2 || active == cmd_bessel) {
            if (cfg.steps == 0) cfg.steps = 1000;
            if (!cfg.theta && !cfg.rotor) cfg.theta = kPi / 4.0;
            cfg.mode = "unitary";
        }
        if (active == cmd_fig2 && cfg.theta &&
            std::abs(*cfg.theta - kPi / 4.0) > 1e-12)
            die(2, "figure2 reproduces the Hadamard comparison; use bessel-check "
                   "for other angles");
        if (active == cmd_rotor) cfg.mode = "unitary";

        if (dump_config) {
            std::cout << config_to_json(cfg).dump(2) << "\n";
            return 0;
        }

        if (active == cmd_evolve) {
            validate_config(cfg, false);
            run_evolve("evolve", cfg);
        } else if (active == cmd_rotor) {
            validate_config(cfg, true);
            run_evolve("rotor", cfg);
        } else if (active == cmd_fig1) {
            run_figure1(cfg);
        } else if (active == cmd_fig2) {
            run_figure2("figure2", cfg);
        } else if (active == cmd_bessel) {
            run_figure2("bessel-check", cfg);
        } else if (active == cmd_sweep) {
            if (cfg.steps == 0) die(2, "sweep requires --steps");
            run_sweep(cfg, sweep_range);
        }
        return 0;
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
