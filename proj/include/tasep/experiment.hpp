#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "tasep/common.hpp"
#include "tasep/fredholm.hpp"
#include "tasep/io.hpp"
#include "tasep/lpp.hpp"
#include "tasep/particle_system.hpp"
#include "tasep/scaling.hpp"
#include "tasep/simulate.hpp"
#include "tasep/statistics.hpp"

namespace tasep {

using Json = nlohmann::ordered_json;

/// One rescaling experiment: simulate an initial profile to time t across
/// independent runs, extract the tracked particles for each u, rescale, and
/// compare against the corresponding limit law when a KS threshold is set.
struct ExperimentConfig {
    std::string name = "custom";
    std::string ic = "step";              // step | alternating | periodic
    int d = 2;                            // periodic spacing
    std::string dynamics = "continuous";  // continuous | sequential
    double p = 0.5;                       // discrete jump probability
    double t = 1000.0;                    // time (continuous) or step count
    std::size_t runs = 1000;
    std::uint64_t seed = 1;
    std::vector<double> u_points{0.0};
    double window = 20.0;                 // reference-law integration window
    int nodes = 96;                       // reference-law quadrature nodes
    double theta = std::numeric_limits<double>::quiet_NaN();
    double ks_threshold = std::numeric_limits<double>::quiet_NaN();
    std::string out_dir = "artifacts";
};

inline std::string canonical_config(const ExperimentConfig& c) {
    std::string s;
    s += "name=" + c.name + "\n";
    s += "ic=" + c.ic + "\n";
    s += "d=" + num(c.d) + "\n";
    s += "dynamics=" + c.dynamics + "\n";
    s += "p=" + num(c.p) + "\n";
    s += "t=" + num(c.t) + "\n";
    s += "runs=" + num(c.runs) + "\n";
    s += "seed=" + num(c.seed) + "\n";
    s += "u=";
    for (std::size_t i = 0; i < c.u_points.size(); ++i)
        s += (i ? "," : "") + num(c.u_points[i]);
    s += "\n";
    s += "window=" + num(c.window) + "\n";
    s += "nodes=" + num(c.nodes) + "\n";
    s += "theta=" + num(c.theta) + "\n";
    s += "ks_threshold=" + num(c.ks_threshold) + "\n";
    return s;
}

inline std::uint64_t config_hash(const ExperimentConfig& c) {
    return fnv1a(canonical_config(c));
}

struct ExperimentOutcome {
    bool passed = true;
    Json summary;
    // Data files (relative to out_dir) covered by the byte-identity contract;
    // summary.json is excluded because it carries timings.
    std::vector<std::string> data_files;
};

namespace detail {

inline void provenance(Csv& csv, const std::string& experiment,
                       std::uint64_t hash, std::uint64_t seed) {
    csv.add_meta("version", kVersion);
    csv.add_meta("experiment", experiment);
    csv.add_meta("config", hex64(hash));
    csv.add_meta("seed", num(seed));
}

inline void write_artifact(ExperimentOutcome& out, const std::string& out_dir,
                           const std::string& name, const Csv& csv) {
    write_text_file(out_dir + "/" + name, csv.to_string());
    out.data_files.push_back(name);
}

inline double elapsed_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Sites of padding ahead of the leftmost tracked index for two-sided
// profiles; the step profile is exact without padding.
inline long long padding_sites(double t) {
    return static_cast<long long>(std::ceil(3.0 * t + 10.0 * std::sqrt(t)));
}

ExperimentOutcome analyze_experiment(const ExperimentConfig& c,
                                     const std::vector<long long>& index,
                                     const std::vector<std::vector<long long>>& x_by_u,
                                     std::pair<long long, long long> label_range,
                                     double sim_seconds,
                                     std::chrono::steady_clock::time_point t0);

inline void validate_config(const ExperimentConfig& c) {
    require(c.ic == "step" || c.ic == "alternating" || c.ic == "periodic",
            "experiment: unknown initial profile");
    bool discrete = c.ic == "periodic";
    require(!discrete || c.dynamics == "sequential",
            "experiment: periodic experiments use the sequential update");
    require(discrete || c.dynamics == "continuous",
            "experiment: step and alternating experiments are continuous-time");
    require(c.t > 0.0, "experiment: need positive time");
    require(!discrete || std::floor(c.t) == c.t,
            "experiment: discrete time must be a whole number of steps");
    require(c.runs >= 100, "experiment: need at least 100 runs");
    require(c.seed != 0, "experiment: seed is mandatory");
    require(!c.u_points.empty(), "experiment: no u-points");
    if (discrete) {
        require(c.d >= 2, "experiment: periodic spacing must be at least 2");
        require(c.p > 0.0 && c.p < 1.0, "experiment: p must be in (0,1)");
    }
}

/// Tracked particle index for one u-point under the profile's index map.
inline long long experiment_index(const ExperimentConfig& c, double u) {
    return c.ic == "step"          ? step_index(u, c.t)
           : c.ic == "alternating" ? alternating_index(u, c.t)
                                   : periodic_index(c.d, c.p, u, c.t);
}

}  // namespace detail

/// Run a rescaling experiment.  Artifacts: samples.csv (one row per run and
/// u), ecdf_u<i>.csv per u, reference.csv and KS checks when a threshold is
/// configured, gtable.csv when u = 0 is paired with other u-points, and
/// summary.json.
inline ExperimentOutcome run_experiment(const ExperimentConfig& c) {
    detail::validate_config(c);
    bool discrete = c.ic == "periodic";

    auto t0 = std::chrono::steady_clock::now();
    std::size_t nu = c.u_points.size();
    std::vector<long long> index(nu);
    for (std::size_t i = 0; i < nu; ++i) index[i] = detail::experiment_index(c, c.u_points[i]);
    long long n_min = index[0], n_max = index[0];
    for (long long n : index) {
        n_min = std::min(n_min, n);
        n_max = std::max(n_max, n);
    }

    ParticleSystem init = [&]() {
        if (c.ic == "step") {
            require(n_min >= 1, "run_experiment: tracked index outside the step profile");
            return make_step(n_max);
        }
        long long spacing = c.ic == "alternating" ? 2 : c.d;
        long long pad = (detail::padding_sites(c.t) + spacing - 1) / spacing;
        if (c.ic == "alternating") return make_alternating(n_min - pad, n_max);
        return make_periodic(c.d, n_min - pad, n_max);
    }();

    std::vector<std::vector<long long>> x_by_u(nu, std::vector<long long>(c.runs));
    long long steps = static_cast<long long>(c.t);
    run_replicas(c.runs, c.seed, [&](std::size_t r, Rng& rng) {
        SimulationResult res;
        if (discrete)
            res = simulate_discrete(init, c.p, UpdateRule::sequential, {steps}, rng);
        else
            res = simulate_continuous(init, {c.t}, rng);
        const std::vector<long long>& snap = res.snapshots[0];
        for (std::size_t i = 0; i < nu; ++i)
            x_by_u[i][r] = snap[static_cast<std::size_t>(index[i] - init.label_min())];
    });
    double sim_seconds = detail::elapsed_since(t0);

    return detail::analyze_experiment(c, index, x_by_u,
                                      {init.label_min(), init.label_max()},
                                      sim_seconds, t0);
}

namespace detail {

/// Shared analysis stage: rescales raw positions into fluctuation
/// coordinates, writes samples.csv / ecdf tables / reference table /
/// gtable.csv / summary.json, and applies the KS gate when enabled.
inline ExperimentOutcome analyze_experiment(const ExperimentConfig& c,
                                            const std::vector<long long>& index,
                                            const std::vector<std::vector<long long>>& x_by_u,
                                            std::pair<long long, long long> label_range,
                                            double sim_seconds,
                                            std::chrono::steady_clock::time_point t0) {
    std::uint64_t hash = config_hash(c);
    std::filesystem::create_directories(c.out_dir);

    std::size_t nu = c.u_points.size();
    std::vector<std::vector<double>> s_by_u(nu, std::vector<double>(c.runs));
    for (std::size_t i = 0; i < nu; ++i)
        for (std::size_t r = 0; r < c.runs; ++r) {
            long long x = x_by_u[i][r];
            s_by_u[i][r] = c.ic == "step" ? rescale_step(x, c.u_points[i], c.t)
                           : c.ic == "alternating"
                               ? rescale_alternating(x, c.u_points[i], c.t)
                               : rescale_periodic(x, index[i], c.d, c.p, c.t);
        }

    ExperimentOutcome out;
    Csv samples;
    detail::provenance(samples, c.name, hash, c.seed);
    samples.add_meta("ic", c.ic);
    samples.add_meta("dynamics", c.dynamics);
    samples.add_meta("t", num(c.t));
    samples.add_meta("runs", num(c.runs));
    samples.columns = {"run", "u", "n", "x", "s"};
    for (std::size_t r = 0; r < c.runs; ++r)
        for (std::size_t i = 0; i < nu; ++i)
            samples.rows.push_back({num(static_cast<long long>(r)), num(c.u_points[i]),
                                    num(index[i]), num(x_by_u[i][r]), num(s_by_u[i][r])});
    detail::write_artifact(out, c.out_dir, "samples.csv", samples);

    Json per_u = Json::array();
    bool ks_enabled = std::isfinite(c.ks_threshold);
    FredholmOptions opts{c.window, c.nodes, c.theta};
    LimitProcess process =
        c.ic == "step" ? LimitProcess::airy2 : LimitProcess::airy1;

    double table_seconds = 0.0;
    if (ks_enabled) {
        auto tt = std::chrono::steady_clock::now();
        TabulatedCdf table = tabulate_cdf(process, -6.0, 6.0, 241, opts);
        JointResult probe = joint_law({process, {{0.0, 0.0}}, opts});
        table_seconds = detail::elapsed_since(tt);

        Csv ref;
        detail::provenance(ref, c.name, hash, c.seed);
        ref.add_meta("kernel", process == LimitProcess::airy2 ? "airy2" : "airy1-scaled");
        ref.add_meta("window", num(c.window));
        ref.add_meta("nodes", num(c.nodes));
        ref.add_meta("theta", num(detail::resolve_theta({process, {{0.0, 0.0}}, opts})));
        ref.add_meta("error_estimate", num(probe.error_estimate));
        ref.columns = {"s", "F"};
        for (std::size_t i = 0; i < table.abscissae().size(); ++i)
            ref.rows.push_back({num(table.abscissae()[i]), num(table.values()[i])});
        detail::write_artifact(out, c.out_dir, "reference.csv", ref);

        for (std::size_t i = 0; i < nu; ++i) {
            Ecdf ecdf(s_by_u[i]);
            double ks = ks_statistic(ecdf, [&](double s) { return table(s); });
            bool ok = ks <= c.ks_threshold;
            out.passed = out.passed && ok;
            per_u.push_back({{"u", c.u_points[i]},
                             {"n", index[i]},
                             {"mean_s", sample_mean(s_by_u[i])},
                             {"var_s", sample_variance(s_by_u[i])},
                             {"ks", ks},
                             {"ks_threshold", c.ks_threshold},
                             {"ks_ok", ok}});
        }
    } else {
        for (std::size_t i = 0; i < nu; ++i)
            per_u.push_back({{"u", c.u_points[i]},
                             {"n", index[i]},
                             {"mean_s", sample_mean(s_by_u[i])},
                             {"var_s", sample_variance(s_by_u[i])}});
    }

    for (std::size_t i = 0; i < nu; ++i) {
        Ecdf ecdf(s_by_u[i]);
        Csv e;
        detail::provenance(e, c.name, hash, c.seed);
        e.add_meta("u", num(c.u_points[i]));
        e.columns = {"s", "F"};
        const auto& xs = ecdf.sorted();
        for (std::size_t k = 0; k < xs.size(); ++k)
            e.rows.push_back({num(xs[k]), num(static_cast<double>(k + 1) /
                                              static_cast<double>(xs.size()))});
        detail::write_artifact(out, c.out_dir, "ecdf_u" + num(static_cast<int>(i)) + ".csv", e);
    }

    // Paired-difference variance against u = 0 (common random numbers).
    Json gtable = Json::array();
    if (nu > 1 && c.u_points[0] == 0.0) {
        Csv g;
        detail::provenance(g, c.name, hash, c.seed);
        g.columns = {"u", "g_emp", "stderr"};
        for (std::size_t i = 1; i < nu; ++i) {
            double ge = variance_g(s_by_u[i], s_by_u[0]);
            double se = ge * std::sqrt(2.0 / static_cast<double>(c.runs - 1));
            g.rows.push_back({num(c.u_points[i]), num(ge), num(se)});
            gtable.push_back({{"u", c.u_points[i]}, {"g_emp", ge}, {"stderr", se}});
        }
        detail::write_artifact(out, c.out_dir, "gtable.csv", g);
    }

    // Mean displacement diagnostics: per-u mean of x_n(t) and the measured
    // speed of the tracked particle relative to its start.
    Json speeds = Json::array();
    for (std::size_t i = 0; i < nu; ++i) {
        double mean_x = 0.0;
        for (long long x : x_by_u[i]) mean_x += static_cast<double>(x);
        mean_x /= static_cast<double>(c.runs);
        long long spacing = c.ic == "step" ? 1 : c.ic == "alternating" ? 2 : c.d;
        double x0 = static_cast<double>(-spacing * index[i]);
        speeds.push_back({{"u", c.u_points[i]},
                          {"mean_x", mean_x},
                          {"mean_x_over_t", mean_x / c.t},
                          {"measured_speed", (mean_x - x0) / c.t}});
    }

    out.summary["version"] = kVersion;
    out.summary["experiment"] = c.name;
    out.summary["config"] = hex64(hash);
    out.summary["seed"] = c.seed;
    out.summary["ic"] = c.ic;
    out.summary["dynamics"] = c.dynamics;
    out.summary["t"] = c.t;
    out.summary["runs"] = c.runs;
    out.summary["label_range"] = {label_range.first, label_range.second};
    out.summary["per_u"] = per_u;
    out.summary["g"] = gtable;
    out.summary["displacement"] = speeds;
    out.summary["passed"] = out.passed;
    out.summary["timing_seconds"] = {{"simulation", sim_seconds},
                                     {"reference_table", table_seconds},
                                     {"total", detail::elapsed_since(t0)}};
    write_text_file(c.out_dir + "/summary.json", out.summary.dump(2) + "\n");
    return out;
}

}  // namespace detail

/// Step-profile density relaxation toward the rarefaction fan: averages
/// per-bin occupation fractions over runs and reports the L1 distance to the
/// exact profile.  Artifacts: density.csv, summary.json.
inline ExperimentOutcome run_rost_profile(const std::string& out_dir,
                                          std::uint64_t seed, double t = 1000.0,
                                          std::size_t runs = 200, int bins = 30,
                                          double threshold = 0.02) {
    require(seed != 0, "run_rost_profile: seed is mandatory");
    require(t > 0.0 && runs >= 1 && bins >= 1, "run_rost_profile: bad parameters");
    auto t0 = std::chrono::steady_clock::now();
    std::filesystem::create_directories(out_dir);
    double xi_lo = -1.5, xi_hi = 1.5;
    long long max_label = static_cast<long long>(std::ceil(1.7 * t));

    std::vector<std::vector<double>> prof(runs);
    run_replicas(runs, seed, [&](std::size_t r, Rng& rng) {
        auto init = make_step(max_label);
        auto res = simulate_continuous(init, {t}, rng);
        prof[r] = empirical_density(res.snapshots[0], t, xi_lo, xi_hi, bins);
    });
    std::vector<double> mean(static_cast<std::size_t>(bins), 0.0);
    for (const auto& pr : prof)
        for (int k = 0; k < bins; ++k)
            mean[static_cast<std::size_t>(k)] += pr[static_cast<std::size_t>(k)] / static_cast<double>(runs);
    double l1 = l1_distance_binned(mean, xi_lo, xi_hi, rost_density_mean);

    ExperimentConfig stamp;  // provenance stamp for the hash only
    stamp.name = "rost-profile";
    stamp.t = t;
    stamp.runs = runs;
    stamp.seed = seed;
    std::uint64_t hash = config_hash(stamp);

    ExperimentOutcome out;
    Csv csv;
    detail::provenance(csv, "rost-profile", hash, seed);
    csv.add_meta("t", num(t));
    csv.add_meta("runs", num(runs));
    csv.add_meta("bins", num(bins));
    csv.columns = {"xi", "density", "exact"};
    double w = (xi_hi - xi_lo) / bins;
    for (int k = 0; k < bins; ++k) {
        double a = xi_lo + k * w;
        csv.rows.push_back({num(a + w / 2.0), num(mean[static_cast<std::size_t>(k)]),
                            num(rost_density_mean(a, a + w))});
    }
    detail::write_artifact(out, out_dir, "density.csv", csv);

    out.passed = l1 <= threshold;
    out.summary["version"] = kVersion;
    out.summary["experiment"] = "rost-profile";
    out.summary["config"] = hex64(hash);
    out.summary["seed"] = seed;
    out.summary["t"] = t;
    out.summary["runs"] = runs;
    out.summary["bins"] = bins;
    out.summary["l1_distance"] = l1;
    out.summary["threshold"] = threshold;
    out.summary["passed"] = out.passed;
    out.summary["timing_seconds"] = {{"total", detail::elapsed_since(t0)}};
    write_text_file(out_dir + "/summary.json", out.summary.dump(2) + "\n");
    return out;
}

/// Exact equality between the passage-time recursion and the event-driven
/// particle simulation across independently seeded grids.  Artifacts:
/// grid.bin and grid.csv (first grid), border.csv, summary.json.
inline ExperimentOutcome run_lpp_equivalence(const std::string& out_dir,
                                             std::uint64_t seed, int M = 20,
                                             int N = 20, int grids = 100) {
    require(seed != 0, "run_lpp_equivalence: seed is mandatory");
    require(M >= 1 && N >= 1 && grids >= 1, "run_lpp_equivalence: bad parameters");
    auto t0 = std::chrono::steady_clock::now();
    std::filesystem::create_directories(out_dir);

    int equal = 0;
    std::vector<double> first;
    for (int i = 0; i < grids; ++i) {
        std::uint64_t grid_seed = derive_seed(seed, static_cast<std::uint64_t>(i));
        auto g = lpp_times(M, N, grid_seed);
        auto p = tasep_passage_times(M, N, grid_seed);
        if (g == p) ++equal;
        if (i == 0) first = std::move(g);
    }
    bool all_equal = equal == grids;

    ExperimentConfig stamp;
    stamp.name = "lpp-equivalence";
    stamp.runs = static_cast<std::size_t>(grids);
    stamp.seed = seed;
    std::uint64_t hash = config_hash(stamp);
    std::uint64_t first_seed = derive_seed(seed, 0);

    ExperimentOutcome out;
    write_grid_binary(out_dir + "/grid.bin", M, N, first_seed, first);
    out.data_files.push_back("grid.bin");

    Csv gcsv;
    detail::provenance(gcsv, "lpp-equivalence", hash, seed);
    gcsv.add_meta("M", num(M));
    gcsv.add_meta("N", num(N));
    gcsv.add_meta("grid_seed", num(first_seed));
    gcsv.columns = {"m", "n", "G"};
    for (int m = 1; m <= M; ++m)
        for (int n = 1; n <= N; ++n)
            gcsv.rows.push_back({num(m), num(n),
                                 num(first[static_cast<std::size_t>(m - 1) * N + (n - 1)])});
    detail::write_artifact(out, out_dir, "grid.csv", gcsv);

    double corner = first[static_cast<std::size_t>(M - 1) * N + (N - 1)];
    Csv bcsv;
    detail::provenance(bcsv, "lpp-equivalence", hash, seed);
    bcsv.add_meta("grid_seed", num(first_seed));
    bcsv.columns = {"t", "n", "m"};
    for (double frac : {0.25, 0.5, 0.75}) {
        double tcut = frac * corner;
        auto border = border_set(first, M, N, tcut);
        for (int n = 1; n <= N; ++n)
            bcsv.rows.push_back({num(tcut), num(n), num(border[static_cast<std::size_t>(n - 1)])});
    }
    detail::write_artifact(out, out_dir, "border.csv", bcsv);

    out.passed = all_equal;
    out.summary["version"] = kVersion;
    out.summary["experiment"] = "lpp-equivalence";
    out.summary["config"] = hex64(hash);
    out.summary["seed"] = seed;
    out.summary["M"] = M;
    out.summary["N"] = N;
    out.summary["grids"] = grids;
    out.summary["equal_grids"] = equal;
    out.summary["passed"] = all_equal;
    out.summary["timing_seconds"] = {{"total", detail::elapsed_since(t0)}};
    write_text_file(out_dir + "/summary.json", out.summary.dump(2) + "\n");
    return out;
}

/// Tabulate one of the reference functions as a CSV: the curved-profile law
/// (f2), the flat-profile law in its scaled form (f1scaled), an equal-time
/// kernel diagonal (kernel-slice), or the rarefaction density (rost).
inline Csv emit_table(const std::string& kind, double lo, double hi, int points,
                      const FredholmOptions& opts = {}) {
    require(points >= 2 && hi > lo, "emit_table: bad grid");
    Csv csv;
    csv.add_meta("version", kVersion);
    csv.add_meta("kind", kind);
    auto grid = [&](int i) { return lo + (hi - lo) * i / (points - 1); };
    if (kind == "f2" || kind == "f1scaled") {
        LimitProcess process =
            kind == "f2" ? LimitProcess::airy2 : LimitProcess::airy1;
        csv.add_meta("kernel", kind == "f2" ? "airy2" : "airy1-scaled");
        csv.add_meta("window", num(opts.window));
        csv.add_meta("nodes", num(opts.nodes));
        csv.add_meta("theta", num(detail::resolve_theta({process, {{0.0, 0.0}}, opts})));
        JointResult probe = joint_law({process, {{0.0, 0.0}}, opts});
        csv.add_meta("error_estimate", num(probe.error_estimate));
        csv.columns = {"s", "F"};
        for (int i = 0; i < points; ++i) {
            double s = grid(i);
            double f = process == LimitProcess::airy2 ? f2_point(s, opts)
                                                      : f1_scaled_point(s, opts);
            csv.rows.push_back({num(s), num(f)});
        }
        return csv;
    }
    if (kind == "kernel-slice") {
        csv.add_meta("kernel", "airy2");
        csv.add_meta("u", num(0.0));
        csv.columns = {"s", "K"};
        for (int i = 0; i < points; ++i) {
            double s = grid(i);
            csv.rows.push_back({num(s), num(a2_eval(s, s))});
        }
        return csv;
    }
    if (kind == "rost") {
        csv.columns = {"xi", "density"};
        for (int i = 0; i < points; ++i) {
            double xi = grid(i);
            csv.rows.push_back({num(xi), num(rost_density(xi))});
        }
        return csv;
    }
    throw std::invalid_argument("emit_table: unknown kind");
}

inline std::vector<std::string> preset_names() {
    return {"step-airy2-onepoint", "alternating-airy1-onepoint",
            "periodic-airy1-onepoint", "covariance-slope", "rost-profile",
            "lpp-equivalence"};
}

/// Run a named preset.  seed/runs/t are overridable (0 keeps the preset
/// default); the defaults are the acceptance-scale configurations.
inline ExperimentOutcome run_preset(const std::string& name,
                                    const std::string& out_dir,
                                    std::uint64_t seed = 0,
                                    std::size_t runs = 0, double t = 0.0) {
    if (name == "rost-profile")
        return run_rost_profile(out_dir, seed ? seed : 505, t > 0.0 ? t : 1000.0,
                                runs ? runs : 200);
    if (name == "lpp-equivalence")
        return run_lpp_equivalence(out_dir, seed ? seed : 606, 20, 20,
                                   runs ? static_cast<int>(runs) : 100);

    ExperimentConfig c;
    c.name = name;
    c.out_dir = out_dir;
    c.t = t > 0.0 ? t : 1000.0;
    if (name == "step-airy2-onepoint") {
        c.ic = "step";
        c.runs = runs ? runs : 5000;
        c.seed = seed ? seed : 101;
        c.ks_threshold = 0.05;
    } else if (name == "alternating-airy1-onepoint") {
        c.ic = "alternating";
        c.runs = runs ? runs : 5000;
        c.seed = seed ? seed : 202;
        c.ks_threshold = 0.05;
    } else if (name == "periodic-airy1-onepoint") {
        c.ic = "periodic";
        c.dynamics = "sequential";
        c.d = 2;
        c.p = 0.5;
        c.runs = runs ? runs : 5000;
        c.seed = seed ? seed : 303;
        c.ks_threshold = 0.06;
    } else if (name == "covariance-slope") {
        c.ic = "step";
        c.runs = runs ? runs : 10000;
        c.seed = seed ? seed : 404;
        c.u_points = {0.0, 0.25, 1.0, 2.0, 4.0};
    } else {
        throw std::invalid_argument("run_preset: unknown preset");
    }

    ExperimentOutcome out = run_experiment(c);

    if (name == "step-airy2-onepoint") {
        // Macroscopic consistency: particle [t/4] sits at o(t) for the wedge.
        double ratio = out.summary["displacement"][0]["mean_x_over_t"].get<double>();
        bool ok = std::fabs(ratio) <= 0.02;
        out.summary["macroscopic"] = {{"mean_x_over_t", ratio}, {"band", 0.02}, {"ok", ok}};
        out.passed = out.passed && ok;
    } else if (name == "covariance-slope") {
        // Small-u linear growth of the two-point variance: g(u)/(2u) near 1
        // at u = 0.25.  The saturation value and monotonicity are logged as
        // diagnostics, not gates.
        double g025 = out.summary["g"][0]["g_emp"].get<double>();
        double ratio = g025 / 0.5;
        bool ok = ratio >= 0.85 && ratio <= 1.15;
        out.summary["slope"] = {{"g_emp_025", g025}, {"ratio", ratio},
                                {"band", {0.85, 1.15}}, {"ok", ok}};
        double g4 = out.summary["g"].back()["g_emp"].get<double>();
        out.summary["saturation"] = {{"g_emp_4", g4},
                                     {"g_infinity", 1.6264},
                                     {"deviation", std::fabs(g4 - 1.6264)}};
        bool monotone = true;
        const auto& gt = out.summary["g"];
        for (std::size_t i = 1; i < gt.size(); ++i) {
            double prev = gt[i - 1]["g_emp"].get<double>();
            double cur = gt[i]["g_emp"].get<double>();
            double se = gt[i]["stderr"].get<double>();
            if (cur < prev - 3.0 * se) monotone = false;
        }
        out.summary["monotone_within_errors"] = monotone;
        out.passed = ok;
    }
    out.summary["passed"] = out.passed;
    write_text_file(out_dir + "/summary.json", out.summary.dump(2) + "\n");
    return out;
}

}  // namespace tasep
