// tasep_lab: command line front end for the TASEP scaling laboratory.
//
//   simulate   dump raw trajectories for any initial profile and update rule
//   analyze    rescale a trajectory dump and test it against a limit law
//   fredholm   tabulate limit distributions, kernel slices, and the fan profile
//   lpp        last-passage grids and the passage-time equivalence check
//   preset     canned experiments at acceptance scale
//
// Every subcommand accepts --config <file> with key=value lines (sections
// named after the subcommand); command line flags override file values.
// Exit status is 0 exactly when every enabled check passed.

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "tasep/experiment.hpp"

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct SimulateArgs {
    std::string ic = "step";
    long long max_label = 50;
    long long label_min = -50;
    long long label_max = 50;
    int d = 2;
    double density = 0.5;
    long long site_lo = -200;
    long long site_hi = 50;
    long long ref_site = -1;
    std::string dynamics = "continuous";
    double p = 0.5;
    std::vector<double> times;
    std::vector<long long> steps;
    std::size_t runs = 10;
    std::uint64_t seed = 1;
    std::string out = "artifacts/simulate";
};

std::string join_num(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + tasep::num(v[i]);
    return s;
}

std::string join_num(const std::vector<long long>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + tasep::num(v[i]);
    return s;
}

int run_simulate(const SimulateArgs& a) {
    using namespace tasep;
    bool discrete = a.dynamics != "continuous";
    require(a.seed != 0, "simulate: seed is mandatory");
    require(a.runs >= 1, "simulate: need at least one run");
    require(!discrete || a.times.empty(), "simulate: discrete updates sample with --steps");
    require(discrete || a.steps.empty(), "simulate: continuous dynamics samples with --times");

    std::vector<double> times = a.times;
    std::vector<long long> steps = a.steps;
    if (!discrete && times.empty()) times = {10.0};
    if (discrete && steps.empty()) steps = {10};

    bool bernoulli = a.ic == "bernoulli";
    ParticleSystem init = [&]() {
        if (a.ic == "step") return make_step(a.max_label);
        if (a.ic == "alternating") return make_alternating(a.label_min, a.label_max);
        if (a.ic == "periodic") return make_periodic(a.d, a.label_min, a.label_max);
        require(bernoulli, "simulate: unknown initial profile");
        // Placeholder shape only; the real draw happens per run below.
        return make_bernoulli(a.density, a.site_lo, a.site_hi, 1, a.ref_site);
    }();

    std::string canonical = "command=simulate\nic=" + a.ic;
    if (a.ic == "step") canonical += "\nmax_label=" + num(a.max_label);
    if (a.ic == "alternating" || a.ic == "periodic")
        canonical += "\nlabel_min=" + num(a.label_min) + "\nlabel_max=" + num(a.label_max);
    if (a.ic == "periodic") canonical += "\nd=" + num(a.d);
    if (bernoulli)
        canonical += "\ndensity=" + num(a.density) + "\nsite_lo=" + num(a.site_lo) +
                     "\nsite_hi=" + num(a.site_hi) + "\nref_site=" + num(a.ref_site);
    canonical += "\ndynamics=" + a.dynamics;
    if (discrete) canonical += "\np=" + num(a.p);
    canonical += discrete ? "\nsteps=" + join_num(steps) : "\ntimes=" + join_num(times);
    canonical += "\nruns=" + num(static_cast<long long>(a.runs)) + "\nseed=" + num(a.seed);
    std::uint64_t hash = fnv1a(canonical);

    UpdateRule rule = a.dynamics == "parallel" ? UpdateRule::parallel : UpdateRule::sequential;
    struct RunDump {
        long long label_min = 0;
        std::vector<std::vector<long long>> snaps;
    };
    std::vector<RunDump> dumps(a.runs);
    run_replicas(a.runs, a.seed, [&](std::size_t r, Rng& rng) {
        ParticleSystem start =
            bernoulli ? make_bernoulli(a.density, a.site_lo, a.site_hi, rng.raw(), a.ref_site)
                      : init;
        SimulationResult res = discrete ? simulate_discrete(start, a.p, rule, steps, rng)
                                        : simulate_continuous(start, times, rng);
        dumps[r] = {start.label_min(), std::move(res.snapshots)};
    });

    Csv traj;
    traj.add_meta("version", kVersion);
    traj.add_meta("experiment", "simulate");
    traj.add_meta("config", hex64(hash));
    traj.add_meta("seed", num(a.seed));
    traj.add_meta("ic", a.ic);
    traj.add_meta("dynamics", a.dynamics);
    traj.add_meta("runs", num(static_cast<long long>(a.runs)));
    traj.add_meta(discrete ? "steps" : "times", discrete ? join_num(steps) : join_num(times));
    traj.columns = {"run", "t", "k", "x"};
    for (std::size_t r = 0; r < a.runs; ++r)
        for (std::size_t j = 0; j < dumps[r].snaps.size(); ++j) {
            std::string t = discrete ? num(steps[j]) : num(times[j]);
            const auto& snap = dumps[r].snaps[j];
            for (std::size_t i = 0; i < snap.size(); ++i)
                traj.rows.push_back({num(static_cast<long long>(r)), t,
                                     num(dumps[r].label_min + static_cast<long long>(i)),
                                     num(snap[i])});
        }

    std::filesystem::create_directories(a.out);
    write_text_file(a.out + "/trajectories.csv", traj.to_string());

    Json meta;
    meta["version"] = kVersion;
    meta["experiment"] = "simulate";
    meta["config"] = hex64(hash);
    meta["seed"] = a.seed;
    meta["ic"] = a.ic;
    meta["dynamics"] = a.dynamics;
    if (discrete) meta["p"] = a.p;
    if (a.ic == "periodic") meta["d"] = a.d;
    if (bernoulli) {
        meta["density"] = a.density;
        meta["site_lo"] = a.site_lo;
        meta["site_hi"] = a.site_hi;
        meta["ref_site"] = a.ref_site;
    } else {
        meta["label_min"] = init.label_min();
        meta["label_max"] = init.label_max();
    }
    meta["runs"] = a.runs;
    if (discrete)
        meta["steps"] = steps;
    else
        meta["times"] = times;
    meta["files"] = {"trajectories.csv"};
    write_text_file(a.out + "/meta.json", meta.dump(2) + "\n");

    std::cout << "simulate: wrote " << traj.rows.size() << " rows to " << a.out
              << "/trajectories.csv\n";
    return 0;
}

struct AnalyzeArgs {
    std::string in;
    std::vector<double> u;
    double t = 0.0;
    double window = 20.0;
    int nodes = 96;
    double theta = kNaN;
    double ks_threshold = kNaN;
    std::string out;
};

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(sep, start);
        if (pos == std::string::npos) {
            parts.push_back(line.substr(start));
            return parts;
        }
        parts.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

int run_analyze(const AnalyzeArgs& a) {
    using namespace tasep;
    auto t0 = std::chrono::steady_clock::now();
    require(!a.in.empty(), "analyze: --in is required");
    Json meta = Json::parse(read_text_file(a.in + "/meta.json"));

    ExperimentConfig c;
    c.name = "analyze";
    c.ic = meta.at("ic").get<std::string>();
    require(c.ic != "bernoulli", "analyze: no scaling map for the bernoulli profile");
    c.dynamics = meta.at("dynamics").get<std::string>();
    c.d = meta.value("d", 2);
    c.p = meta.value("p", 0.5);
    c.runs = meta.at("runs").get<std::size_t>();
    c.seed = meta.at("seed").get<std::uint64_t>();
    c.u_points = a.u.empty() ? std::vector<double>{0.0} : a.u;
    c.window = a.window;
    c.nodes = a.nodes;
    c.theta = a.theta;
    c.ks_threshold = a.ks_threshold;
    c.out_dir = a.out.empty() ? a.in + "/analysis" : a.out;

    std::vector<double> sampled;
    if (meta.contains("times"))
        sampled = meta.at("times").get<std::vector<double>>();
    else
        for (long long s : meta.at("steps").get<std::vector<long long>>())
            sampled.push_back(static_cast<double>(s));
    require(!sampled.empty(), "analyze: dump has no sample times");
    c.t = a.t != 0.0 ? a.t : sampled.back();
    bool t_known = false;
    for (double t : sampled) t_known = t_known || t == c.t;
    require(t_known, "analyze: requested time was not sampled in the dump");

    detail::validate_config(c);

    std::size_t nu = c.u_points.size();
    std::vector<long long> index(nu);
    long long lab_lo = meta.at("label_min").get<long long>();
    long long lab_hi = meta.at("label_max").get<long long>();
    for (std::size_t i = 0; i < nu; ++i) {
        index[i] = detail::experiment_index(c, c.u_points[i]);
        require(lab_lo <= index[i] && index[i] <= lab_hi,
                "analyze: tracked index outside the dumped label range");
    }

    std::string text = read_text_file(a.in + "/trajectories.csv");
    std::vector<std::vector<long long>> x_by_u(nu, std::vector<long long>(c.runs));
    std::vector<std::size_t> filled(nu, 0);
    std::size_t start = 0;
    bool header_seen = false;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string::npos) end = text.size();
        std::string line = text.substr(start, end - start);
        start = end + 1;
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            require(line == "run,t,k,x", "analyze: unexpected trajectory columns");
            header_seen = true;
            continue;
        }
        std::vector<std::string> f = split(line, ',');
        require(f.size() == 4, "analyze: malformed trajectory row");
        if (std::stod(f[1]) != c.t) continue;
        long long k = std::stoll(f[2]);
        for (std::size_t i = 0; i < nu; ++i) {
            if (index[i] != k) continue;
            std::size_t r = std::stoull(f[0]);
            require(r < c.runs, "analyze: run index out of range");
            x_by_u[i][r] = std::stoll(f[3]);
            ++filled[i];
        }
    }
    for (std::size_t i = 0; i < nu; ++i)
        require(filled[i] == c.runs, "analyze: dump is missing tracked rows");

    ExperimentOutcome res =
        detail::analyze_experiment(c, index, x_by_u, {lab_lo, lab_hi}, 0.0, t0);
    std::cout << res.summary.dump(2) << "\n";
    std::cout << "analyze: " << (res.passed ? "pass" : "fail") << " (" << c.out_dir << ")\n";
    return res.passed ? 0 : 1;
}

struct FredholmArgs {
    std::string kind = "f2";
    double lo = kNaN;
    double hi = kNaN;
    int points = 0;
    double window = 20.0;
    int nodes = 96;
    double theta = kNaN;
    std::string out;
};

int run_fredholm(const FredholmArgs& a) {
    using namespace tasep;
    bool fan = a.kind == "rost";
    double lo = std::isnan(a.lo) ? (fan ? -1.5 : -6.0) : a.lo;
    double hi = std::isnan(a.hi) ? (fan ? 1.5 : 6.0) : a.hi;
    int points = a.points > 0 ? a.points : (fan ? 61 : 241);
    FredholmOptions opts{a.window, a.nodes, a.theta};
    Csv table = emit_table(a.kind, lo, hi, points, opts);

    std::string canonical = "command=fredholm\nkind=" + a.kind + "\nlo=" + num(lo) +
                            "\nhi=" + num(hi) + "\npoints=" + num(points) +
                            "\nwindow=" + num(a.window) + "\nnodes=" + num(a.nodes) +
                            "\ntheta=" + num(a.theta);
    table.add_meta("config", hex64(fnv1a(canonical)));

    std::string out = a.out.empty() ? "artifacts/tables/" + a.kind + ".csv" : a.out;
    std::filesystem::path path(out);
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    write_text_file(out, table.to_string());
    std::cout << "fredholm: wrote " << table.rows.size() << " rows to " << out << "\n";
    return 0;
}

struct LppArgs {
    int M = 20;
    int N = 20;
    int grids = 100;
    std::uint64_t seed = 1;
    std::string out = "artifacts/lpp";
};

int run_lpp(const LppArgs& a) {
    using namespace tasep;
    ExperimentOutcome res = run_lpp_equivalence(a.out, a.seed, a.M, a.N, a.grids);
    std::cout << res.summary.dump(2) << "\n";
    std::cout << "lpp: " << (res.passed ? "pass" : "fail") << " (" << a.out << ")\n";
    return res.passed ? 0 : 1;
}

struct PresetArgs {
    std::string name;
    std::string out;
    std::uint64_t seed = 0;
    std::size_t runs = 0;
    double t = 0.0;
};

int run_preset_cmd(const PresetArgs& a) {
    using namespace tasep;
    std::string out = a.out.empty() ? "artifacts/" + a.name : a.out;
    ExperimentOutcome res = run_preset(a.name, out, a.seed, a.runs, a.t);
    std::cout << res.summary.dump(2) << "\n";
    std::cout << "preset " << a.name << ": " << (res.passed ? "pass" : "fail") << " (" << out
              << ")\n";
    return res.passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"TASEP universality laboratory"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Key=value file with defaults; flags override file values");

    SimulateArgs sa;
    auto* sim = app.add_subcommand("simulate", "Dump raw trajectories");
    sim->add_option("--ic", sa.ic, "Initial profile")
        ->check(CLI::IsMember({"step", "alternating", "periodic", "bernoulli"}));
    sim->add_option("--max-label", sa.max_label, "Largest tracked label (step)");
    sim->add_option("--label-min", sa.label_min, "Smallest label (alternating/periodic)");
    sim->add_option("--label-max", sa.label_max, "Largest label (alternating/periodic)");
    sim->add_option("--d", sa.d, "Site spacing of the periodic profile");
    sim->add_option("--density", sa.density, "Bernoulli occupation density");
    sim->add_option("--site-lo", sa.site_lo, "Left edge of the bernoulli window");
    sim->add_option("--site-hi", sa.site_hi, "Right edge of the bernoulli window");
    sim->add_option("--ref-site", sa.ref_site, "Label 1 is the rightmost particle here or left");
    sim->add_option("--dynamics", sa.dynamics, "Update rule")
        ->check(CLI::IsMember({"continuous", "sequential", "parallel"}));
    sim->add_option("--p", sa.p, "Jump probability per discrete step");
    sim->add_option("--times", sa.times, "Continuous sample times (nondecreasing)");
    sim->add_option("--steps", sa.steps, "Discrete sample steps (nondecreasing)");
    sim->add_option("--runs", sa.runs, "Independent replicas");
    sim->add_option("--seed", sa.seed, "Master seed (nonzero)");
    sim->add_option("--out", sa.out, "Output directory");

    AnalyzeArgs aa;
    auto* ana = app.add_subcommand("analyze", "Rescale a dump and test a limit law");
    ana->add_option("--in", aa.in, "Directory with trajectories.csv and meta.json")->required();
    ana->add_option("--u", aa.u, "Rescaled positions to track (default 0)");
    ana->add_option("--t", aa.t, "Sample time to analyze (default: last in the dump)");
    ana->add_option("--window", aa.window, "Fredholm truncation half-width");
    ana->add_option("--nodes", aa.nodes, "Quadrature nodes");
    ana->add_option("--theta", aa.theta, "Conjugation parameter (default: automatic)");
    ana->add_option("--ks-threshold", aa.ks_threshold,
                    "Enable the KS gate against the profile's limit law");
    ana->add_option("--out", aa.out, "Output directory (default: <in>/analysis)");

    FredholmArgs fa;
    auto* fre = app.add_subcommand("fredholm", "Tabulate limit-law distributions");
    fre->add_option("--kind", fa.kind, "Table kind")
        ->check(CLI::IsMember({"f2", "f1scaled", "kernel-slice", "rost"}));
    fre->add_option("--lo", fa.lo, "Left end of the grid");
    fre->add_option("--hi", fa.hi, "Right end of the grid");
    fre->add_option("--points", fa.points, "Grid points");
    fre->add_option("--window", fa.window, "Fredholm truncation half-width");
    fre->add_option("--nodes", fa.nodes, "Quadrature nodes");
    fre->add_option("--theta", fa.theta, "Conjugation parameter (default: automatic)");
    fre->add_option("--out", fa.out, "Output file (default: artifacts/tables/<kind>.csv)");

    LppArgs la;
    auto* lpp = app.add_subcommand("lpp", "Passage-time grids and the equivalence check");
    lpp->add_option("--M", la.M, "Grid rows");
    lpp->add_option("--N", la.N, "Grid columns");
    lpp->add_option("--grids", la.grids, "Independent grids to compare");
    lpp->add_option("--seed", la.seed, "Master seed (nonzero)");
    lpp->add_option("--out", la.out, "Output directory");

    PresetArgs pa;
    auto* pre = app.add_subcommand("preset", "Run a canned experiment");
    std::string names;
    for (const std::string& n : tasep::preset_names()) names += (names.empty() ? "" : ", ") + n;
    pre->add_option("name", pa.name, "One of: " + names)->required();
    pre->add_option("--out", pa.out, "Output directory (default: artifacts/<name>)");
    pre->add_option("--seed", pa.seed, "Override the preset seed");
    pre->add_option("--runs", pa.runs, "Override the preset run count");
    pre->add_option("--t", pa.t, "Override the preset time horizon");

    int rc = 0;
    sim->callback([&]() { rc = run_simulate(sa); });
    ana->callback([&]() { rc = run_analyze(aa); });
    fre->callback([&]() { rc = run_fredholm(fa); });
    lpp->callback([&]() { rc = run_lpp(la); });
    pre->callback([&]() { rc = run_preset_cmd(pa); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
