#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <string>

#include "tasep/experiment.hpp"

using namespace tasep;

namespace {

std::string fresh_dir(const std::string& tag) {
    auto dir = std::filesystem::temp_directory_path() / ("tasep_test_" + tag);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir.string();
}

}  // namespace

TEST_CASE("byte hashing and number formatting are stable") {
    CHECK(fnv1a("") == 14695981039346656037ull);
    CHECK(fnv1a("a") == 12638187200555641996ull);
    CHECK(hex64(0) == "0000000000000000");
    CHECK(hex64(0xdeadbeefull) == "00000000deadbeef");
    CHECK(num(0.05) == "0.05");
    CHECK(num(1.0) == "1");
    CHECK(num(-2.5e-3) == "-0.0025");
    CHECK(num(static_cast<long long>(-7)) == "-7");
    // round-trip property on an awkward value
    CHECK(std::stod(num(0.1 + 0.2)) == 0.1 + 0.2);
}

TEST_CASE("csv rendering puts metadata first and keeps field order") {
    Csv csv;
    csv.add_meta("version", "1.0.0");
    csv.add_meta("seed", "7");
    csv.columns = {"a", "b"};
    csv.rows.push_back({"1", "2"});
    csv.rows.push_back({"3", "4"});
    CHECK(csv.to_string() == "# version: 1.0.0\n# seed: 7\na,b\n1,2\n3,4\n");
}

TEST_CASE("binary grid files round-trip") {
    auto dir = fresh_dir("grid");
    auto g = lpp_times(4, 3, 99);
    write_grid_binary(dir + "/g.bin", 4, 3, 99, g);
    auto back = read_grid_binary(dir + "/g.bin");
    CHECK(back.rows == 4);
    CHECK(back.cols == 3);
    CHECK(back.seed == 99);
    CHECK(back.values == g);
    CHECK_THROWS(write_grid_binary(dir + "/bad.bin", 2, 2, 1, g));
}

TEST_CASE("config hash tracks every field") {
    ExperimentConfig a, b;
    CHECK(config_hash(a) == config_hash(b));
    b.seed = 2;
    CHECK(config_hash(a) != config_hash(b));
    b = a;
    b.u_points = {0.0, 1.0};
    CHECK(config_hash(a) != config_hash(b));
    b = a;
    b.nodes = 64;
    CHECK(config_hash(a) != config_hash(b));
}

TEST_CASE("emitted tables have the advertised shape") {
    auto rost = emit_table("rost", -2.0, 2.0, 41);
    REQUIRE(rost.rows.size() == 41);
    CHECK(rost.rows.front()[1] == "1");
    CHECK(rost.rows.back()[1] == "0");
    // interior value matches the density formula
    CHECK(rost.rows[20][0] == "0");
    CHECK(rost.rows[20][1] == "0.5");

    auto slice = emit_table("kernel-slice", -4.0, 4.0, 17);
    REQUIRE(slice.rows.size() == 17);
    for (const auto& row : slice.rows) CHECK(std::stod(row[1]) >= 0.0);

    FredholmOptions light{15.0, 48, std::numeric_limits<double>::quiet_NaN()};
    auto f2 = emit_table("f2", -2.0, 2.0, 5, light);
    REQUIRE(f2.rows.size() == 5);
    double prev = -1.0;
    for (const auto& row : f2.rows) {
        double v = std::stod(row[1]);
        CHECK(v > prev);
        prev = v;
    }
    CHECK(std::fabs(std::stod(f2.rows[2][1]) - 0.96937282835526267) < 1e-6);

    auto f1 = emit_table("f1scaled", -1.0, 1.0, 3, light);
    CHECK(std::fabs(std::stod(f1.rows[1][1]) - 0.83190806620295193) < 1e-6);

    CHECK_THROWS(emit_table("nope", 0.0, 1.0, 5));
    CHECK_THROWS(emit_table("rost", 1.0, 0.0, 5));
}

TEST_CASE("experiment runs are reproducible byte for byte") {
    ExperimentConfig c;
    c.name = "smoke";
    c.ic = "step";
    c.t = 50.0;
    c.runs = 120;
    c.seed = 9001;
    c.u_points = {0.0};

    auto dir_a = fresh_dir("exp_a");
    auto dir_b = fresh_dir("exp_b");
    c.out_dir = dir_a;
    auto a = run_experiment(c);
    c.out_dir = dir_b;
    auto b = run_experiment(c);

    REQUIRE(!a.data_files.empty());
    REQUIRE(a.data_files == b.data_files);
    for (const auto& f : a.data_files)
        CHECK(read_text_file(dir_a + "/" + f) == read_text_file(dir_b + "/" + f));

    CHECK(a.summary["per_u"][0].contains("mean_s"));
    CHECK(std::filesystem::exists(dir_a + "/summary.json"));
    CHECK(std::filesystem::exists(dir_a + "/samples.csv"));
    CHECK(std::filesystem::exists(dir_a + "/ecdf_u0.csv"));
}

TEST_CASE("experiment validation rejects bad configurations") {
    ExperimentConfig c;
    c.runs = 120;
    c.seed = 3;
    c.ic = "nope";
    CHECK_THROWS(run_experiment(c));
    c.ic = "step";
    c.seed = 0;
    CHECK_THROWS(run_experiment(c));
    c.seed = 3;
    c.runs = 10;
    CHECK_THROWS(run_experiment(c));
    c.runs = 120;
    c.dynamics = "sequential";
    CHECK_THROWS(run_experiment(c));   // step profile is continuous-time
    c.dynamics = "continuous";
    c.ic = "periodic";
    CHECK_THROWS(run_experiment(c));   // periodic needs the sequential update
    c.ic = "step";
    c.u_points = {-40.0};
    CHECK_THROWS(run_experiment(c));   // index falls outside the profile
}

TEST_CASE("discrete periodic experiment produces plausible samples") {
    ExperimentConfig c;
    c.name = "periodic-smoke";
    c.ic = "periodic";
    c.dynamics = "sequential";
    c.d = 2;
    c.p = 0.5;
    c.t = 100.0;
    c.runs = 150;
    c.seed = 77;
    c.out_dir = fresh_dir("exp_p");
    auto out = run_experiment(c);
    CHECK(out.passed);  // no KS gate configured
    double mean_s = out.summary["per_u"][0]["mean_s"].get<double>();
    CHECK(std::fabs(mean_s) < 3.0);
    double speed = out.summary["displacement"][0]["measured_speed"].get<double>();
    CHECK(std::fabs(speed - 1.0 / 3.0) < 0.1);
}

TEST_CASE("lpp preset checks equality and writes grids") {
    auto dir = fresh_dir("lpp");
    auto out = run_lpp_equivalence(dir, 42, 6, 5, 10);
    CHECK(out.passed);
    CHECK(out.summary["equal_grids"] == 10);
    auto g = read_grid_binary(dir + "/grid.bin");
    CHECK(g.rows == 6);
    CHECK(g.cols == 5);
    CHECK(g.values == lpp_times(6, 5, derive_seed(42, 0)));
    CHECK(std::filesystem::exists(dir + "/border.csv"));
    CHECK(std::filesystem::exists(dir + "/grid.csv"));
}

TEST_CASE("rost preset writes a density table and distance") {
    auto dir = fresh_dir("rost");
    auto out = run_rost_profile(dir, 11, 150.0, 12, 12, 0.2);
    CHECK(out.summary["l1_distance"].get<double>() < 0.2);
    CHECK(std::filesystem::exists(dir + "/density.csv"));
    auto body = read_text_file(dir + "/density.csv");
    CHECK(body.find("# experiment: rost-profile") != std::string::npos);
    CHECK(body.find("xi,density,exact") != std::string::npos);
}

TEST_CASE("preset registry rejects unknown names") {
    CHECK_THROWS(run_preset("unknown-preset", fresh_dir("noop")));
    CHECK(preset_names().size() == 6);
}
