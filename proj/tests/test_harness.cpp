#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "pathint/errors.hpp"
#include "pathint/harness.hpp"

using namespace pathint;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
    auto p = fs::temp_directory_path() / "pathint_harness_tests";
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("config parsing covers sections, lists, and complex values") {
    auto cfg = parse_config(R"(
[experiment]
name = demo
scheme = cameron
[physical]
lambda = 1.0,1.0
x2 = 0.5
[numerical]
N = 4,2,1
)");
    CHECK(cfg.name == "demo");
    CHECK(cfg.scheme == "cameron");
    CHECK(cfg.lambda == Complex(1.0, 1.0));
    CHECK(cfg.n_list == std::vector<int>{1, 2, 4});  // sorted by parameter
}

TEST_CASE("config errors carry field-level messages") {
    CHECK_THROWS_WITH_AS(parse_config("[experiment]\nscheme = warp\n"),
                         doctest::Contains("scheme"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("[experiment]\nscheme = lattice\n[physical]\nm = abc\n"),
                         doctest::Contains("physical.m"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("[experiment]\nscheme = lattice\nbogus = 1\n"),
                         doctest::Contains("bogus"), ConfigError);
    // stochastic runs demand a seed
    CHECK_THROWS_WITH_AS(parse_config("[experiment]\nscheme = dk\n[numerical]\nnu_list = 4\n"
                                      "samples = 1000\n"),
                         doctest::Contains("seed"), ConfigError);
}

TEST_CASE("the scheme catalog lists every scheme") {
    auto cat = scheme_catalog();
    CHECK(cat.size() == 7);
    CHECK(cat.front().first == "lattice");
    CHECK(cat.back().first == "dk");
}

TEST_CASE("a lattice run writes matching csv and json tables") {
    ExperimentConfig cfg;
    cfg.name = "lattice_free";
    cfg.scheme = "lattice";
    cfg.x2 = 1.0;
    cfg.n_list = {1, 10, 100};
    cfg.out_dir = (scratch_dir() / "lattice").string();
    auto rec = run_experiment(cfg);
    CHECK(rec.rows.size() == 3);
    CHECK(rec.row_errors.empty());

    // round-trip equality: every CSV number re-parses to the JSON number
    auto json = nlohmann::json::parse(slurp(fs::path(cfg.out_dir) / "lattice_free.json"));
    std::ifstream csv(fs::path(cfg.out_dir) / "lattice_free.csv");
    std::string header, line;
    std::getline(csv, header);
    CHECK(header == "N,value_re,value_im,oracle_present,oracle_re,oracle_im,rel_error");
    std::size_t r = 0;
    while (std::getline(csv, line) && line[0] != '#') {
        std::stringstream ss(line);
        std::string cell;
        std::size_t c = 0;
        while (std::getline(ss, cell, ',')) {
            double csv_value = std::stod(cell);
            double json_value = json["rows"][r][c].get<double>();
            CHECK(csv_value == json_value);
            ++c;
        }
        ++r;
    }
    CHECK(r == 3);
}

TEST_CASE("threshold violations flip the record into failure") {
    ExperimentConfig cfg;
    cfg.name = "ito_run";
    cfg.scheme = "ito";
    cfg.x2 = 1.0;
    cfg.nu_list = {1e2, 1e3, 1e4};
    cfg.out_dir = (scratch_dir() / "ito").string();
    cfg.max_rel_error = 1e-12;  // unattainable at finite diffusion
    auto rec = run_experiment(cfg);
    CHECK(rec.threshold_failed);
    CHECK(rec.summary.count("fitted_slope") == 1);
    cfg.max_rel_error = 10.0;
    CHECK(!run_experiment(cfg).threshold_failed);
}

TEST_CASE("identical seeds give byte-identical outputs") {
    ExperimentConfig cfg;
    cfg.name = "fk_seeded";
    cfg.scheme = "fk";
    cfg.potential = PotentialSpec::quadratic(0, 0, 0.5);
    cfg.n_list = {63};
    cfg.samples = 5000;
    cfg.seed = 8675309;
    cfg.seed_set = true;
    std::string first_csv, first_json;
    for (int run = 0; run < 2; ++run) {
        cfg.out_dir = (scratch_dir() / ("fk" + std::to_string(run))).string();
        cfg.threads = run + 1;
        run_experiment(cfg);
        std::string csv = slurp(fs::path(cfg.out_dir) / "fk_seeded.csv");
        std::string json = slurp(fs::path(cfg.out_dir) / "fk_seeded.json");
        if (run == 0) {
            first_csv = csv;
            first_json = json;
        } else {
            CHECK(csv == first_csv);
            CHECK(json == first_json);
        }
    }
    CHECK(!first_csv.empty());
}

TEST_CASE("convergence fits: first order for the left-point chain, exact for free") {
    ExperimentConfig cfg;
    cfg.name = "conv_quadratic";
    cfg.scheme = "lattice";
    cfg.potential = PotentialSpec::quadratic(0, 0, 0.5);
    cfg.x2 = 1.0;
    cfg.n_list = {32, 64, 128, 256, 512};
    cfg.out_dir = (scratch_dir() / "conv").string();
    auto quadratic = run_experiment(cfg);

    cfg.name = "conv_free";
    cfg.potential = PotentialSpec::zero();
    auto free_run = run_experiment(cfg);

    auto fits = convergence_table({quadratic, free_run}, 1.0, 0.35);
    REQUIRE(fits.size() == 2);
    CHECK(!fits[0].exact);
    CHECK(fits[0].order == doctest::Approx(1.0).epsilon(0.3));
    CHECK(fits[0].pass);
    CHECK(fits[1].exact);
    CHECK(fits[1].pass);
}

TEST_CASE("the coherent-state lattice fits to first order through the harness") {
    ExperimentConfig cfg;
    cfg.name = "conv_cs";
    cfg.scheme = "cs";
    cfg.symbol = "harmonic";
    cfg.p2 = 0.0;
    cfg.q2 = 1.0;
    cfg.p1 = 1.0;
    cfg.q1 = 0.0;
    cfg.n_list = {16, 32, 64, 128};
    cfg.out_dir = (scratch_dir() / "cs").string();
    auto rec = run_experiment(cfg);
    auto fits = convergence_table({rec}, 1.0, 0.35);
    CHECK(fits[0].order == doctest::Approx(1.0).epsilon(0.3));
    CHECK(fits[0].pass);
}

TEST_CASE("too few resolutions raise the named error") {
    ExperimentConfig cfg;
    cfg.name = "short";
    cfg.scheme = "lattice";
    cfg.potential = PotentialSpec::quadratic(0, 0, 0.5);
    cfg.x2 = 1.0;
    cfg.n_list = {8, 16};
    cfg.out_dir = (scratch_dir() / "short").string();
    auto rec = run_experiment(cfg);
    CHECK_THROWS_AS(convergence_table({rec}), NumericError);
}

TEST_CASE("cameron rows grow the variation factor to its printed endpoint") {
    ExperimentConfig cfg;
    cfg.name = "cameron_div";
    cfg.scheme = "cameron";
    cfg.lambda = Complex(1.0, 1.0);
    for (int n = 1; n <= 64; ++n) cfg.n_list.push_back(n);
    cfg.out_dir = (scratch_dir() / "cameron").string();
    auto rec = run_experiment(cfg);
    REQUIRE(rec.rows.size() == 64);
    double prev = 0.0;
    for (const auto& row : rec.rows) {
        CHECK(row[3] > prev);  // variation_factor column, strictly monotone
        prev = row[3];
        CHECK(row[4] == 1.0);  // divergent flag
    }
    CHECK(rec.rows.back()[3] == doctest::Approx(65536.0).epsilon(1e-12));
}

TEST_CASE("the dk scheme reports its extrapolant summary") {
    ExperimentConfig cfg;
    cfg.name = "dk_table";
    cfg.scheme = "dk";
    cfg.symbol = "harmonic";
    cfg.p2 = 1.0;
    cfg.q1 = 1.0;
    cfg.nu_list = {4, 8, 16};
    cfg.out_dir = (scratch_dir() / "dk").string();
    auto rec = run_experiment(cfg);
    CHECK(rec.rows.size() == 3);
    CHECK(rec.summary.count("extrapolant_re") == 1);
    CHECK(rec.summary.count("fit_residual") == 1);
}
