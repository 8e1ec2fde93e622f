#include "pathint/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "pathint/coherent.hpp"
#include "pathint/dk.hpp"
#include "pathint/errors.hpp"
#include "pathint/euclidean.hpp"
#include "pathint/exact.hpp"
#include "pathint/ito.hpp"
#include "pathint/quadrature.hpp"

namespace pathint {

namespace {

std::string trim(const std::string& s) {
    auto a = s.find_first_not_of(" \t\r\n");
    auto b = s.find_last_not_of(" \t\r\n");
    return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw ConfigError("field '" + key + "': cannot parse number from '" + v + "'");
    }
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!trim(item).empty()) out.push_back(to_double(key, trim(item)));
    if (out.empty()) throw ConfigError("field '" + key + "': empty list");
    return out;
}

HamiltonianSymbol parse_symbol(const std::string& name) {
    if (name == "harmonic") return harmonic_symbol();
    if (name == "free")
        return {PhaseSpacePolynomial::monomial(2, 0, 0.5), Ordering::antinormal};
    if (name.rfind("harmonic+", 0) == 0) {
        std::string tail = name.substr(9);
        if (!tail.empty() && tail.back() == 'q')
            return harmonic_symbol(to_double("symbol", tail.substr(0, tail.size() - 1)));
    }
    throw ConfigError("field 'symbol': unknown symbol '" + name + "'");
}

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig cfg;
    std::string section;
    std::istringstream in(text);
    std::string line;
    double pot_c0 = 0.0, pot_c1 = 0.0, pot_c2 = 0.0;
    std::string pot_kind = "zero";
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        if (line.front() == '[' && line.back() == ']') {
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        std::string full = section.empty() ? key : section + "." + key;

        if (full == "experiment.name") cfg.name = value;
        else if (full == "experiment.scheme") cfg.scheme = value;
        else if (full == "physical.m") cfg.m = to_double(full, value);
        else if (full == "physical.hbar") cfg.hbar = to_double(full, value);
        else if (full == "physical.nu") cfg.nu = to_double(full, value);
        else if (full == "physical.T") cfg.T = to_double(full, value);
        else if (full == "physical.x1") cfg.x1 = to_double(full, value);
        else if (full == "physical.x2") cfg.x2 = to_double(full, value);
        else if (full == "physical.p1") cfg.p1 = to_double(full, value);
        else if (full == "physical.q1") cfg.q1 = to_double(full, value);
        else if (full == "physical.p2") cfg.p2 = to_double(full, value);
        else if (full == "physical.q2") cfg.q2 = to_double(full, value);
        else if (full == "physical.potential") pot_kind = value;
        else if (full == "physical.v0") pot_c0 = to_double(full, value);
        else if (full == "physical.v1") pot_c1 = to_double(full, value);
        else if (full == "physical.v2") pot_c2 = to_double(full, value);
        else if (full == "physical.symbol") cfg.symbol = value;
        else if (full == "physical.lambda") {
            auto parts = to_list(full, value);
            if (parts.size() != 2) throw ConfigError("field 'lambda': expected re,im");
            cfg.lambda = Complex(parts[0], parts[1]);
        } else if (full == "numerical.N") {
            for (double n : to_list(full, value)) cfg.n_list.push_back(static_cast<int>(n));
        } else if (full == "numerical.nu_list") {
            cfg.nu_list = to_list(full, value);
        } else if (full == "numerical.grid_min") cfg.grid_min = to_double(full, value);
        else if (full == "numerical.grid_max") cfg.grid_max = to_double(full, value);
        else if (full == "numerical.grid_points") cfg.grid_points = static_cast<int>(to_double(full, value));
        else if (full == "numerical.samples") cfg.samples = static_cast<long>(to_double(full, value));
        else if (full == "numerical.seed") {
            cfg.seed = static_cast<std::uint64_t>(std::stoull(value));
            cfg.seed_set = true;
        } else if (full == "numerical.threads") cfg.threads = static_cast<int>(to_double(full, value));
        else if (full == "thresholds.max_rel_error") cfg.max_rel_error = to_double(full, value);
        else if (full == "output.dir") cfg.out_dir = value;
        else throw ConfigError("line " + std::to_string(lineno) + ": unknown field '" + full + "'");
    }

    if (pot_kind == "zero") cfg.potential = PotentialSpec::zero();
    else if (pot_kind == "linear") cfg.potential = PotentialSpec::linear(pot_c0, pot_c1);
    else if (pot_kind == "quadratic") cfg.potential = PotentialSpec::quadratic(pot_c0, pot_c1, pot_c2);
    else throw ConfigError("field 'potential': unknown kind '" + pot_kind + "'");

    static const std::vector<std::string> known = {"lattice", "fk",  "cameron", "ito",
                                                   "ps-lattice", "cs", "dk"};
    if (std::find(known.begin(), known.end(), cfg.scheme) == known.end())
        throw ConfigError("field 'scheme': must be one of lattice|fk|cameron|ito|ps-lattice|cs|dk");

    bool stochastic = (cfg.scheme == "fk" || cfg.scheme == "dk") && cfg.samples > 0;
    if (stochastic && !cfg.seed_set)
        throw ConfigError("field 'seed': mandatory for stochastic schemes");
    std::sort(cfg.n_list.begin(), cfg.n_list.end());
    std::sort(cfg.nu_list.begin(), cfg.nu_list.end());
    return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

// --- scheme runners ----------------------------------------------------------

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw ConfigError(msg);
}

ReportRecord run_lattice(const ExperimentConfig& cfg) {
    require(!cfg.n_list.empty(), "scheme 'lattice' needs numerical.N");
    ReportRecord rec;
    rec.columns = {"N", "value_re", "value_im", "oracle_present", "oracle_re", "oracle_im",
                   "rel_error"};
    Complex oracle;
    bool have_oracle = true;
    if (cfg.potential.kind == PotentialSpec::Kind::zero) {
        oracle = free_propagator(cfg.x2, cfg.x1, cfg.T, cfg.m, cfg.hbar).value;
    } else {
        int n_ref = 8 * cfg.n_list.back();
        oracle = lattice_chain_quadratic(cfg.potential, TimeLattice(0, cfg.T, n_ref), cfg.x2,
                                         cfg.x1, cfg.m, cfg.hbar)
                     .value;
    }
    for (int n : cfg.n_list) {
        try {
            Complex v = lattice_chain_quadratic(cfg.potential, TimeLattice(0, cfg.T, n), cfg.x2,
                                                cfg.x1, cfg.m, cfg.hbar)
                            .value;
            double rel = std::abs(v - oracle) / std::abs(oracle);
            rec.rows.push_back({static_cast<double>(n), v.real(), v.imag(),
                                have_oracle ? 1.0 : 0.0, oracle.real(), oracle.imag(), rel});
        } catch (const NumericError& e) {
            rec.row_errors.push_back("N=" + std::to_string(n) + ": " + e.what());
        }
    }
    return rec;
}

ReportRecord run_fk(const ExperimentConfig& cfg) {
    ReportRecord rec;
    rec.columns = {"method", "resolution", "value", "std_error", "oracle_present", "oracle",
                   "rel_error"};
    // oracle: closed form for V = c2 x^2 (omega = sqrt(2 nu c2)) or V = 0
    bool have_oracle = false;
    double oracle = 0.0;
    if (cfg.potential.kind == PotentialSpec::Kind::zero) {
        oracle = heat_kernel(cfg.x2, cfg.x1, cfg.T, cfg.nu);
        have_oracle = true;
    } else if (cfg.potential.kind == PotentialSpec::Kind::quadratic && cfg.potential.c0 == 0.0 &&
               cfg.potential.c1 == 0.0) {
        oracle = euclidean_oscillator_kernel(cfg.x2, cfg.x1, cfg.T, cfg.nu,
                                             std::sqrt(2.0 * cfg.nu * cfg.potential.c2));
        have_oracle = true;
    }
    int n_interior = cfg.n_list.empty() ? 255 : cfg.n_list.back();
    int grid_points = cfg.grid_points > 0 ? cfg.grid_points : 481;
    SpatialGrid grid(cfg.grid_min, cfg.grid_max, grid_points);
    TimeLattice lat(0, cfg.T, n_interior);
    Eigen::VectorXd col =
        fk_transfer_column(cfg.potential, cfg.nu, lat, grid, grid.nearest_index(cfg.x1));
    double transfer = col[grid.nearest_index(cfg.x2)];
    rec.rows.push_back({0.0, static_cast<double>(n_interior), transfer, 0.0,
                        have_oracle ? 1.0 : 0.0, oracle,
                        have_oracle ? std::abs(transfer - oracle) / std::abs(oracle) : 0.0});
    if (cfg.samples > 0) {
        auto est = fk_bridge_mc(cfg.potential, cfg.nu, cfg.T, cfg.x2, cfg.x1, n_interior + 1,
                                cfg.samples, {cfg.seed, 0}, cfg.threads);
        rec.rows.push_back({1.0, static_cast<double>(n_interior + 1), est.value.real(),
                            est.std_error, have_oracle ? 1.0 : 0.0, oracle,
                            have_oracle ? std::abs(est.value.real() - oracle) / std::abs(oracle)
                                        : 0.0});
    }
    return rec;
}

ReportRecord run_cameron(const ExperimentConfig& cfg) {
    ReportRecord rec;
    rec.columns = {"N", "value_re", "value_im", "variation_factor", "divergent"};
    std::vector<int> ns = cfg.n_list;
    if (ns.empty())
        for (int n = 1; n <= 64; n *= 2) ns.push_back(n);
    double eps = cfg.T / ns.back();
    for (int n : ns) {
        CameronSpec spec(cfg.lambda, eps, n);
        Complex v = cameron_chain_value(spec, cfg.x2, cfg.x1).value;
        rec.rows.push_back({static_cast<double>(n), v.real(), v.imag(),
                            cameron_variation_factor(cfg.lambda, n),
                            cameron_is_divergent(cfg.lambda) ? 1.0 : 0.0});
    }
    return rec;
}

ReportRecord run_ito(const ExperimentConfig& cfg) {
    require(!cfg.nu_list.empty(), "scheme 'ito' needs numerical.nu_list");
    ReportRecord rec;
    rec.columns = {"nu", "value_re", "value_im", "oracle_present", "oracle_re", "oracle_im",
                   "rel_error"};
    auto study = ito_limit_study(cfg.nu_list, cfg.m, cfg.hbar, cfg.T, cfg.x2);
    Complex oracle = free_propagator(cfg.x2, 0.0, cfg.T, cfg.m, cfg.hbar).value;
    for (const auto& row : study.rows) {
        ItoSpec spec(row.nu, cfg.m, cfg.hbar, cfg.T, cfg.x2);
        Complex v = ito_propagator(spec).value;
        rec.rows.push_back(
            {row.nu, v.real(), v.imag(), 1.0, oracle.real(), oracle.imag(), row.rel_error});
    }
    rec.summary["fitted_slope"] = study.fitted_slope;
    return rec;
}

ReportRecord run_ps_lattice(const ExperimentConfig& cfg) {
    require(!cfg.n_list.empty(), "scheme 'ps-lattice' needs numerical.N");
    ReportRecord rec;
    rec.columns = {"N", "value_re", "value_im", "oracle_present", "oracle_re", "oracle_im",
                   "rel_error"};
    Complex oracle;
    if (cfg.symbol == "relativistic") {
        oracle = relativistic_free_propagator(cfg.x2 - cfg.x1, cfg.T, cfg.m, cfg.hbar)
                     .value.value;
    } else {
        oracle = free_propagator(cfg.x2, cfg.x1, cfg.T, cfg.m, cfg.hbar).value;
    }
    for (int n : cfg.n_list) {
        TimeLattice lat(0, cfg.T, n);
        Complex v;
        if (cfg.symbol == "relativistic") {
            double mass = cfg.m;
            MomentumHamiltonian H{[mass](double p) { return std::sqrt(p * p + mass * mass); }};
            v = ps_lattice_q(H, lat, cfg.x2, cfg.x1, cfg.hbar).value;
        } else {
            v = ps_lattice_q(parse_symbol(cfg.symbol), lat, cfg.x2, cfg.x1, cfg.hbar).value;
        }
        rec.rows.push_back({static_cast<double>(n), v.real(), v.imag(), 1.0, oracle.real(),
                            oracle.imag(), std::abs(v - oracle) / std::abs(oracle)});
    }
    return rec;
}

ReportRecord run_cs(const ExperimentConfig& cfg) {
    require(!cfg.n_list.empty(), "scheme 'cs' needs numerical.N");
    ReportRecord rec;
    rec.columns = {"N", "value_re", "value_im", "oracle_present", "oracle_re", "oracle_im",
                   "rel_error"};
    HamiltonianSymbol H = parse_symbol(cfg.symbol);
    // oracle for the harmonic symbol: label rotation with the normal-ordered
    // spectrum the lattice converges to
    bool have_oracle = (cfg.symbol == "harmonic");
    Complex oracle(0.0, 0.0);
    if (have_oracle)
        oracle = coherent_rotation_element(cfg.p2, cfg.q2, cfg.p1, cfg.q1, cfg.T, cfg.hbar, 0.0);
    for (int n : cfg.n_list) {
        TimeLattice lat(0, cfg.T, n);
        Complex v = cs_lattice_propagator(H, lat, cfg.p2, cfg.q2, cfg.p1, cfg.q1, cfg.hbar).value;
        double rel = have_oracle ? std::abs(v - oracle) / std::abs(oracle) : 0.0;
        rec.rows.push_back({static_cast<double>(n), v.real(), v.imag(), have_oracle ? 1.0 : 0.0,
                            oracle.real(), oracle.imag(), rel});
    }
    return rec;
}

ReportRecord run_dk(const ExperimentConfig& cfg) {
    require(!cfg.nu_list.empty(), "scheme 'dk' needs numerical.nu_list");
    ReportRecord rec;
    rec.columns = {"nu",    "N",     "chain_re", "chain_im", "mc_present",
                   "mc_re", "mc_im", "mc_stderr"};
    HamiltonianSymbol H = parse_symbol(cfg.symbol);
    auto rule = [&](double nu) { return dk_default_n_rule(nu, cfg.T, cfg.hbar); };
    for (std::size_t i = 0; i < cfg.nu_list.size(); ++i) {
        double nu = cfg.nu_list[i];
        TimeLattice lat(0, cfg.T, rule(nu));
        DKConfig dk(H, nu, lat, cfg.p2, cfg.q2, cfg.p1, cfg.q1, cfg.hbar);
        Complex chain = dk_lattice_amplitude(dk).value;
        double mc_present = 0.0, mc_re = 0.0, mc_im = 0.0, mc_err = 0.0;
        if (cfg.samples > 0 && i == 0) {
            // Monte Carlo cross-check at the smallest nu, on a lattice sized
            // for sampling cost rather than chain bias
            TimeLattice mc_lat(0, cfg.T, 511);
            DKConfig dk_mc(H, nu, mc_lat, cfg.p2, cfg.q2, cfg.p1, cfg.q1, cfg.hbar);
            auto est = dk_mc_crosscheck(dk_mc, cfg.samples, {cfg.seed, 0}, cfg.threads);
            mc_present = 1.0;
            mc_re = est.value.real();
            mc_im = est.value.imag();
            mc_err = est.std_error;
        }
        rec.rows.push_back({nu, static_cast<double>(lat.n_interior), chain.real(), chain.imag(),
                            mc_present, mc_re, mc_im, mc_err});
    }
    if (cfg.nu_list.size() >= 3) {
        TimeLattice lat0(0, cfg.T, 32);
        DKConfig tmpl(H, cfg.nu_list[0], lat0, cfg.p2, cfg.q2, cfg.p1, cfg.q1, cfg.hbar);
        auto est = dk_extrapolate(tmpl, cfg.nu_list, rule);
        rec.summary["extrapolant_re"] = est.value.real();
        rec.summary["extrapolant_im"] = est.value.imag();
        rec.summary["fit_residual"] = est.std_error;
    }
    return rec;
}

}  // namespace

ReportRecord run_experiment(const ExperimentConfig& config) {
    ReportRecord rec;
    if (config.scheme == "lattice") rec = run_lattice(config);
    else if (config.scheme == "fk") rec = run_fk(config);
    else if (config.scheme == "cameron") rec = run_cameron(config);
    else if (config.scheme == "ito") rec = run_ito(config);
    else if (config.scheme == "ps-lattice") rec = run_ps_lattice(config);
    else if (config.scheme == "cs") rec = run_cs(config);
    else if (config.scheme == "dk") rec = run_dk(config);
    else throw ConfigError("unknown scheme '" + config.scheme + "'");
    rec.config = config;

    if (config.max_rel_error) {
        auto it = std::find(rec.columns.begin(), rec.columns.end(), "rel_error");
        if (it != rec.columns.end()) {
            auto idx = std::distance(rec.columns.begin(), it);
            for (const auto& row : rec.rows)
                if (row[idx] > *config.max_rel_error) rec.threshold_failed = true;
        }
    }
    if (!rec.row_errors.empty()) rec.threshold_failed = rec.threshold_failed || config.max_rel_error.has_value();

    std::filesystem::create_directories(config.out_dir);
    write_csv(rec, config.out_dir + "/" + config.name + ".csv");
    write_json(rec, config.out_dir + "/" + config.name + ".json");
    return rec;
}

void write_csv(const ReportRecord& record, const std::string& path) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        for (std::size_t j = 0; j < record.columns.size(); ++j)
            out << (j ? "," : "") << record.columns[j];
        out << "\n";
        for (const auto& row : record.rows) {
            for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << fmt17(row[j]);
            out << "\n";
        }
        for (const auto& [k, v] : record.summary) out << "# " << k << " = " << fmt17(v) << "\n";
        for (const auto& e : record.row_errors) out << "# row_error: " << e << "\n";
    }
    std::filesystem::rename(tmp, path);
}

void write_json(const ReportRecord& record, const std::string& path) {
    nlohmann::json j;
    const auto& c = record.config;
    // the echo carries everything needed to reproduce the rows; worker count
    // is an execution resource, not part of the experiment identity
    j["config"] = {{"name", c.name},     {"scheme", c.scheme}, {"m", c.m},
                   {"hbar", c.hbar},     {"nu", c.nu},         {"T", c.T},
                   {"x1", c.x1},         {"x2", c.x2},         {"p1", c.p1},
                   {"q1", c.q1},         {"p2", c.p2},         {"q2", c.q2},
                   {"symbol", c.symbol}, {"samples", c.samples}, {"seed", c.seed}};
    j["config"]["lambda"] = {c.lambda.real(), c.lambda.imag()};
    j["config"]["N"] = c.n_list;
    j["config"]["nu_list"] = c.nu_list;
    j["columns"] = record.columns;
    j["rows"] = record.rows;
    j["summary"] = record.summary;
    j["row_errors"] = record.row_errors;
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        out << j.dump(2) << "\n";
    }
    std::filesystem::rename(tmp, path);
}

std::vector<ConvergenceFit> convergence_table(const std::vector<ReportRecord>& records,
                                              double expected_order, double tolerance) {
    std::vector<ConvergenceFit> fits;
    for (const auto& rec : records) {
        ConvergenceFit fit;
        auto res_it = std::find(rec.columns.begin(), rec.columns.end(), "N");
        if (res_it == rec.columns.end())
            res_it = std::find(rec.columns.begin(), rec.columns.end(), "nu");
        auto err_it = std::find(rec.columns.begin(), rec.columns.end(), "rel_error");
        if (res_it == rec.columns.end() || err_it == rec.columns.end()) {
            fit.note = "record carries no resolution/error table";
            fits.push_back(fit);
            continue;
        }
        auto ri = std::distance(rec.columns.begin(), res_it);
        auto ei = std::distance(rec.columns.begin(), err_it);
        std::vector<double> lx, ly;
        bool all_tiny = !rec.rows.empty();
        for (const auto& row : rec.rows) {
            if (row[ei] > 1e-12) all_tiny = false;
            if (row[ri] > 0.0 && row[ei] > 0.0) {
                lx.push_back(std::log10(row[ri]));
                ly.push_back(std::log10(row[ei]));
            }
        }
        if (all_tiny) {
            fit.exact = true;
            fit.pass = true;
            fit.note = "errors at machine precision; order undefined (exact)";
            fits.push_back(fit);
            continue;
        }
        if (lx.size() < 3) throw NumericError("convergence_table: need at least 3 resolutions");
        Eigen::VectorXd vx = Eigen::Map<Eigen::VectorXd>(lx.data(), lx.size());
        Eigen::VectorXd vy = Eigen::Map<Eigen::VectorXd>(ly.data(), ly.size());
        auto line = quad::fit_line(vx, vy);
        fit.order = -line.slope;
        fit.order_stderr = line.slope_stderr;
        fit.confidence_band = 2.0 * line.slope_stderr;
        fit.pass = std::isnan(expected_order) || std::abs(fit.order - expected_order) <= tolerance;
        fits.push_back(fit);
    }
    return fits;
}

std::vector<std::pair<std::string, std::string>> scheme_catalog() {
    return {
        {"lattice", "configuration-space chain; needs potential, x1, x2, T, numerical.N"},
        {"fk", "imaginary-time kernel; needs potential, nu, x1, x2, T, grid; samples+seed for MC"},
        {"cameron", "complex-weight chain diagnostic; needs lambda, x1, x2, numerical.N"},
        {"ito", "higher-derivative regularization; needs x2, T, numerical.nu_list"},
        {"ps-lattice", "phase-space lattice in q; needs symbol (free|relativistic), x1, x2, T, N"},
        {"cs", "coherent-state lattice; needs symbol, p/q pins, T, numerical.N"},
        {"dk", "phase-space Wiener regularization; needs symbol, p/q pins, T, nu_list; "
               "samples+seed for the MC cross-check"},
    };
}

}  // namespace pathint
