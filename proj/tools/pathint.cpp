#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include "pathint/acceptance.hpp"
#include "pathint/errors.hpp"
#include "pathint/harness.hpp"

int main(int argc, char** argv) {
    CLI::App app{"pathint: numerical laboratory for path-integral regularization schemes"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    std::uint64_t seed = 0;
    int threads = 0;
    bool seed_given = false, out_given = false;

    auto* run = app.add_subcommand("run", "run an experiment from a config file");
    run->add_option("--config", config_path, "experiment config file")->required();
    run->add_option("--seed", seed, "override the random seed")->each([&](const std::string&) {
        seed_given = true;
    });
    run->add_option("--out", out_dir, "output directory")->each([&](const std::string&) {
        out_given = true;
    });
    run->add_option("--threads", threads, "worker threads for sampling");

    auto* schemes = app.add_subcommand("schemes", "list schemes and their required fields");
    auto* check = app.add_subcommand("check", "run the acceptance suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run->parsed()) {
            pathint::ExperimentConfig cfg = pathint::load_config_file(config_path);
            if (seed_given) {
                cfg.seed = seed;
                cfg.seed_set = true;
            }
            if (out_given) cfg.out_dir = out_dir;
            if (threads > 0) {
                cfg.threads = threads;
            } else if (const char* env = std::getenv("PATHINT_THREADS")) {
                cfg.threads = std::max(1, std::atoi(env));
            }
            auto rec = pathint::run_experiment(cfg);
            std::cout << "wrote " << cfg.out_dir << "/" << cfg.name << ".csv and .json ("
                      << rec.rows.size() << " rows";
            if (!rec.row_errors.empty()) std::cout << ", " << rec.row_errors.size() << " row errors";
            std::cout << ")\n";
            for (const auto& [k, v] : rec.summary) std::cout << "  " << k << " = " << v << "\n";
            if (rec.threshold_failed) {
                std::cout << "threshold check FAILED\n";
                return 1;
            }
            return 0;
        }
        if (schemes->parsed()) {
            for (const auto& [name, fields] : pathint::scheme_catalog())
                std::cout << name << "\n    " << fields << "\n";
            return 0;
        }
        if (check->parsed()) {
            int failures = pathint::run_acceptance(std::cout);
            std::cout << (failures == 0 ? "all criteria passed\n"
                                        : std::to_string(failures) + " criteria failed\n");
            return failures == 0 ? 0 : 1;
        }
    } catch (const pathint::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
