// hslab — batch front end.
//
//   hslab verify   [--config cfg.json] [--seed S] [--out DIR] [--ids a,b,c] [--method M]
//   hslab evolve   [--config cfg.json] [--t 0.1,1] [--method M|all] [--out DIR]
//   hslab spectrum [--config cfg.json] [--out DIR]
//   hslab search   [--config cfg.json] [--ids ID] [--family F] [--direction min|max]
//                  [--budget N] [--seed S] [--out DIR]
//
// Exit codes: 0 success, 1 mathematical violation, 2 usage/config error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hslab/runner.hpp"

namespace {

namespace fs = std::filesystem;
using hslab::run::RunConfig;

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

void write_file(const fs::path& path, const std::string& text) {
    if (!path.parent_path().empty()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw hslab::run::ConfigError("cannot write " + path.string());
    out << text;
}

struct CommonFlags {
    std::string config_path;
    std::string out_dir;
    std::string ids;
    std::string method;
    std::string times;
    std::uint64_t seed = 0;
    bool seed_set = false;
};

RunConfig make_config(const CommonFlags& flags) {
    RunConfig cfg = flags.config_path.empty() ? RunConfig{} : hslab::run::load_config_file(flags.config_path);
    if (flags.seed_set) cfg.seed = flags.seed;
    if (!flags.out_dir.empty()) cfg.out_dir = flags.out_dir;
    if (!flags.method.empty()) cfg.method = flags.method;
    if (!flags.ids.empty()) {
        cfg.ids = split_list(flags.ids);
        for (const auto& id : cfg.ids)
            if (!hslab::ineq::is_registered(id)) throw hslab::run::ConfigError("unknown inequality id: " + id);
    }
    if (!flags.times.empty()) {
        cfg.times.clear();
        for (const auto& t : split_list(flags.times)) cfg.times.push_back(std::stod(t));
    }
    if (cfg.method != "all") hslab::semigroup::method_from_string(cfg.method);  // validate
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for dilation-type Hardy and Sobolev bounds in log-polar coordinates"};
    app.require_subcommand(1);

    CommonFlags flags;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", flags.config_path, "JSON config file");
        cmd->add_option("--out", flags.out_dir, "output directory");
        cmd->add_option("--seed", flags.seed, "random seed")->each([&](const std::string&) { flags.seed_set = true; });
        cmd->add_option("--method", flags.method, "evolve method: direct | fast-convolution | mellin-multiplier | all");
    };

    CLI::App* verify = app.add_subcommand("verify", "run the certification suite and write reports");
    add_common(verify);
    verify->add_option("--ids", flags.ids, "comma-separated inequality ids (default: all)");

    CLI::App* evolve = app.add_subcommand("evolve", "apply P_t to a profile and dump CSV per t");
    add_common(evolve);
    evolve->add_option("--t", flags.times, "comma-separated times");

    CLI::App* spectrum = app.add_subcommand("spectrum", "dump Mellin data and diagonalization deviations");
    add_common(spectrum);

    CLI::App* search = app.add_subcommand("search", "extremal search over a trial family");
    add_common(search);
    search->add_option("--ids", flags.ids, "inequality id to probe");
    std::string family, direction;
    int budget = 0;
    search->add_option("--family", family, "trial family");
    search->add_option("--direction", direction, "minimize | maximize");
    search->add_option("--budget", budget, "evaluation budget");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        RunConfig cfg = make_config(flags);
        const fs::path out_dir = cfg.out_dir;

        if (verify->parsed()) {
            const auto outcome = hslab::run::run_verify(cfg);
            write_file(out_dir / "report.json", outcome.report_json);
            write_file(out_dir / "report.csv", outcome.report_csv);
            std::cout << "records " << outcome.records << ", violations " << outcome.violations
                      << ", identity failures " << outcome.identity_failures << ", anomalies "
                      << outcome.anomalies << "\n";
            return outcome.exit_code;
        }
        if (evolve->parsed()) {
            const auto outcome = hslab::run::run_evolve(cfg);
            for (const auto& [name, text] : outcome.dumps) write_file(out_dir / name, text);
            if (cfg.method == "all")
                std::cout << "max cross-method discrepancy " << outcome.max_cross_method_discrepancy << "\n";
            return outcome.exit_code;
        }
        if (spectrum->parsed()) {
            const auto outcome = hslab::run::run_spectrum(cfg);
            write_file(out_dir / "spectrum.csv", outcome.spectrum_csv);
            write_file(out_dir / "deviations.json", outcome.deviations_json);
            std::cout << "shift " << outcome.shift_deviation << ", generator " << outcome.generator_deviation
                      << ", semigroup " << outcome.semigroup_deviation << "\n";
            return outcome.exit_code;
        }
        if (search->parsed()) {
            if (!flags.ids.empty()) cfg.search.id = split_list(flags.ids).front();
            if (!family.empty()) cfg.search.family = family;
            if (!direction.empty())
                cfg.search.direction = direction == "min" ? "minimize" : (direction == "max" ? "maximize" : direction);
            if (budget > 0) cfg.search.budget = budget;
            const auto outcome = hslab::run::run_search(cfg);
            write_file(out_dir / "search.json", outcome.report_json);
            std::cout << (outcome.exit_code == 0 ? "search complete\n" : "counterexample found\n");
            return outcome.exit_code;
        }
    } catch (const hslab::run::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
