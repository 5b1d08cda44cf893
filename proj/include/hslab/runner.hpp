// runner.hpp — batch front end shared by the CLI and the test suites.
//
// A run is driven by a single JSON config (unknown keys rejected); command
// line flags override config keys.  Reports carry the artifact version, a
// hash of the effective config, and the grid provenance, and contain no
// timestamps, so identical seed + config give byte-identical output.
//
// Exit codes: 0 success, 1 mathematical violation, 2 usage/config error.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hslab/extremal.hpp"
#include "hslab/inequalities.hpp"

namespace hslab::run {

inline constexpr const char* kVersion = "1.0.0";

struct GridSpec {
    double s_min = -12.0;
    double s_max = 12.0;
    int count = 2048;
};

struct QuadSpec {
    int dimension = 3;
    int order = 12;
};

struct FieldSpec {
    std::string kind = "gaussian";  // gaussian | csv
    double sigma = 1.0;
    double mu = 0.0;
    std::string path;
};

struct SearchSpec {
    std::string id = "hardy_dilation";
    std::string family = "log_gaussian";
    std::string direction = "minimize";
    int budget = 500;
};

struct RunConfig {
    GridSpec grid;
    QuadSpec quad;
    std::uint64_t seed = 20240817;
    double tol_identity = 1e-10;
    double tol_inequality = 1e-9;
    std::vector<std::string> ids;  // empty = whole registry
    std::string method = "fast-convolution";
    std::string scheme = "spectral";
    int trials = 6;
    std::string out_dir = ".";
    std::map<std::string, std::vector<double>> params;  // overrides per parameter name
    FieldSpec field;
    std::vector<double> times{0.1};
    SearchSpec search;
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& why) : std::runtime_error(why) {}
};

RunConfig parse_config_text(const std::string& json_text);
RunConfig load_config_file(const std::string& path);

std::uint64_t config_hash(const RunConfig& cfg);
std::string config_to_json(const RunConfig& cfg);

ineq::CertifyOptions options_from(const RunConfig& cfg);

// parameter grids an entry is certified over by default
std::vector<ineq::ParamSet> default_params(const std::string& id, const RunConfig& cfg);

// seeded trial set for one entry (radial mixtures, a non-radial companion
// where the entry allows it, bump trials for support-constrained entries)
std::vector<ineq::Trial> build_trials(const std::string& id, const std::vector<ineq::ParamSet>& params,
                                      const RunConfig& cfg);

struct VerifyOutcome {
    int exit_code = 0;
    std::string report_json;
    std::string report_csv;
    int violations = 0;
    int identity_failures = 0;
    int anomalies = 0;
    std::size_t records = 0;
};

VerifyOutcome run_verify(const RunConfig& cfg);

struct EvolveOutcome {
    int exit_code = 0;
    std::vector<std::pair<std::string, std::string>> dumps;  // filename -> csv text
    double max_cross_method_discrepancy = 0.0;
};

EvolveOutcome run_evolve(const RunConfig& cfg);

struct SpectrumOutcome {
    int exit_code = 0;
    std::string spectrum_csv;
    std::string deviations_json;
    double shift_deviation = 0.0;
    double generator_deviation = 0.0;
    double semigroup_deviation = 0.0;
};

SpectrumOutcome run_spectrum(const RunConfig& cfg);

struct SearchOutcome {
    int exit_code = 0;
    std::string report_json;
};

SearchOutcome run_search(const RunConfig& cfg);

}  // namespace hslab::run
