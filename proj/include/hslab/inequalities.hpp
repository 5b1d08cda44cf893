// inequalities.hpp — registry of the certified inequalities and identities,
// and the certifier that evaluates both sides on a trial field.
//
// Every entry is stored in its printed orientation (lower_bound: lhs >= rhs,
// upper_bound: lhs <= rhs).  ratio = lhs / rhs, margin is the favorable
// slack (lhs - rhs for lower bounds, rhs - lhs for upper bounds), and an
// explicit-constant entry holds when margin >= -tol * |rhs|.  Entries whose
// constant the statement leaves unspecified are certified informationally:
// the ratio is an empirical lower bound for the best constant and no
// violation verdict is possible.
//
// Identities are certified with margin = |lhs - rhs| against a relative
// tolerance.

#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hslab/field.hpp"
#include "hslab/operators.hpp"
#include "hslab/semigroup.hpp"

namespace hslab::ineq {

enum class Kind { inequality, identity };
enum class Direction { lower_bound, upper_bound };
enum class Verdict { holds, violated, identity_ok, identity_fail };

std::string verdict_name(Verdict v);

struct NullFunction : std::runtime_error {
    NullFunction() : std::runtime_error("NullFunction: certification needs a nonzero trial field") {}
};
struct DomainViolation : std::invalid_argument {
    explicit DomainViolation(const std::string& why) : std::invalid_argument(why) {}
};
struct SupportViolation : std::runtime_error {
    explicit SupportViolation(const std::string& why) : std::runtime_error(why) {}
};

struct ParamSet {
    int n = 3;
    double p = 2.0;
    double q = 0.0;
    double delta = 0.0;
    double eps = 0.0;
    double R = 0.0;
    double lambda = 0.0;
    double t = 0.0;
};

struct CertifyOptions {
    DerivScheme scheme = DerivScheme::spectral;
    semigroup::EvolveMethod method = semigroup::EvolveMethod::fast_convolution;
    double identity_tol = 1e-10;
    double inequality_tol = 1e-9;
    bool assume_radial = false;  // required when the field uses a marker quadrature
};

struct CertificateRecord {
    std::string id;
    ParamSet params;
    std::string trial;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    double margin = 0.0;
    Verdict verdict = Verdict::holds;
    double tolerance = 0.0;
    // companion evaluation for entries carrying a second constant reading
    bool has_alt = false;
    double alt_rhs = 0.0;
    double alt_margin = 0.0;
};

// Gaussian window descriptor of one weighted integrand in g-space:
// e^{tilt * s} |g|^{power}.  Trial families use these to size their grids.
struct WeightedWindow {
    double tilt = 0.0;
    double power = 2.0;
};

struct InequalityDefinition {
    std::string id;
    Kind kind = Kind::inequality;
    Direction direction = Direction::upper_bound;
    bool has_explicit_constant = false;
    bool anomaly_class = false;  // violations are flagged, not failed
    std::string statement;
    std::string note;
    std::function<double(const ParamSet&)> constant;  // NaN when unspecified
    std::function<bool(const ParamSet&, std::string*)> in_domain;
    std::function<std::vector<WeightedWindow>(const ParamSet&)> windows;
    std::function<void(const ScalarField&, const ParamSet&, const CertifyOptions&, CertificateRecord&)> evaluate;
};

const std::vector<InequalityDefinition>& registry();
const InequalityDefinition& find_definition(const std::string& id);
bool is_registered(const std::string& id);

double stubbe_constant(int n);  // K(n)

CertificateRecord certify(const std::string& id, const ScalarField& f, const ParamSet& params,
                          const CertifyOptions& options = {});

struct Trial {
    std::string label;
    ScalarField field;
    bool radial = true;
};

struct SuiteSkip {
    std::string id;
    std::string trial;
    ParamSet params;
    std::string reason;
};

struct SuiteResult {
    std::vector<CertificateRecord> records;
    std::vector<SuiteSkip> skips;
};

// Cross product ids x trials x params, in deterministic order; per-record
// domain violations become logged skips and the suite continues.
SuiteResult certify_suite(const std::vector<std::string>& ids, const std::vector<Trial>& trials,
                          const std::vector<ParamSet>& params, const CertifyOptions& options = {});

}  // namespace hslab::ineq
