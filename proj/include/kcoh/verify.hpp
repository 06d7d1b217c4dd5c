// Invariant suite shared by the CLI verify command and the acceptance binary.
#pragma once

#include "kcoh/ricci.hpp"

namespace kcoh {

struct TGrid {
    double start = -3, stop = 3;
    int count = 25;
    bool exclude_zero = true;
    double gap = 0.1;  // half-width of the hole around 0 when exclude_zero straddles it

    // Throws std::invalid_argument for count < 1, stop < start, or a grid containing 0.
    std::vector<double> points() const;
};

struct CheckResult {
    std::string name;
    bool pass = true;
    double value = 0;  // worst observed error (or detection margin)
    double tol = 0;
    std::string detail;
    json to_json() const;
};

// Exact Chevalley kernel identities: Jacobi on (E, E, E) and (H, E, E) triples,
// N sign symmetries, F/G Killing table, span closure and the Cartan pairing identity.
std::vector<CheckResult> chevalley_checks(const Algebra& g);

struct ScenarioReport {
    std::string scenario;
    std::string classification;
    std::vector<CheckResult> checks;
    bool pass() const;
    json to_json() const;
};

struct VerifyOptions {
    std::vector<double> tgrid = TGrid{}.points();
    double dt = 1e-4;
    bool chevalley = true;
    std::optional<json> profile;  // overrides the per-scenario default
};

ScenarioReport verify_scenario(const Scenario& s, const VerifyOptions& o = {});

// Loads every *.json in dir (sorted by file name), or a single file.
std::vector<ScenarioReport> verify_path(const std::string& path, const VerifyOptions& o = {});

// Individual checks, also used by the acceptance binary.
CheckResult check_integrability(const Scenario& s, const Decomposition& d, const CRPairing& p,
                                const std::vector<double>& ts);
CheckResult check_m10_dim(const Scenario& s, const Decomposition& d, const CRPairing& p);
CheckResult check_j_oracle(const Scenario& s, const CRPairing& p, const OptimalBasis& b, const std::vector<double>& ts);
CheckResult check_orthonormal(const OptimalBasis& b);
CheckResult check_omega_identities(const Scenario& s, const Decomposition& d, const OptimalBasis& b);
CheckResult check_closedness(const MetricProfile& pr, const Decomposition& d, const std::vector<double>& ts);
CheckResult check_paths(const RicciEngine& e, const CRPairing& p, const std::vector<double>& ts);
CheckResult check_zrho(const RicciEngine& e, const std::vector<double>& ts, double dt);
CheckResult check_convention(const Scenario& s, const std::vector<double>& ts, double dt);
CheckResult check_hprime(const RicciEngine& e, const std::vector<double>& ts, double dt);

// Profile used when none is given: the KE profile for non-standard KE scenarios, else f = t.
json default_profile_json(const Scenario& s, const Decomposition& d);

}  // namespace kcoh
