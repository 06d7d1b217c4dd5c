// Morimoto-Nagano rows, holomorphic subspaces m10(t) and CR-dual root pairings.
#pragma once

#include "kcoh/scenario.hpp"

#include <string>
#include <vector>

namespace kcoh {

struct HWPair {
    std::vector<int> alpha, alpha_d;  // doubled epsilon coordinates of g_F
    int ell;
};

struct MNRow {
    std::string id;
    std::string gf_name, lf_name, zd_text, m10_text;  // human-readable echo
    std::vector<SimpleFactor> gf;                      // shipped instance
    std::vector<std::vector<int>> lf_roots;            // all roots of l_F (doubled coords)
    json zd;                                           // element literal
    std::vector<HWPair> hw;
};

const std::vector<MNRow>& catalog();
const MNRow& row(const std::string& id);  // throws std::invalid_argument

// Scenario with g = g_F for the row.
json row_scenario_json(const MNRow& r);

struct CatalogError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CRPair {
    int alpha = -1, alpha_d = -1;  // root indices in the scenario algebra
    int eps = 1;
    int ell = 1;
    int module = 0;
};

struct CRPairing {
    std::vector<CRPair> pairs;  // one entry per root of R_F^(+), module-major BFS order
    int nmodules = 0;
    int find(int alpha) const;  // index into pairs or -1
};

// Highest-weight data for the scenario: its "hw" field, else the row's (same algebra required).
std::vector<std::pair<std::pair<int, int>, int>> scenario_hw(const Scenario& s);

// Expands each module under l_F, fixes signs (self-dual eps = +1, eps_a = eps_{a^d}) and
// cross-checks counts, weights and exponents. Empty pairing for standard scenarios.
CRPairing cr_pairing(const Scenario& s, const Decomposition& d);

// Basis of m10(t): E_a + eps e^{2 ell t} E_{-a^d} for a in R_F^(+), then E_b for b in R'_+.
std::vector<CElem> expand_holomorphic(const Scenario& s, const CRPairing& p, double t);

struct IntegrabilityReport {
    bool ok = true;
    double max_residual = 0;
    std::vector<std::string> violations;  // first few offending pairs
};

// [l + m10(t), l + m10(t)] inside l + m10(t), by least-squares membership.
IntegrabilityReport integrability_check(const Scenario& s, const Decomposition& d, const CRPairing& p,
                                        double t, double tol = 1e-12);

}  // namespace kcoh
