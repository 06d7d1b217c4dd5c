// Root partitions and the decomposition g = l + R Z_D + m.
#pragma once

#include "kcoh/exact_linalg.hpp"
#include "kcoh/literal.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kcoh {

struct Scenario {
    std::string name;
    AlgebraPtr alg;
    std::vector<int> lo, lf, mf, plus;  // root indices; lo, lf, mf closed under negation
    std::string cartan_split = "zd_perp";
    XElem zd;
    std::optional<std::string> mn_row;
    json hw;      // optional highest-weight pairs in this algebra's coordinates
    std::vector<int> eps_flip;  // roots whose CR sign is negated after normalization (perturbation hook)
    json source;  // the JSON the scenario was read from
};

Scenario load_scenario(const json& j, SignConvention conv = SignConvention::Standard);
Scenario load_scenario_file(const std::string& path, SignConvention conv = SignConvention::Standard);
// Same data over the algebra rebuilt with another sign table.
Scenario with_convention(const Scenario& s, SignConvention conv);

struct ValidationError : std::runtime_error {
    std::string condition;
    ValidationError(std::string cond, const std::string& detail)
        : std::runtime_error(cond + ": " + detail), condition(std::move(cond)) {}
};

struct Decomposition {
    std::vector<XElem> l_basis, m_basis, a_basis, zl_basis;
    std::vector<int> minus;  // R'_- = -R'_+
    XElem zd;
    Q2 zd_norm2;  // B(Z_D, Z_D) < 0
    int dim_a = 0;
    int alpha = -1;  // KE only: positive root with F_alpha, G_alpha in a
};

Decomposition validate(const Scenario& s);

struct Classification {
    bool standard = true;
    bool ke = false;
    std::string str() const;  // e.g. "non-standard KE"
};

Classification classify(const Decomposition& d, const Scenario& s);

}  // namespace kcoh
