// Text and JSON forms of roots, scalars and algebra elements.
#pragma once

#include "kcoh/liealg.hpp"

#include <json.hpp>
#include <string>
#include <vector>

namespace kcoh {

using json = nlohmann::json;

// Doubled epsilon coordinates from a JSON array of numbers or strings like "1/2",
// or from a comma separated string "1,-1,0".
std::vector<int> parse_c2(const json& j);
std::vector<int> parse_c2(const std::string& s);
std::string c2_key(const std::vector<int>& c2);  // "1,-1/2,0"

// Pads or checks a row-local coordinate vector against the algebra's epsilon space.
int root_from_literal(const Algebra& g, const json& j);

// {"H": {"v": coeff}, "E": {"root": coeff}} with coefficients parsed by parse_q2i.
XElem parse_element(const Algebra& g, const json& j);
json element_to_json(const XElem& x);

// Parseable form of an exact scalar, e.g. "-1/2*i".
std::string q2i_literal(const Q2i& c);

// 17 significant digits, lowercase scientific.
std::string fmt_sci(double v);

}  // namespace kcoh
