#include "kcoh/literal.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace kcoh {

namespace {

int doubled(const std::string& tok) {
    Rational r(tok);
    r.canonicalize();
    Rational d = 2 * r;
    if (d.get_den() != 1) throw std::invalid_argument("coordinate '" + tok + "' is not a half-integer");
    return static_cast<int>(d.get_num().get_si());
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t"), b = s.find_last_not_of(" \t");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
}

}  // namespace

std::string q2i_literal(const Q2i& c) {
    std::string out;
    auto term = [&](const Rational& r, const char* suffix) {
        if (sgn(r) == 0) return;
        std::string v = r.get_str();
        if (out.empty()) {
            out = v;
        } else {
            out += sgn(r) < 0 ? v : "+" + v;
        }
        out += suffix;
    };
    term(c.re.a, "");
    term(c.re.b, "*sqrt2");
    term(c.im.a, "*i");
    term(c.im.b, "*sqrt2*i");
    return out.empty() ? "0" : out;
}

std::vector<int> parse_c2(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (!tok.empty() && tok[0] == '+') tok = tok.substr(1);
        if (tok.empty()) throw std::invalid_argument("empty coordinate in '" + s + "'");
        out.push_back(doubled(tok));
    }
    return out;
}

std::vector<int> parse_c2(const json& j) {
    if (j.is_string()) return parse_c2(j.get<std::string>());
    if (!j.is_array()) throw std::invalid_argument("root literal must be an array or string");
    std::vector<int> out;
    for (auto& v : j) {
        if (v.is_number_integer()) {
            out.push_back(2 * v.get<int>());
        } else if (v.is_number()) {
            double d = 2 * v.get<double>();
            if (std::abs(d - std::round(d)) > 1e-12)
                throw std::invalid_argument("coordinate is not a half-integer");
            out.push_back(static_cast<int>(std::lround(d)));
        } else if (v.is_string()) {
            out.push_back(doubled(v.get<std::string>()));
        } else {
            throw std::invalid_argument("bad coordinate in root literal");
        }
    }
    return out;
}

std::string c2_key(const std::vector<int>& c2) {
    std::string s;
    for (size_t k = 0; k < c2.size(); ++k) {
        if (k) s += ",";
        s += c2[k] % 2 == 0 ? std::to_string(c2[k] / 2) : std::to_string(c2[k]) + "/2";
    }
    return s;
}

namespace {
std::vector<int> fit_dim(const Algebra& g, std::vector<int> c2) {
    if (static_cast<int>(c2.size()) > g.eps_dim())
        throw std::invalid_argument("literal has more coordinates than the algebra");
    c2.resize(g.eps_dim(), 0);
    return c2;
}
}  // namespace

int root_from_literal(const Algebra& g, const json& j) {
    auto c2 = fit_dim(g, parse_c2(j));
    int r = g.root_index(c2);
    if (r < 0) throw std::invalid_argument("not a root: " + c2_key(c2));
    return r;
}

XElem parse_element(const Algebra& g, const json& j) {
    XElem x(g);
    if (j.is_null()) return x;
    if (!j.is_object()) throw std::invalid_argument("element literal must be an object");
    for (auto& [key, val] : j.items()) {
        if (key != "H" && key != "E") throw std::invalid_argument("element literal key '" + key + "'");
        for (auto& [rk, cv] : val.items()) {
            Q2i c = parse_q2i(cv.is_string() ? cv.get<std::string>() : cv.dump());
            auto c2 = fit_dim(g, parse_c2(rk));
            if (key == "H") {
                for (int k = 0; k < g.eps_dim(); ++k)
                    if (c2[k]) x.add_h(k, c * Q2i(rat(c2[k], 2)));
            } else {
                int r = g.root_index(c2);
                if (r < 0) throw std::invalid_argument("E term on non-root " + c2_key(c2));
                x.add_e(r, c);
            }
        }
    }
    return x;
}

json element_to_json(const XElem& x) {
    json out = json::object();
    const Algebra& g = *x.alg;
    if (!x.h.empty()) {
        // one entry per epsilon direction
        json h = json::object();
        for (auto& [k, c] : x.h) {
            std::vector<int> v(g.eps_dim(), 0);
            v[k] = 2;
            h[c2_key(v)] = q2i_literal(c);
        }
        out["H"] = h;
    }
    if (!x.e.empty()) {
        json e = json::object();
        for (auto& [a, c] : x.e) e[c2_key(g.root(a).c2)] = q2i_literal(c);
        out["E"] = e;
    }
    return out;
}

std::string fmt_sci(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

}  // namespace kcoh
