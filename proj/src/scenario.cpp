#include "kcoh/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <set>

namespace kcoh {

namespace {

std::vector<int> read_roots(const Algebra& g, const json& j, const char* name) {
    std::vector<int> out;
    if (!j.contains(name)) return out;
    for (auto& r : j.at(name)) out.push_back(root_from_literal(g, r));
    return out;
}

}  // namespace

Scenario load_scenario(const json& j, SignConvention conv) {
    Scenario s;
    s.source = j;
    s.name = j.value("name", std::string("scenario"));
    std::vector<SimpleFactor> fs;
    for (auto& f : j.at("algebra"))
        fs.push_back({parse_family(f.at("family").get<std::string>()), f.at("rank").get<int>()});
    s.alg = Algebra::build(fs, conv);
    const auto& roots = j.at("roots");
    s.lo = read_roots(*s.alg, roots, "lo");
    s.lf = read_roots(*s.alg, roots, "lf");
    s.mf = read_roots(*s.alg, roots, "mf");
    s.plus = read_roots(*s.alg, roots, "plus");
    if (j.contains("cartan_split")) {
        const auto& cs = j.at("cartan_split");
        s.cartan_split = cs.is_string() ? cs.get<std::string>() : cs.value("mode", std::string("zd_perp"));
    }
    s.zd = parse_element(*s.alg, j.at("zd"));
    if (j.contains("mn_row") && !j.at("mn_row").is_null()) s.mn_row = j.at("mn_row").get<std::string>();
    if (j.contains("hw")) s.hw = j.at("hw");
    if (j.contains("eps_flip"))
        for (auto& r : j.at("eps_flip")) s.eps_flip.push_back(root_from_literal(*s.alg, r));
    return s;
}

Scenario load_scenario_file(const std::string& path, SignConvention conv) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scenario file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::runtime_error("malformed JSON in " + path + ": " + e.what());
    }
    return load_scenario(j, conv);
}

Scenario with_convention(const Scenario& s, SignConvention conv) { return load_scenario(s.source, conv); }

std::string Classification::str() const {
    return std::string(standard ? "standard" : "non-standard") + (ke ? " KE" : " KO");
}

Classification classify(const Decomposition& d, const Scenario& s) {
    Classification c;
    c.standard = !s.mn_row.has_value();
    c.ke = d.dim_a == 3;
    return c;
}

namespace {

void check_closed(const Algebra& g, const std::vector<int>& set, const std::string& name) {
    std::set<int> in(set.begin(), set.end());
    for (int a : set)
        for (int b : set) {
            int s = g.sum(a, b);
            if (s >= 0 && !in.count(s))
                throw ValidationError(name + "_closed", g.root_str(a) + " + " + g.root_str(b) + " leaves the set");
        }
}

void check_symmetric(const Algebra& g, const std::vector<int>& set, const std::string& name) {
    std::set<int> in(set.begin(), set.end());
    for (int a : set)
        if (!in.count(g.neg(a))) throw ValidationError(name + "_symmetric", "-" + g.root_str(a) + " missing");
}

bool in_span(const std::vector<QVec>& basis, const QVec& v) { return coordinates_in(basis, v).has_value(); }

}  // namespace

Decomposition validate(const Scenario& s) {
    const Algebra& g = *s.alg;
    Decomposition d;
    d.zd = s.zd;

    // Partition: every root in exactly one of lo, lf, mf, plus, minus.
    std::vector<int> owner(g.nroots(), -1);
    const std::vector<const std::vector<int>*> parts = {&s.lo, &s.lf, &s.mf, &s.plus};
    const char* names[] = {"lo", "lf", "mf", "plus"};
    for (int p = 0; p < 4; ++p)
        for (int r : *parts[p]) {
            if (owner[r] >= 0)
                throw ValidationError("partition_disjoint", g.root_str(r) + " listed in " + names[owner[r]] +
                                                                " and " + names[p]);
            owner[r] = p;
        }
    for (int r = 0; r < g.nroots(); ++r)
        if (owner[r] < 0) d.minus.push_back(r);
    {
        std::set<int> neg_plus;
        for (int r : s.plus) neg_plus.insert(g.neg(r));
        if (neg_plus != std::set<int>(d.minus.begin(), d.minus.end()))
            throw ValidationError("minus_is_neg_plus", "R'_- differs from -R'_+");
    }
    check_symmetric(g, s.lo, "lo");
    check_symmetric(g, s.lf, "lf");
    check_symmetric(g, s.mf, "mf");
    for (int a : s.lo)
        for (int b : s.lf)
            if (sgn(g.ip(a, b)) != 0)
                throw ValidationError("lo_perp_lf", g.root_str(a) + " not orthogonal to " + g.root_str(b));
    check_closed(g, s.lo, "lo");
    check_closed(g, s.lf, "lf");
    {
        std::vector<int> u = s.lf;
        u.insert(u.end(), s.mf.begin(), s.mf.end());
        check_closed(g, u, "lf_mf");
    }

    if (s.cartan_split != "zd_perp")
        throw ValidationError("cartan_split", "unsupported mode '" + s.cartan_split + "'");
    if (d.zd.is_zero() || !d.zd.e.empty()) throw ValidationError("zd_in_cartan", "Z_D must be a nonzero Cartan element");
    CompactSpace cs(s.alg);
    QVec zc;
    try {
        zc = cs.coords(d.zd);
    } catch (const std::invalid_argument&) {
        throw ValidationError("zd_compact", "Z_D is not in the compact real form");
    }
    Q2i zz = killing(d.zd, d.zd);
    d.zd_norm2 = zz.re;
    if (!zz.im.is_zero() || d.zd_norm2.sign() >= 0) throw ValidationError("zd_negative", "B(Z_D, Z_D) must be < 0");

    // l: Cartan directions orthogonal to Z_D plus F, G of lo and lf.
    const int r = g.rank();
    {
        QVec w = cs.killing_row(d.zd);
        QMat eq(1, QVec(w.begin(), w.begin() + r));
        for (auto& v : nullspace(eq, r)) {
            QVec full(g.dim(), Q2());
            std::copy(v.begin(), v.end(), full.begin());
            d.l_basis.push_back(cs.element(full));
        }
    }
    auto add_fg = [&](std::vector<XElem>& out, const std::vector<int>& roots) {
        for (int a : roots)
            if (g.positive(a)) {
                auto [f, gg] = compact_generators(g, a);
                out.push_back(f);
                out.push_back(gg);
            }
    };
    add_fg(d.l_basis, s.lo);
    add_fg(d.l_basis, s.lf);
    add_fg(d.m_basis, s.mf);
    add_fg(d.m_basis, s.plus);
    if (static_cast<int>(d.l_basis.size() + d.m_basis.size()) + 1 != g.dim())
        throw ValidationError("dimension", "dim l + 1 + dim m != dim g");

    std::vector<QVec> lc;
    for (auto& x : d.l_basis) lc.push_back(cs.coords(x));
    for (size_t i = 0; i < d.l_basis.size(); ++i)
        for (size_t j = i + 1; j < d.l_basis.size(); ++j)
            if (!in_span(lc, cs.coords(bracket(d.l_basis[i], d.l_basis[j]))))
                throw ValidationError("l_subalgebra", "l is not closed under the bracket");

    auto a = cs.centralizer_perp(d.l_basis, d.l_basis);
    d.dim_a = static_cast<int>(a.size());
    for (auto& v : a) d.a_basis.push_back(cs.element(v));
    if (d.dim_a != 1 && d.dim_a != 3)
        throw ValidationError("dim_a", "dim a = " + std::to_string(d.dim_a) + ", expected 1 or 3");
    if (!in_span(a, zc)) throw ValidationError("zd_in_a", "Z_D is not in C_g(l) intersected with l-perp");
    for (auto& x : d.a_basis)
        for (auto& y : d.a_basis)
            if (!in_span(a, cs.coords(bracket(x, y)))) throw ValidationError("a_subalgebra", "a is not closed");

    // z(l): x = sum c_k l_k with [x, l_j] = 0.
    {
        const int nl = static_cast<int>(d.l_basis.size());
        QMat eq;
        std::vector<std::vector<QVec>> br(nl, std::vector<QVec>(nl));
        for (int k = 0; k < nl; ++k)
            for (int j = 0; j < nl; ++j) br[k][j] = cs.coords(bracket(d.l_basis[k], d.l_basis[j]));
        for (int j = 0; j < nl; ++j)
            for (int comp = 0; comp < g.dim(); ++comp) {
                QVec row(nl, Q2());
                bool nz = false;
                for (int k = 0; k < nl; ++k) {
                    row[k] = br[k][j][comp];
                    nz = nz || !row[k].is_zero();
                }
                if (nz) eq.push_back(std::move(row));
            }
        for (auto& c : nullspace(eq, nl)) {
            XElem x(g);
            for (int k = 0; k < nl; ++k)
                if (!c[k].is_zero()) x = x + Q2i(c[k]) * d.l_basis[k];
            d.zl_basis.push_back(x);
        }
    }

    if (d.dim_a == 3) {
        for (int p : g.positive_roots()) {
            auto [f, gg] = compact_generators(g, p);
            if (in_span(a, cs.coords(f)) && in_span(a, cs.coords(gg))) {
                d.alpha = p;
                break;
            }
        }
        if (d.alpha < 0) throw ValidationError("a_root", "no root alpha with F_alpha, G_alpha in a");
    }
    return d;
}

}  // namespace kcoh
