#include "kcoh/mn_catalog.hpp"

#include "kcoh/numeric.hpp"

#include <cmath>
#include <deque>
#include <map>
#include <set>

namespace kcoh {

namespace {

using C2 = std::vector<int>;

C2 h(std::initializer_list<int> halves) { return C2(halves); }  // already doubled
C2 d(std::initializer_list<int> ints) {
    C2 v;
    for (int x : ints) v.push_back(2 * x);
    return v;
}

// All roots of an algebra satisfying a predicate on doubled coordinates.
std::vector<C2> roots_where(const std::vector<SimpleFactor>& gf, bool (*pred)(const C2&)) {
    auto g = Algebra::build(gf);
    std::vector<C2> out;
    for (int i = 0; i < g->nroots(); ++i)
        if (pred(g->root(i).c2)) out.push_back(g->root(i).c2);
    return out;
}

std::vector<MNRow> make_catalog() {
    std::vector<MNRow> rows;
    {
        MNRow r{"su2", "su2", "{0}", "-(i/2) H_{e1-e2}", "C(E_{e1-e2} + lambda E_{-e1+e2})",
                {{Family::A, 1}}, {}, json::parse(R"({"H":{"1,-1":"-1/2*i"}})"), {}};
        r.hw = {{d({1, -1}), d({1, -1}), 1}};
        rows.push_back(r);
    }
    {
        MNRow r{"su_n1", "su4", "su2 + R", "-i H_{e1-e2}",
                "C(E_{e1-e2} + lambda^2 E_{-e1+e2}) + (m(e1-e3) + lambda m(e2-e3)) + (m(e3-e2) + lambda m(e3-e1))",
                {{Family::A, 3}}, {d({0, 0, 1, -1}), d({0, 0, -1, 1})},
                json::parse(R"({"H":{"1,-1,0,0":"-1*i"}})"), {}};
        r.hw = {{d({1, -1, 0, 0}), d({1, -1, 0, 0}), 2},
                {d({1, 0, -1, 0}), d({0, -1, 1, 0}), 1},
                {d({0, -1, 1, 0}), d({1, 0, -1, 0}), 1}};
        rows.push_back(r);
    }
    {
        MNRow r{"su2+su2", "su2 + su2", "R", "-(i/2)(H_{e1-e2} + H_{e1'-e2'})",
                "C(E_{e1-e2} + lambda E_{-(e1'-e2')}) + C(E_{e1'-e2'} + lambda E_{-(e1-e2)})",
                {{Family::A, 1}, {Family::A, 1}}, {},
                json::parse(R"({"H":{"1,-1,0,0":"-1/2*i","0,0,1,-1":"-1/2*i"}})"), {}};
        r.hw = {{d({1, -1, 0, 0}), d({0, 0, 1, -1}), 1}, {d({0, 0, 1, -1}), d({1, -1, 0, 0}), 1}};
        rows.push_back(r);
    }
    {
        MNRow r{"so7", "so7", "su3", "-(2i/3)(H_{e1+e2} + H_{e3})",
                "(m(e1+e2) + lambda m(-e3)) + (m(e3) + lambda m(-e1-e2))", {{Family::B, 3}},
                roots_where({{Family::B, 3}},
                            [](const C2& c) { return c[0] + c[1] + c[2] == 0 && (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]) == 8; }),
                json::parse(R"({"H":{"1,1,0":"-2/3*i","0,0,1":"-2/3*i"}})"), {}};
        r.hw = {{d({1, 1, 0}), d({0, 0, 1}), 1}, {d({0, 0, 1}), d({1, 1, 0}), 1}};
        rows.push_back(r);
    }
    {
        MNRow r{"f4", "f4", "so7", "-2i H_{e1}",
                "(m(e1+e2) + lambda^2 m(-e1+e2)) + (m((e1+e2+e3+e4)/2) + lambda m((-e1+e2+e3+e4)/2))",
                {{Family::F4, 4}}, roots_where({{Family::F4, 4}}, [](const C2& c) { return c[0] == 0; }),
                json::parse(R"({"H":{"1,0,0,0":"-2*i"}})"), {}};
        r.hw = {{d({1, 1, 0, 0}), d({1, -1, 0, 0}), 2}, {h({1, 1, 1, 1}), h({1, -1, -1, -1}), 1}};
        rows.push_back(r);
    }
    {
        MNRow r{"so_odd", "so7", "so5", "-i H_{e1}", "m(e1+e2) + lambda m(-e1+e2)", {{Family::B, 3}},
                roots_where({{Family::B, 3}}, [](const C2& c) { return c[0] == 0; }),
                json::parse(R"({"H":{"1,0,0":"-1*i"}})"), {}};
        r.hw = {{d({1, 1, 0}), d({1, -1, 0}), 1}};
        rows.push_back(r);
    }
    {
        MNRow r{"so_even", "so8", "so6", "-i H_{e1}", "m(e1+e2) + lambda m(-e1+e2)", {{Family::D, 4}},
                roots_where({{Family::D, 4}}, [](const C2& c) { return c[0] == 0; }),
                json::parse(R"({"H":{"1,0,0,0":"-1*i"}})"), {}};
        r.hw = {{d({1, 1, 0, 0}), d({1, -1, 0, 0}), 1}};
        rows.push_back(r);
    }
    {
        MNRow r{"sp_n", "sp3", "sp1 + sp1", "-i H_{e1+e2}",
                "(m(2e1) + lambda^2 m(-2e2)) + (m(e1+e3) + lambda m(-e2+e3))", {{Family::C, 3}},
                {d({1, -1, 0}), d({-1, 1, 0}), d({0, 0, 2}), d({0, 0, -2})},
                json::parse(R"({"H":{"1,1,0":"-1*i"}})"), {}};
        r.hw = {{d({2, 0, 0}), d({0, 2, 0}), 2}, {d({1, 0, 1}), d({0, 1, -1}), 1}};
        rows.push_back(r);
    }
    return rows;
}

json c2_json(const C2& c) { return c2_key(c); }

}  // namespace

const std::vector<MNRow>& catalog() {
    static const std::vector<MNRow> rows = make_catalog();
    return rows;
}

const MNRow& row(const std::string& id) {
    for (auto& r : catalog())
        if (r.id == id) return r;
    throw std::invalid_argument("unknown Morimoto-Nagano row '" + id + "'");
}

json row_scenario_json(const MNRow& r) {
    auto g = Algebra::build(r.gf);
    std::set<C2> lf(r.lf_roots.begin(), r.lf_roots.end());
    json j;
    j["name"] = "mn_" + r.id;
    j["algebra"] = json::array();
    for (auto& f : r.gf) j["algebra"].push_back({{"family", family_name(f.family)}, {"rank", f.rank}});
    json lfj = json::array(), mfj = json::array();
    for (int i = 0; i < g->nroots(); ++i) {
        const C2& c = g->root(i).c2;
        (lf.count(c) ? lfj : mfj).push_back(c2_json(c));
    }
    j["roots"] = {{"lo", json::array()}, {"lf", lfj}, {"mf", mfj}, {"plus", json::array()}};
    j["cartan_split"] = {{"mode", "zd_perp"}};
    j["zd"] = r.zd;
    j["mn_row"] = r.id;
    return j;
}

int CRPairing::find(int alpha) const {
    for (size_t k = 0; k < pairs.size(); ++k)
        if (pairs[k].alpha == alpha) return static_cast<int>(k);
    return -1;
}

std::vector<std::pair<std::pair<int, int>, int>> scenario_hw(const Scenario& s) {
    std::vector<std::pair<std::pair<int, int>, int>> out;
    if (!s.mn_row) return out;
    const Algebra& g = *s.alg;
    if (!s.hw.is_null()) {
        for (auto& e : s.hw)
            out.push_back({{root_from_literal(g, e.at("alpha")), root_from_literal(g, e.at("alpha_d"))},
                           e.at("ell").get<int>()});
        return out;
    }
    const MNRow& r = row(*s.mn_row);
    std::vector<SimpleFactor> f = g.factors();
    bool same = f.size() == r.gf.size();
    for (size_t k = 0; same && k < f.size(); ++k)
        same = f[k].family == r.gf[k].family && f[k].rank == r.gf[k].rank;
    if (!same) throw CatalogError("scenario algebra differs from row " + r.id + " and no \"hw\" is given");
    for (auto& p : r.hw) {
        int a = g.root_index(p.alpha), b = g.root_index(p.alpha_d);
        if (a < 0 || b < 0) throw CatalogError("row " + r.id + ": highest-weight data is not a root");
        out.push_back({{a, b}, p.ell});
    }
    return out;
}

CRPairing cr_pairing(const Scenario& s, const Decomposition& dec) {
    CRPairing out;
    if (!s.mn_row) return out;
    const Algebra& g = *s.alg;
    auto hw = scenario_hw(s);
    std::set<int> mf(s.mf.begin(), s.mf.end());

    // BFS per module, starting sign +1.
    std::map<int, int> where;  // alpha -> index in out.pairs
    for (size_t m = 0; m < hw.size(); ++m) {
        auto [ad, ell] = hw[m];
        auto [a0, d0] = ad;
        if (where.count(a0)) throw CatalogError("module " + std::to_string(m) + " repeats an earlier module");
        std::deque<int> queue;
        out.pairs.push_back({a0, d0, 1, ell, static_cast<int>(m)});
        where[a0] = static_cast<int>(out.pairs.size()) - 1;
        queue.push_back(where[a0]);
        while (!queue.empty()) {
            CRPair cur = out.pairs[queue.front()];
            queue.pop_front();
            for (int b : s.lf) {
                int na = g.sum(b, cur.alpha);
                int nd = g.sum(b, g.neg(cur.alpha_d));
                if (na < 0 && nd < 0) continue;
                if (na < 0 || nd < 0)
                    throw CatalogError("component " + g.root_str(na < 0 ? nd : na) +
                                       " is not of the form E_a + eps lambda E_{-a^d}");
                Q2 ratio = g.N(b, g.neg(cur.alpha_d)) / g.N(b, cur.alpha);
                int eps;
                if (ratio == Q2(1)) {
                    eps = cur.eps;
                } else if (ratio == Q2(-1)) {
                    eps = -cur.eps;
                } else {
                    throw CatalogError("|eps| != 1 at " + g.root_str(na) + " (ratio " + ratio.str() + ")");
                }
                CRPair nxt{na, g.neg(nd), eps, cur.ell, static_cast<int>(m)};
                auto it = where.find(na);
                if (it != where.end()) {
                    const CRPair& old = out.pairs[it->second];
                    if (old.alpha_d != nxt.alpha_d || old.eps != nxt.eps || old.module != nxt.module)
                        throw CatalogError("inconsistent expansion at " + g.root_str(na));
                    continue;
                }
                out.pairs.push_back(nxt);
                where[na] = static_cast<int>(out.pairs.size()) - 1;
                queue.push_back(where[na]);
            }
        }
    }
    out.nmodules = static_cast<int>(hw.size());

    // Sign normalization, module by module.
    std::vector<int> flip(out.nmodules, 0);  // 0 undecided, +1 keep, -1 flip
    for (auto& p : out.pairs)
        if (p.alpha == p.alpha_d) flip[p.module] = p.eps;
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto& p : out.pairs) {
            auto it = where.find(p.alpha_d);
            if (it == where.end()) throw CatalogError("dual root " + g.root_str(p.alpha_d) + " outside R_F^(+)");
            const CRPair& q = out.pairs[it->second];
            if (q.module == p.module) continue;
            int fp = flip[p.module], fq = flip[q.module];
            if (fq != 0 && fp == 0) {
                flip[p.module] = p.eps * q.eps * fq;
                changed = true;
            } else if (fp != 0 && fq == 0) {
                flip[q.module] = p.eps * q.eps * fp;
                changed = true;
            }
        }
        if (!changed)
            for (auto& f : flip)
                if (f == 0) {
                    f = 1;
                    changed = true;
                    break;
                }
    }
    for (auto& p : out.pairs) p.eps *= flip[p.module];
    for (auto& p : out.pairs) {
        const CRPair& q = out.pairs[where.at(p.alpha_d)];
        if (q.eps != p.eps)
            throw CatalogError("eps(" + g.root_str(p.alpha) + ") != eps(" + g.root_str(p.alpha_d) + ")");
    }

    // Cross-checks: coverage of R'_F, weights along Z_D, exponents.
    std::set<int> cover;
    for (auto& p : out.pairs) {
        for (int r : {p.alpha, g.neg(p.alpha_d)}) {
            if (!mf.count(r)) throw CatalogError(g.root_str(r) + " is not in R'_F");
            cover.insert(r);
        }
    }
    if (cover.size() != mf.size() || out.pairs.size() * 2 != mf.size())
        throw CatalogError("pairing does not cover R'_F exactly once");
    for (auto& p : out.pairs) {
        // (i/2) B(Z_D, H_a + H_{a^d}) must equal ell, and a + a^d must be parallel to Z_D.
        XElem hs = H_root(g, p.alpha) + H_root(g, p.alpha_d);
        Q2i v = Q2i(rat(0, 1), rat(1, 2)) * killing(dec.zd, hs);
        if (!(v == Q2i(p.ell)))
            throw CatalogError("exponent mismatch at " + g.root_str(p.alpha) + ": (i/2)B(Z_D, H_a + H_ad) = " +
                               v.str() + ", table gives " + std::to_string(p.ell));
        for (auto& x : dec.l_basis)
            if (!x.e.empty()) {
                continue;
            } else if (!killing(x, hs).is_zero()) {
                throw CatalogError("a + a^d not parallel to Z_D at " + g.root_str(p.alpha));
            }
    }
    for (int r : s.eps_flip) {
        int k = out.find(r);
        if (k < 0) throw CatalogError("eps_flip root " + g.root_str(r) + " is not paired");
        out.pairs[k].eps = -out.pairs[k].eps;
    }
    return out;
}

std::vector<CElem> expand_holomorphic(const Scenario& s, const CRPairing& p, double t) {
    if (t == 0.0) throw std::domain_error("expand_holomorphic: t = 0 is degenerate");
    if (s.mn_row && p.pairs.empty()) throw CatalogError("pairing does not match the scenario row");
    const Algebra& g = *s.alg;
    std::vector<CElem> out;
    for (auto& q : p.pairs) {
        CElem v(g);
        v.add_e(q.alpha, 1.0);
        v.add_e(g.neg(q.alpha_d), q.eps * std::exp(2.0 * q.ell * t));
        out.push_back(v);
    }
    for (int b : s.plus) {
        CElem v(g);
        v.add_e(b, 1.0);
        out.push_back(v);
    }
    return out;
}

IntegrabilityReport integrability_check(const Scenario& s, const Decomposition& d, const CRPairing& p,
                                        double t, double tol) {
    IntegrabilityReport rep;
    std::vector<CElem> vs;
    for (auto& x : d.l_basis) vs.push_back(to_numeric(x));
    const size_t nl = vs.size();
    for (auto& v : expand_holomorphic(s, p, t)) vs.push_back(v);
    std::vector<Eigen::VectorXcd> cols;
    for (auto& v : vs) cols.push_back(to_vector(v));
    SpanProjector proj(cols);
    if (proj.rank() != static_cast<int>(cols.size())) {
        rep.ok = false;
        rep.violations.push_back("l + m10(t) is not a direct sum");
        return rep;
    }
    for (size_t i = 0; i < vs.size(); ++i)
        for (size_t j = std::max(i + 1, nl); j < vs.size(); ++j) {
            double r = proj.rel_residual(to_vector(bracket(vs[i], vs[j])));
            rep.max_residual = std::max(rep.max_residual, r);
            if (r > tol) {
                rep.ok = false;
                if (rep.violations.size() < 8)
                    rep.violations.push_back("[v" + std::to_string(i) + ", v" + std::to_string(j) +
                                             "] residual " + fmt_sci(r));
            }
        }
    return rep;
}

}  // namespace kcoh
