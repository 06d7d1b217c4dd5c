#include <doctest.h>

#include "kcoh/liealg.hpp"
#include "kcoh/verify.hpp"

#include <random>
#include <set>

using namespace kcoh;

namespace {

using V = std::vector<int>;  // doubled epsilon coordinates

// Simple roots written out by hand, independent of the library tables.
std::vector<V> simple_roots(Family f, int n) {
    std::vector<V> s;
    const int dim = f == Family::A ? n + 1 : 4 == n && f == Family::F4 ? 4 : n;
    auto e = [&](std::initializer_list<std::pair<int, int>> terms) {
        V v(dim, 0);
        for (auto [k, c] : terms) v[k] += c;
        return v;
    };
    if (f == Family::F4) {
        return {e({{1, 2}, {2, -2}}), e({{2, 2}, {3, -2}}), e({{3, 2}}), V{1, -1, -1, -1}};
    }
    const int m = f == Family::A ? n : n - 1;
    for (int i = 0; i < m; ++i) s.push_back(e({{i, 2}, {i + 1, -2}}));
    if (f == Family::B) s.push_back(e({{n - 1, 2}}));
    if (f == Family::C) s.push_back(e({{n - 1, 4}}));
    if (f == Family::D) s.push_back(e({{n - 2, 2}, {n - 1, 2}}));
    return s;
}

long dot(const V& a, const V& b) {
    long s = 0;
    for (size_t k = 0; k < a.size(); ++k) s += static_cast<long>(a[k]) * b[k];
    return s;
}

// Closure of the simple roots under simple reflections.
std::set<V> reflection_closure(const std::vector<V>& simple) {
    std::set<V> roots(simple.begin(), simple.end());
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<V> cur(roots.begin(), roots.end());
        for (auto& b : cur)
            for (auto& a : simple) {
                const long c = 2 * dot(b, a) / dot(a, a);
                V r = b;
                for (size_t k = 0; k < r.size(); ++k) r[k] -= static_cast<int>(c * a[k]);
                if (roots.insert(r).second) grew = true;
            }
    }
    return roots;
}

struct Case {
    Family f;
    int n;
    int nroots;
};

const Case kCases[] = {{Family::A, 1, 2},  {Family::A, 2, 6},  {Family::A, 3, 12}, {Family::A, 4, 20},
                       {Family::B, 2, 8},  {Family::B, 3, 18}, {Family::B, 4, 32}, {Family::C, 2, 8},
                       {Family::C, 3, 18}, {Family::C, 4, 32}, {Family::D, 3, 12}, {Family::D, 4, 24},
                       {Family::F4, 4, 48}};

}  // namespace

TEST_CASE("root systems agree with the reflection closure of hand-written simple roots") {
    for (auto c : kCases) {
        CAPTURE(family_name(c.f));
        CAPTURE(c.n);
        auto g = Algebra::build({{c.f, c.n}});
        std::set<V> ours;
        for (int i = 0; i < g->nroots(); ++i) ours.insert(g->root(i).c2);
        std::set<V> want = reflection_closure(simple_roots(c.f, c.n));
        CHECK(static_cast<int>(want.size()) == c.nroots);
        CHECK(ours == want);
    }
}

TEST_CASE("sl3 brackets match 3x3 matrix units up to a sign per root vector") {
    // e_ij has root e_i - e_j; [e_ij, e_jk] = e_ik. With E_a = s_a e_ij the structure
    // constants must satisfy N_{a,b} = s_a s_b / s_{a+b} for some signs s.
    auto g = Algebra::build({{Family::A, 2}});
    auto idx = [&](int i, int j) {
        V v(3, 0);
        v[i] = 2;
        v[j] = -2;
        return g->root_index(v);
    };
    std::vector<int> sign(g->nroots(), 0);
    std::set<std::pair<int, int>> arrows;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j) arrows.insert({i, j});
    // Fix the signs of the simple roots and their negatives to +1; derive the rest.
    for (auto [i, j] : arrows)
        if (std::abs(i - j) == 1) sign[idx(i, j)] = 1;
    sign[idx(0, 2)] = g->N(idx(0, 1), idx(1, 2)) == Q2(1) ? 1 : -1;
    sign[idx(2, 0)] = g->N(idx(2, 1), idx(1, 0)) == Q2(1) ? 1 : -1;
    for (auto [i, j] : arrows)
        for (auto [j2, k] : arrows) {
            if (j2 != j || k == i) continue;
            // Matrix product: [e_ij, e_jk] = e_ik.
            CHECK(g->N(idx(i, j), idx(j, k)) == Q2(sign[idx(i, j)] * sign[idx(j, k)] * sign[idx(i, k)]));
        }
    // [E_a, E_-a] = H_a and ad H_a acts by the doubled-coordinate pairing.
    XElem h = bracket(E_root(*g, idx(0, 1)), E_root(*g, idx(1, 0)));
    CHECK(h == H_root(*g, idx(0, 1)));
}

TEST_CASE("root inner product induced by the ad-trace form") {
    // tr(ad H_a ad H_b) = sum over roots c of c(H_a) c(H_b); killing_ip = (a,b)^2 / tr.
    for (auto c : kCases) {
        auto g = Algebra::build({{c.f, c.n}});
        for (int a : g->simple_roots())
            for (int b : g->simple_roots()) {
                const Rational ab = g->ip(a, b);
                if (ab == 0) continue;
                Rational tr = 0;
                for (int r = 0; r < g->nroots(); ++r) {
                    XElem x = bracket(H_root(*g, a), bracket(H_root(*g, b), E_root(*g, r)));
                    if (auto it = x.e.find(r); it != x.e.end()) tr += it->second.re.a;
                }
                CHECK(g->killing_ip(a, b) == ab * ab / tr);
            }
    }
    auto a1 = Algebra::build({{Family::A, 1}});
    CHECK(a1->killing_ip(0, 0) == rat(1, 2));
}

TEST_CASE("Chevalley kernel identities hold exactly for both sign tables") {
    for (auto conv : {SignConvention::Standard, SignConvention::Alternate})
        for (auto c : {Case{Family::A, 3, 12}, Case{Family::B, 3, 18}, Case{Family::C, 3, 18}, Case{Family::D, 4, 24}}) {
            auto g = Algebra::build({{c.f, c.n}}, conv);
            for (auto& r : chevalley_checks(*g)) {
                CAPTURE(r.name);
                CHECK(r.pass);
            }
        }
    auto two = Algebra::build({{Family::A, 1}, {Family::A, 1}});
    for (auto& r : chevalley_checks(*two)) CHECK(r.pass);
}

TEST_CASE("simply laced constants are +-1 and the two sign tables differ") {
    auto g = Algebra::build({{Family::D, 4}});
    auto h = Algebra::build({{Family::D, 4}}, SignConvention::Alternate);
    int differ = 0;
    for (int a = 0; a < g->nroots(); ++a)
        for (int b = 0; b < g->nroots(); ++b) {
            if (g->sum(a, b) < 0) continue;
            CHECK((g->N(a, b) == Q2(1) || g->N(a, b) == Q2(-1)));
            if (!(g->N(a, b) == h->N(a, b))) ++differ;
        }
    CHECK(differ > 0);
}

TEST_CASE("Killing form is ad-invariant on random exact elements") {
    auto g = Algebra::build({{Family::B, 3}});
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> d(-3, 3);
    auto rnd = [&] {
        XElem x(*g);
        for (int r = 0; r < g->nroots(); ++r)
            if (d(rng) > 1) x.add_e(r, Q2i(Q2(d(rng)), Q2(d(rng))));
        for (int k = 0; k < g->eps_dim(); ++k) x.add_h(k, Q2i(Q2(d(rng))));
        return x;
    };
    for (int k = 0; k < 20; ++k) {
        XElem x = rnd(), y = rnd(), z = rnd();
        CHECK(killing(bracket(x, y), z) == killing(x, bracket(y, z)));
        CHECK(killing(x, y) == killing(y, x));
    }
}

TEST_CASE("compact generators") {
    auto g = Algebra::build({{Family::C, 2}});
    for (int a : g->positive_roots()) {
        auto [f, gg] = compact_generators(*g, a);
        CHECK(compact_conj(f) == f);
        CHECK(compact_conj(gg) == gg);
        CHECK(killing(f, f) == Q2i(-1));
        auto c = real_coords(f);
        CHECK(from_real_coords(*g, c) == f);
    }
    CHECK_THROWS_AS(real_coords(E_root(*g, 0)), std::invalid_argument);
    CHECK_THROWS(Algebra::build({{Family::B, 1}}));
    CHECK_THROWS(Algebra::build({{Family::D, 2}}));
}

TEST_CASE("brackets across factors vanish and mixed algebras are rejected") {
    auto g = Algebra::build({{Family::A, 1}, {Family::A, 1}});
    CHECK(g->eps_dim() == 4);
    CHECK(bracket(E_root(*g, 0), E_root(*g, 1)).is_zero());
    auto h = Algebra::build({{Family::A, 1}});
    CHECK_THROWS_AS(bracket(E_root(*g, 0), E_root(*h, 0)), MixedAlgebraError);
}
