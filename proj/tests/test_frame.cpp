#include <doctest.h>

#include "kcoh/frame.hpp"
#include "kcoh/numeric.hpp"

#include <fstream>

using namespace kcoh;

namespace {

struct Setup {
    Scenario s;
    Decomposition d;
    CRPairing p;
    OptimalBasis b;
};

Setup load(const std::string& name) {
    std::ifstream in(std::string(KCOH_DATA_DIR) + "/scenarios/" + name + ".json");
    json j;
    in >> j;
    Setup u{load_scenario(j), {}, {}, {}};
    u.d = validate(u.s);
    u.p = cr_pairing(u.s, u.d);
    u.b = build_optimal_basis(u.s, u.d, u.p);
    return u;
}

double dist(const CElem& x, const CElem& y) { return (to_vector(x) - to_vector(y)).cwiseAbs().maxCoeff(); }

const char* kAll[] = {"mn_su2", "mn_su_n1", "mn_su2+su2", "mn_so7", "mn_f4", "mn_so_odd", "mn_so_even",
                      "mn_sp_n", "std_su2", "std_su3", "ke_su2_in_su3"};

}  // namespace

TEST_CASE("optimal basis is exactly B-orthonormal and spans m") {
    for (const char* n : kAll) {
        CAPTURE(n);
        Setup u = load(n);
        CHECK(2 * u.b.size() == static_cast<int>(u.d.m_basis.size()));
        std::vector<XElem> v;
        for (auto& e : u.b.entries) {
            v.push_back(e.F);
            v.push_back(e.G);
        }
        for (size_t i = 0; i < v.size(); ++i) {
            CHECK(killing(v[i], u.d.zd).is_zero());
            for (size_t j = 0; j < v.size(); ++j) CHECK(killing(v[i], v[j]) == Q2i(i == j ? -1 : 0));
        }
    }
}

TEST_CASE("ordering: pairs first, self-dual next, flags last") {
    Setup u = load("mn_su_n1");
    std::vector<EntryKind> kinds;
    for (auto& e : u.b.entries) kinds.push_back(e.kind);
    CHECK(kinds == std::vector<EntryKind>{EntryKind::Plus, EntryKind::Minus, EntryKind::Plus, EntryKind::Minus,
                                          EntryKind::SelfDual});
    Setup f = load("std_su3");
    CHECK(f.b.nf == 0);
    for (auto& e : f.b.entries) CHECK(e.kind == EntryKind::Flag);
}

TEST_CASE("closed-form J agrees with the eigenspace oracle") {
    for (const char* n : kAll) {
        CAPTURE(n);
        Setup u = load(n);
        for (double t : {-2.0, -0.5, 0.25, 1.0}) {
            JOracle jo(u.s, u.p, t);
            for (int i = 1; i <= u.b.size(); ++i) {
                CHECK(dist(j_closed(u.b, i, t), jo.apply(to_numeric(u.b.entries[i - 1].F))) < 1e-10);
                CHECK(dist(j_closed(u.b, i, t, true), jo.apply(to_numeric(u.b.entries[i - 1].G))) < 1e-10);
            }
        }
    }
}

TEST_CASE("J^2 = -1 and J commutes with ad(l)") {
    for (const char* n : {"mn_f4", "mn_sp_n", "ke_su2_in_su3", "std_su3"}) {
        CAPTURE(n);
        Setup u = load(n);
        const double t = 0.8;
        for (int i = 1; i <= u.b.size(); ++i) {
            CElem f = to_numeric(u.b.entries[i - 1].F);
            CHECK(dist(j_closed_apply(u.b, j_closed_apply(u.b, f, t), t), -f) < 1e-12);
            for (auto& l : u.d.l_basis) {
                CElem x = to_numeric(l);
                CHECK(dist(j_closed_apply(u.b, bracket(x, f), t), bracket(x, j_closed_apply(u.b, f, t))) < 1e-12);
            }
        }
    }
}

TEST_CASE("t -> -t negates J on the pair block and keeps it on flags") {
    for (const char* n : {"mn_su_n1", "ke_su2_in_su3"}) {
        Setup u = load(n);
        for (double t : {0.3, 1.7}) {
            JOracle jp(u.s, u.p, t), jm(u.s, u.p, -t);
            for (int i = 1; i <= u.b.size(); ++i) {
                CElem f = to_numeric(u.b.entries[i - 1].F);
                const double sgn = u.b.entries[i - 1].kind == EntryKind::Flag ? 1.0 : -1.0;
                CHECK(dist(jm.apply(f), std::complex<double>(sgn) * jp.apply(f)) < 1e-10);
            }
        }
    }
}

TEST_CASE("J is singular at t = 0 on the plus block only") {
    Setup u = load("mn_su2+su2");
    for (auto& e : u.b.entries) {
        if (e.kind == EntryKind::Minus) CHECK(j_coefficient(e, 0.0) == 0.0);
        else CHECK_THROWS_AS(j_coefficient(e, 0.0), std::domain_error);
    }
    CHECK_THROWS_AS(JOracle(u.s, u.p, 0.0), std::domain_error);
    CHECK_THROWS(JOracle(u.s, u.p, 1.0).apply(to_numeric(u.d.zd)));
}
