#include <doctest.h>

#include "kcoh/ricci.hpp"

#include <fstream>
#include <random>

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

json ke_profile() { return {{"f", {{"kind", "affine_exp"}, {"a", 0}, {"b", 1}, {"k", 1}}}, {"c", "1/2"}}; }

}  // namespace

TEST_CASE("Pfaffian of a 4x4 skew matrix by the expansion formula") {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(4, 4);
    const double a = 1.5, b = -2, c = 0.25, d = 3, e = -1, f = 0.5;  // a12 a13 a14 a23 a24 a34
    m(0, 1) = a, m(0, 2) = b, m(0, 3) = c, m(1, 2) = d, m(1, 3) = e, m(2, 3) = f;
    m -= Eigen::MatrixXd(m.transpose());
    CHECK(pfaffian(m) == doctest::Approx(a * f - b * e + c * d));
}

TEST_CASE("Pfaffian squared is the determinant") {
    std::mt19937 rng(11);
    std::normal_distribution<double> nd;
    for (int n : {2, 6, 10}) {
        Eigen::MatrixXd m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = nd(rng);
        m = m - Eigen::MatrixXd(m.transpose());
        const double pf = pfaffian(m);
        CHECK(pf * pf == doctest::Approx(m.determinant()).epsilon(1e-10));
    }
    Eigen::MatrixXd odd = Eigen::MatrixXd::Zero(3, 3);
    CHECK(pfaffian(odd) == 0.0);
}

TEST_CASE("profile functions and their derivatives") {
    ScalarFn p = ScalarFn::from_json({{"kind", "poly"}, {"coeffs", {1, -2, 3}}});
    CHECK(p.f(2) == doctest::Approx(9));
    CHECK(p.fp(2) == doctest::Approx(10));
    CHECK(p.fpp(2) == doctest::Approx(6));
    ScalarFn t = ScalarFn::from_json({{"kind", "tanh_scaled"}, {"a", 1}, {"b", 2}, {"k", 0.5}});
    const double h = 1e-5;
    CHECK(t.fp(0.7) == doctest::Approx((t.f(0.7 + h) - t.f(0.7 - h)) / (2 * h)).epsilon(1e-8));
    CHECK(t.fpp(0.7) == doctest::Approx((t.fp(0.7 + h) - t.fp(0.7 - h)) / (2 * h)).epsilon(1e-7));
    CHECK_THROWS(ScalarFn::from_json({{"kind", "spline"}}));
    CHECK(ScalarFn::from_json(t.to_json()).f(0.3) == t.f(0.3));
}

TEST_CASE("profile admissibility") {
    Setup ko = load("mn_f4");
    CHECK_THROWS_AS(load_profile(ke_profile(), ko.s, ko.d), std::invalid_argument);
    Setup std_ke = load("std_su2");
    CHECK_THROWS_AS(load_profile(ke_profile(), std_ke.s, std_ke.d), std::invalid_argument);
    Setup ke = load("ke_su2_in_su3");
    MetricProfile p = load_profile(ke_profile(), ke.s, ke.d);
    CHECK(p.c == 0.5);
    json with_i = ke_profile();
    with_i["I"] = {{"H", {{"1,1,-2", "1/3*i"}}}};
    CHECK_NOTHROW(load_profile(with_i, ke.s, ke.d));
    with_i["I"] = {{"H", {{"1,-1,0", "1/3*i"}}}};  // in a, not in z(l)
    CHECK_THROWS_AS(load_profile(with_i, ke.s, ke.d), std::invalid_argument);
}

TEST_CASE("closedness residuals vanish on the admissible shape and detect a violation") {
    Setup u = load("ke_su2_in_su3");
    MetricProfile p = load_profile(ke_profile(), u.s, u.d);
    const CElem fa = to_numeric(compact_generators(*u.s.alg, u.d.alpha).first);
    const CElem ga = to_numeric(compact_generators(*u.s.alg, u.d.alpha).second);
    for (double t : {-2.0, -0.6, 0.4, 1.5}) {
        auto r = closedness_residuals(p, u.d, t, 1e-4);
        CHECK(r.r_g <= 1e-6);
        CHECK(r.r_h <= 1e-6);
        // g = C'/sinh t solves g' = -coth(t) g
        auto ok = closedness_residuals(p, u.d, t, 1e-4, [&](double s) { return std::complex<double>(0.3 / std::sinh(s)) * fa; });
        CHECK(std::max(ok.r_g, ok.r_h) <= 1e-6);
        auto bad = closedness_residuals(p, u.d, t, 1e-4, [&](double s) { return std::complex<double>(0.1 * s) * fa; });
        CHECK(std::max(bad.r_g, bad.r_h) >= 1e-2);
        auto bad2 = closedness_residuals(p, u.d, t, 1e-4, [&](double s) { return std::complex<double>(0.2) * ga; });
        CHECK(std::max(bad2.r_g, bad2.r_h) >= 1e-2);
    }
    CHECK_THROWS(closedness_residuals(p, load("mn_f4").d, 1.0, 1e-4));
}

TEST_CASE("Gram matrix: transversal entry and block structure for c = 0") {
    Setup u = load("mn_f4");
    MetricProfile p = default_profile(u.s);
    GramBuilder gb(p, u.d, u.b);
    for (double t : {-1.0, 0.5, 2.0}) {
        Eigen::MatrixXd m = gb.gram(t);
        CHECK((m + m.transpose()).cwiseAbs().maxCoeff() == 0.0);
        CHECK(m(0, 1) == doctest::Approx(eval_transversal(p, u.d, t) * -1.0));
        CHECK(GramBuilder::off_block(m) <= 1e-12);
    }
    CHECK(eval_transversal(p, u.d, 1.0) == doctest::Approx(-u.d.zd_norm2.to_double()));
}

TEST_CASE("omega on the frame equals B(Z_omega, [E, JE])") {
    Setup u = load("ke_su2_in_su3");
    MetricProfile p = load_profile(ke_profile(), u.s, u.d);
    GramBuilder gb(p, u.d, u.b);
    const double t = 0.9;
    Eigen::MatrixXd m = gb.gram(t);
    CElem z = z_omega(p, u.d, t);
    for (int i = 1; i <= u.b.size(); ++i) {
        CElem f = to_numeric(u.b.entries[i - 1].F);
        CHECK(m(2 * i, 2 * i + 1) == doctest::Approx(eval_form(z, f, j_closed_apply(u.b, f, t))));
    }
}
