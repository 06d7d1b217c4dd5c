#include "kcoh/verify.hpp"

#include "kcoh/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>

namespace kcoh {

namespace {

CheckResult make(const std::string& name, double value, double tol, bool upper = true) {
    CheckResult r{name, upper ? value <= tol : value >= tol, value, tol, {}};
    return r;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(a)); }

bool in_f_span(const XElem& x) {
    if (!x.h.empty()) return false;
    const Algebra& g = *x.alg;
    for (auto& [a, c] : x.e) {
        if (!c.im.is_zero()) return false;
        auto it = x.e.find(g.neg(a));
        if (it == x.e.end() || !(it->second == Q2i(Q2(-1)) * c)) return false;
    }
    return true;
}

}  // namespace

std::vector<double> TGrid::points() const {
    if (count < 1) throw std::invalid_argument("t-grid count must be at least 1");
    if (stop < start) throw std::invalid_argument("t-grid stop is below start");
    auto lin = [](double a, double b, int n) {
        std::vector<double> v;
        for (int k = 0; k < n; ++k) v.push_back(n == 1 ? a : a + (b - a) * k / (n - 1));
        return v;
    };
    std::vector<double> out;
    if (exclude_zero && start < 0 && stop > 0) {
        if (!(gap > 0) || gap >= std::min(-start, stop)) throw std::invalid_argument("t-grid gap does not fit");
        int nneg = static_cast<int>(std::floor(count * -start / (stop - start)));
        if (count >= 2) nneg = std::clamp(nneg, 1, count - 1);
        out = lin(start, -gap, nneg);
        for (double t : lin(gap, stop, count - nneg)) out.push_back(t);
    } else {
        out = lin(start, stop, count);
    }
    for (double t : out)
        if (std::abs(t) < 1e-12) throw std::invalid_argument("t-grid contains t = 0");
    return out;
}

json CheckResult::to_json() const {
    json j{{"name", name}, {"pass", pass}, {"value", value}, {"tol", tol}};
    if (!detail.empty()) j["detail"] = detail;
    return j;
}

bool ScenarioReport::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

json ScenarioReport::to_json() const {
    json c = json::array();
    for (auto& k : checks) c.push_back(k.to_json());
    return {{"scenario", scenario}, {"classification", classification}, {"pass", pass()}, {"checks", c}};
}

std::vector<CheckResult> chevalley_checks(const Algebra& g) {
    const int n = g.nroots();
    std::vector<XElem> e;
    for (int a = 0; a < n; ++a) e.push_back(E_root(g, a));
    auto jac = [](const XElem& x, const XElem& y, const XElem& z) {
        return bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y));
    };
    long bad_j = 0, triples = 0;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            XElem ab = bracket(e[a], e[b]);
            for (int c = b + 1; c < n; ++c, ++triples) {
                XElem v = bracket(e[a], bracket(e[b], e[c])) + bracket(e[b], bracket(e[c], e[a])) + bracket(e[c], ab);
                if (!v.is_zero()) ++bad_j;
            }
            for (int k = 0; k < g.eps_dim(); ++k, ++triples) {
                XElem h(g);
                h.add_h(k, Q2i(Q2(1)));
                if (!jac(h, e[a], e[b]).is_zero()) ++bad_j;
            }
        }
    CheckResult rj = make("jacobi", static_cast<double>(bad_j), 0);
    rj.detail = std::to_string(triples) + " triples";

    long bad_n = 0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (g.sum(a, b) < 0) continue;
            if (!(g.N(a, b) == Q2(-1) * g.N(b, a))) ++bad_n;
            if (!(g.N(a, b) == Q2(-1) * g.N(g.neg(a), g.neg(b)))) ++bad_n;
        }
    CheckResult rn = make("n_symmetries", static_cast<double>(bad_n), 0);

    // F/G Killing table, span closure and B(H, [F_a, G_b]) = delta a(iH).
    long bad_b = 0, bad_s = 0, bad_h = 0;
    const auto& pos = g.positive_roots();
    std::vector<std::pair<XElem, XElem>> fg;
    for (int a : pos) fg.push_back(compact_generators(g, a));
    const Q2i minus_one(Q2(-1)), zero;
    for (size_t i = 0; i < pos.size(); ++i)
        for (size_t j = 0; j < pos.size(); ++j) {
            const Q2i d = i == j ? minus_one : zero;
            if (!(killing(fg[i].first, fg[j].first) == d) || !(killing(fg[i].second, fg[j].second) == d) ||
                !(killing(fg[i].first, fg[j].second) == zero))
                ++bad_b;
            if (i != j && (!in_f_span(bracket(fg[i].first, fg[j].first)) ||
                           !in_f_span(bracket(fg[i].second, fg[j].second))))
                ++bad_s;
            XElem fgb = bracket(fg[i].first, fg[j].second);
            for (int k = 0; k < g.eps_dim(); ++k) {
                XElem h(g);
                h.add_h(k, Q2i(Q2(1)));
                // a(i H_{e_k}) = i (a, e_k)
                Q2i want = i == j ? Q2i(Q2(0), Q2(rat(g.root(pos[i]).c2[k], 2))) : zero;
                if (!(killing(h, fgb) == want)) ++bad_h;
            }
        }
    return {rj, rn, make("fg_killing_table", static_cast<double>(bad_b), 0),
            make("fg_span_closure", static_cast<double>(bad_s), 0),
            make("cartan_pairing", static_cast<double>(bad_h), 0)};
}

CheckResult check_integrability(const Scenario& s, const Decomposition& d, const CRPairing& p,
                                const std::vector<double>& ts) {
    double worst = 0;
    std::string first;
    for (double t : ts) {
        IntegrabilityReport r = integrability_check(s, d, p, t);
        worst = std::max(worst, r.max_residual);
        if (!r.ok && first.empty()) first = "t = " + fmt_sci(t) + (r.violations.empty() ? "" : ": " + r.violations[0]);
    }
    CheckResult c = make("integrability", worst, 1e-12);
    c.detail = first;
    return c;
}

CheckResult check_m10_dim(const Scenario& s, const Decomposition& d, const CRPairing& p) {
    const int want = static_cast<int>(d.m_basis.size()) / 2;
    const int got = static_cast<int>(expand_holomorphic(s, p, 1.0).size());
    CheckResult c = make("m10_dim", std::abs(got - want), 0);
    c.detail = "dim m10 = " + std::to_string(got) + ", expected " + std::to_string(want);
    return c;
}

CheckResult check_j_oracle(const Scenario& s, const CRPairing& p, const OptimalBasis& b, const std::vector<double>& ts) {
    double worst = 0;
    for (double t : ts) {
        JOracle jo(s, p, t);
        for (int i = 1; i <= b.size(); ++i)
            for (bool of_g : {false, true}) {
                const XElem& x = of_g ? b.entries[i - 1].G : b.entries[i - 1].F;
                Eigen::VectorXcd diff = to_vector(j_closed(b, i, t, of_g)) - to_vector(jo.apply(to_numeric(x)));
                worst = std::max(worst, diff.cwiseAbs().maxCoeff());
            }
    }
    return make("j_oracle", worst, 1e-10);
}

CheckResult check_orthonormal(const OptimalBasis& b) {
    std::vector<XElem> v{b.f0};
    for (auto& e : b.entries) {
        v.push_back(e.F);
        v.push_back(e.G);
    }
    long bad = 0;
    for (size_t i = 0; i < v.size(); ++i)
        for (size_t j = i; j < v.size(); ++j) {
            Q2i k = killing(v[i], v[j]);
            // F0 = Z_D is not unit length; only its orthogonality is checked.
            if (i == j && i > 0 && !(k == Q2i(Q2(-1)))) ++bad;
            if (i != j && !k.is_zero()) ++bad;
        }
    return make("basis_orthonormal", static_cast<double>(bad), 0);
}

CheckResult check_omega_identities(const Scenario& s, const Decomposition& d, const OptimalBasis& b) {
    long bad = 0;
    for (auto& e : b.entries) {
        Q2i w = killing(d.zd, bracket(e.F, e.G));
        Q2i want = e.kind == EntryKind::Flag ? killing(d.zd, iH_root(*s.alg, e.beta)) : Q2i(Q2(e.ell));
        if (!(w == want)) ++bad;
    }
    return make("omega_identities", static_cast<double>(bad), 0);
}

CheckResult check_closedness(const MetricProfile& pr, const Decomposition& d, const std::vector<double>& ts) {
    if (d.alpha < 0) {
        CheckResult c = make("closedness", 0, 1e-6);
        c.detail = "not KE";
        return c;
    }
    const CElem fa = to_numeric(compact_generators(*d.zd.alg, d.alpha).first);
    double worst = 0, detect = 1e300;
    for (double t : ts) {
        auto r = closedness_residuals(pr, d, t, 1e-4);
        worst = std::max({worst, r.r_g, r.r_h});
        auto v = closedness_residuals(pr, d, t, 1e-4, [&](double u) { return std::complex<double>(0.1 * u) * fa; });
        detect = std::min(detect, std::max(v.r_g, v.r_h));
    }
    CheckResult c = make("closedness", worst, 1e-6);
    c.pass = c.pass && detect >= 1e-2;
    c.detail = "injected violation residual " + fmt_sci(detect);
    return c;
}

CheckResult check_paths(const RicciEngine& e, const CRPairing& p, const std::vector<double>& ts) {
    const OptimalBasis& b = e.basis();
    double worst = 0;
    for (double t : ts) {
        const double hp = e.h_prime(t);
        JOracle jo(e.scenario(), p, t);
        for (int i = 1; i <= b.size(); ++i) {
            const CElem f = to_numeric(b.entries[i - 1].F);
            const double v = e.ricci_value(f, t, hp);
            worst = std::max({worst, rel(v, e.ricci_closed(i, t, hp)), rel(v, e.ricci_value(f, t, hp, &jo))});
        }
    }
    return make("path_equivalence", worst, 1e-8);
}

CheckResult check_zrho(const RicciEngine& e, const std::vector<double>& ts, double dt) {
    CheckResult c{"zrho_shape", true, 0, 1e-8, {}};
    ZRhoFit z;
    try {
        z = reconstruct_z_rho(e, ts, dt);
    } catch (const std::exception& ex) {
        c.pass = false;
        c.value = INFINITY;
        c.detail = ex.what();
        return c;
    }
    c.value = std::max(z.max_residual, z.max_g);
    c.pass = z.max_residual <= 1e-8 && z.max_g <= 1e-8 && z.c_variation <= 1e-6 && z.i_variation <= 1e-6;
    c.detail = "residual " + fmt_sci(z.max_residual) + ", F_alpha " + fmt_sci(z.max_g) + ", h cosh variation " +
               fmt_sci(z.c_variation) + ", I variation " + fmt_sci(z.i_variation);
    if (!z.unobservable.empty()) {
        c.detail += ", unobservable:";
        for (auto& u : z.unobservable) c.detail += " " + u;
    }
    return c;
}

CheckResult check_convention(const Scenario& s, const std::vector<double>& ts, double dt) {
    double worst = 0;
    std::vector<std::vector<double>> vals[2];
    for (int k = 0; k < 2; ++k) {
        Scenario sc = with_convention(s, k ? SignConvention::Alternate : SignConvention::Standard);
        Decomposition d = validate(sc);
        CRPairing p = cr_pairing(sc, d);
        OptimalBasis b = build_optimal_basis(sc, d, p);
        MetricProfile pr = load_profile(default_profile_json(sc, d), sc, d);
        RicciEngine e(sc, d, b, pr);
        for (double t : ts) vals[k].push_back(e.sample(t, dt).values);
    }
    for (size_t i = 0; i < vals[0].size(); ++i)
        for (size_t j = 0; j < vals[0][i].size(); ++j) worst = std::max(worst, std::abs(vals[0][i][j] - vals[1][i][j]));
    return make("convention_independence", worst, 1e-10);
}

CheckResult check_hprime(const RicciEngine& e, const std::vector<double>& ts, double dt) {
    if (e.profile().c != 0) {
        CheckResult c = make("hprime", 0, 1e-6);
        c.detail = "c != 0, block product not available";
        return c;
    }
    double worst = 0;
    for (double t : ts) {
        const double a = e.h_prime_blocks(t);
        worst = std::max(worst, std::abs(e.h_prime(t, dt) - a) / std::max(std::abs(a), 1e-300));
    }
    return make("hprime", worst, 1e-6);
}

json default_profile_json(const Scenario& s, const Decomposition& d) {
    Classification cl = classify(d, s);
    if (cl.ke && !cl.standard)
        return {{"f", {{"kind", "affine_exp"}, {"a", 0}, {"b", 1}, {"k", 1}}}, {"c", "1/2"}};
    return {{"f", {{"kind", "poly"}, {"coeffs", {0, 1}}}}, {"c", 0}};
}

ScenarioReport verify_scenario(const Scenario& s, const VerifyOptions& o) {
    ScenarioReport rep;
    rep.scenario = s.name;
    auto guard = [&](const std::string& name, auto&& fn) {
        try {
            rep.checks.push_back(fn());
        } catch (const std::exception& ex) {
            rep.checks.push_back({name, false, INFINITY, 0, ex.what()});
        }
    };
    Decomposition d;
    try {
        d = validate(s);
    } catch (const ValidationError& ex) {
        rep.checks.push_back({"structure", false, 1, 0, ex.what()});
        return rep;
    }
    rep.classification = classify(d, s).str();
    rep.checks.push_back({"structure", true, 0, 0, {}});
    if (o.chevalley)
        for (auto& c : chevalley_checks(*s.alg)) rep.checks.push_back(c);
    CRPairing p;
    try {
        p = cr_pairing(s, d);
    } catch (const std::exception& ex) {
        rep.checks.push_back({"cr_pairing", false, 1, 0, ex.what()});
        return rep;
    }
    rep.checks.push_back({"cr_pairing", true, 0, 0, std::to_string(p.pairs.size()) + " pairs"});
    OptimalBasis b;
    try {
        b = build_optimal_basis(s, d, p);
    } catch (const std::exception& ex) {
        rep.checks.push_back({"optimal_basis", false, 1, 0, ex.what()});
        return rep;
    }
    const std::vector<double> tint{-2, -1, -0.3, 0.3, 1, 2}, tj{-2, -1, -0.5, -0.25, 0.25, 0.5, 1, 2};
    guard("m10_dim", [&] { return check_m10_dim(s, d, p); });
    guard("integrability", [&] { return check_integrability(s, d, p, tint); });
    guard("basis_orthonormal", [&] { return check_orthonormal(b); });
    guard("omega_identities", [&] { return check_omega_identities(s, d, b); });
    guard("j_oracle", [&] { return check_j_oracle(s, p, b, tj); });

    MetricProfile pr;
    try {
        pr = load_profile(o.profile ? *o.profile : default_profile_json(s, d), s, d);
    } catch (const std::exception& ex) {
        rep.checks.push_back({"profile", false, 1, 0, ex.what()});
        return rep;
    }
    RicciEngine e(s, d, b, pr);
    guard("closedness", [&] { return check_closedness(pr, d, {-2, -1, -0.5, 0.5, 1, 2}); });
    guard("path_equivalence", [&] { return check_paths(e, p, o.tgrid); });
    guard("zrho_shape", [&] { return check_zrho(e, o.tgrid, o.dt); });
    guard("convention_independence", [&] { return check_convention(s, o.tgrid, o.dt); });
    guard("hprime", [&] {
        // The block-product derivative needs c = 0; use f = t when the profile has c != 0.
        if (pr.c == 0) return check_hprime(e, o.tgrid, o.dt);
        MetricProfile p0 = default_profile(s);
        RicciEngine e0(s, d, b, p0);
        return check_hprime(e0, o.tgrid, o.dt);
    });
    return rep;
}

std::vector<ScenarioReport> verify_path(const std::string& path, const VerifyOptions& o) {
    namespace fs = std::filesystem;
    std::vector<std::string> files;
    if (fs::is_directory(path)) {
        for (auto& f : fs::directory_iterator(path))
            if (f.path().extension() == ".json") files.push_back(f.path().string());
        std::sort(files.begin(), files.end());
        if (files.empty()) throw std::runtime_error("no scenario files in " + path);
    } else {
        files.push_back(path);
    }
    std::vector<ScenarioReport> out;
    for (auto& f : files) out.push_back(verify_scenario(load_scenario_file(f), o));
    return out;
}

}  // namespace kcoh
