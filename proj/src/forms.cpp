#include "kcoh/forms.hpp"

#include <cmath>
#include <fstream>

namespace kcoh {

double ScalarFn::f(double t) const {
    switch (kind) {
        case Kind::Poly: {
            double v = 0;
            for (size_t k = coeffs.size(); k-- > 0;) v = v * t + coeffs[k];
            return v;
        }
        case Kind::AffineExp: return a + b * std::exp(k * t);
        case Kind::TanhScaled: return a + b * std::tanh(k * t);
    }
    return 0;
}

double ScalarFn::fp(double t) const {
    switch (kind) {
        case Kind::Poly: {
            double v = 0;
            for (size_t n = coeffs.size(); n-- > 1;) v = v * t + n * coeffs[n];
            return v;
        }
        case Kind::AffineExp: return b * k * std::exp(k * t);
        case Kind::TanhScaled: {
            double c = std::cosh(k * t);
            return b * k / (c * c);
        }
    }
    return 0;
}

double ScalarFn::fpp(double t) const {
    switch (kind) {
        case Kind::Poly: {
            double v = 0;
            for (size_t n = coeffs.size(); n-- > 2;) v = v * t + n * (n - 1) * coeffs[n];
            return v;
        }
        case Kind::AffineExp: return b * k * k * std::exp(k * t);
        case Kind::TanhScaled: {
            double c = std::cosh(k * t);
            return -2.0 * b * k * k * std::tanh(k * t) / (c * c);
        }
    }
    return 0;
}

ScalarFn ScalarFn::from_json(const json& j) {
    ScalarFn s;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "poly") {
        s.kind = Kind::Poly;
        s.coeffs = j.at("coeffs").get<std::vector<double>>();
        if (s.coeffs.empty()) throw std::invalid_argument("poly profile needs coefficients");
    } else if (kind == "affine_exp" || kind == "tanh_scaled") {
        s.kind = kind == "affine_exp" ? Kind::AffineExp : Kind::TanhScaled;
        s.a = j.at("a").get<double>();
        s.b = j.at("b").get<double>();
        s.k = j.at("k").get<double>();
    } else {
        throw std::invalid_argument("unknown profile kind '" + kind + "'");
    }
    return s;
}

json ScalarFn::to_json() const {
    switch (kind) {
        case Kind::Poly: return {{"kind", "poly"}, {"coeffs", coeffs}};
        case Kind::AffineExp: return {{"kind", "affine_exp"}, {"a", a}, {"b", b}, {"k", k}};
        case Kind::TanhScaled: return {{"kind", "tanh_scaled"}, {"a", a}, {"b", b}, {"k", k}};
    }
    return {};
}

MetricProfile default_profile(const Scenario& s) {
    MetricProfile p;
    p.I = XElem(*s.alg);
    p.source = {{"f", p.f.to_json()}, {"c", 0}, {"I", nullptr}};
    return p;
}

void check_profile(const MetricProfile& p, const Scenario& s, const Decomposition& d) {
    Classification cl = classify(d, s);
    if (p.c != 0 && (cl.standard || !cl.ke))
        throw std::invalid_argument("profile constant c must be 0 unless the scenario is non-standard KE");
    if (!p.I.is_zero()) {
        CompactSpace cs(s.alg);
        std::vector<QVec> zl;
        for (auto& z : d.zl_basis) zl.push_back(cs.coords(z));
        QVec ic;
        try {
            ic = cs.coords(p.I);
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument("profile I is not in the compact real form");
        }
        if (zl.empty() || !coordinates_in(zl, ic)) throw std::invalid_argument("profile I is not in z(l)");
    }
}

MetricProfile load_profile(const json& j, const Scenario& s, const Decomposition& d) {
    MetricProfile p;
    p.source = j;
    p.f = ScalarFn::from_json(j.at("f"));
    if (j.contains("c")) {
        const auto& c = j.at("c");
        if (c.is_string()) {
            Q2i v = parse_q2i(c.get<std::string>());
            if (!v.im.is_zero()) throw std::invalid_argument("profile c must be real");
            p.c = v.re.to_double();
        } else {
            p.c = c.get<double>();
        }
    }
    p.I = j.contains("I") ? parse_element(*s.alg, j.at("I")) : XElem(*s.alg);
    check_profile(p, s, d);
    return p;
}

MetricProfile load_profile_file(const std::string& path, const Scenario& s, const Decomposition& d) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open profile file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::runtime_error("malformed JSON in " + path + ": " + e.what());
    }
    return load_profile(j, s, d);
}

namespace {
CElem g_alpha(const Decomposition& d) { return to_numeric(compact_generators(*d.zd.alg, d.alpha).second); }
CElem f_alpha(const Decomposition& d) { return to_numeric(compact_generators(*d.zd.alg, d.alpha).first); }
}  // namespace

CElem z_omega(const MetricProfile& p, const Decomposition& d, double t) {
    using C = std::complex<double>;
    CElem z = C(p.f.f(t)) * to_numeric(d.zd);
    if (p.c != 0) z = z + C(p.c / std::cosh(t)) * g_alpha(d);
    if (!p.I.is_zero()) z = z + to_numeric(p.I);
    return z;
}

double eval_form(const CElem& z, const CElem& x, const CElem& y) { return killing(z, bracket(x, y)).real(); }

double eval_transversal(const MetricProfile& p, const Decomposition& d, double t) {
    return -p.f.fp(t) * d.zd_norm2.to_double();
}

FrameForms::FrameForms(const Decomposition& d, const OptimalBasis& b) {
    v_.push_back(d.zd);
    for (auto& e : b.entries) {
        v_.push_back(e.F);
        v_.push_back(e.G);
    }
    const int n = nvec();
    br_.assign(n, std::vector<XElem>(n));
    for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c) br_[a][c] = a < c ? bracket(v_[a], v_[c]) : (a == c ? XElem(*d.zd.alg) : -br_[c][a]);
}

Eigen::MatrixXd FrameForms::pairing(const XElem& z) const {
    const int n = nvec();
    Eigen::MatrixXd k = Eigen::MatrixXd::Zero(n, n);
    if (z.is_zero()) return k;
    for (int a = 0; a < n; ++a)
        for (int c = a + 1; c < n; ++c) {
            double v = killing(z, br_[a][c]).re.to_double();
            k(a, c) = v;
            k(c, a) = -v;
        }
    return k;
}

GramBuilder::GramBuilder(const MetricProfile& p, const Decomposition& d, const OptimalBasis& b)
    : p_(p), b_(&b), zz_(d.zd_norm2.to_double()) {
    FrameForms ff(d, b);
    kd_ = ff.pairing(d.zd);
    ki_ = ff.pairing(p.I);
    kg_ = Eigen::MatrixXd::Zero(ff.nvec(), ff.nvec());
    if (p.c != 0) kg_ = ff.pairing(compact_generators(*d.zd.alg, d.alpha).second);
}

Eigen::MatrixXd GramBuilder::gram(double t) const {
    const int n = b_->size() + 1;
    Eigen::MatrixXd k = p_.f.f(t) * kd_ + ki_;
    if (p_.c != 0) k += (p_.c / std::cosh(t)) * kg_;
    // vector index of F_i is 2i-1, of G_i is 2i (i >= 1); Z_D is 0.
    std::vector<double> jc(n, 0.0);
    for (int i = 1; i < n; ++i) jc[i] = j_coefficient(b_->entries[i - 1], t);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    auto F = [](int i) { return i == 0 ? 0 : 2 * i - 1; };
    auto G = [](int i) { return 2 * i; };
    for (int i = 1; i < n; ++i)
        for (int j = 1; j < n; ++j) {
            m(2 * i, 2 * j) = k(F(i), F(j));
            m(2 * i, 2 * j + 1) = jc[j] * k(F(i), G(j));
            m(2 * i + 1, 2 * j) = jc[i] * k(G(i), F(j));
            m(2 * i + 1, 2 * j + 1) = jc[i] * jc[j] * k(G(i), G(j));
        }
    for (int j = 1; j < n; ++j) {
        m(0, 2 * j) = k(0, F(j));
        m(0, 2 * j + 1) = jc[j] * k(0, G(j));
        m(1, 2 * j) = -jc[j] * k(0, G(j));
        m(1, 2 * j + 1) = k(0, F(j));
        for (int r = 0; r < 2; ++r) {
            m(2 * j, r) = -m(r, 2 * j);
            m(2 * j + 1, r) = -m(r, 2 * j + 1);
        }
    }
    m(0, 1) = p_.f.fp(t) * zz_;
    m(1, 0) = -m(0, 1);
    return m;
}

double GramBuilder::off_block(const Eigen::MatrixXd& m) {
    double v = 0;
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
            if (r / 2 != c / 2) v = std::max(v, std::abs(m(r, c)));
    return v;
}

Eigen::MatrixXd gram_matrix(const MetricProfile& p, const Decomposition& d, const OptimalBasis& b, double t) {
    return GramBuilder(p, d, b).gram(t);
}

ClosednessResiduals closedness_residuals(const MetricProfile& p, const Decomposition& d, double t, double dt,
                                         const std::function<CElem(double)>& extra) {
    if (d.alpha < 0) throw std::invalid_argument("closedness residuals need a KE scenario");
    if (!(dt > 0) || std::abs(t) <= dt) throw std::invalid_argument("closedness residuals: degenerate dt");
    const CElem zd = to_numeric(d.zd), fa = f_alpha(d), ga = g_alpha(d);
    auto gh = [&](double s) {
        CElem z = z_omega(p, d, s);
        if (extra) z = z + extra(s);
        // g = -omega(Z^, G_alpha^), h = omega(Z^, F_alpha^)
        return std::pair<double, double>{-eval_form(z, zd, ga), eval_form(z, zd, fa)};
    };
    auto [g0, h0] = gh(t);
    auto [gp, hp] = gh(t + dt);
    auto [gm, hm] = gh(t - dt);
    ClosednessResiduals r;
    r.r_g = std::abs((gp - gm) / (2 * dt) + g0 / std::tanh(t));
    r.r_h = std::abs((hp - hm) / (2 * dt) + std::tanh(t) * h0);
    return r;
}

}  // namespace kcoh
