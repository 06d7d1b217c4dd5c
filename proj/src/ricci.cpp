#include "kcoh/ricci.hpp"

#include <cmath>
#include <numeric>

namespace kcoh {

double pfaffian(Eigen::MatrixXd a) {
    const int n = static_cast<int>(a.rows());
    if (n != a.cols()) throw std::invalid_argument("pfaffian: matrix not square");
    if (n % 2) return 0.0;
    double pf = 1.0;
    for (int k = 0; k + 1 < n; k += 2) {
        int kp = k + 1;
        for (int j = k + 2; j < n; ++j)
            if (std::abs(a(k, j)) > std::abs(a(k, kp))) kp = j;
        if (kp != k + 1) {
            a.row(k + 1).swap(a.row(kp));
            a.col(k + 1).swap(a.col(kp));
            pf = -pf;
        }
        if (a(k, k + 1) == 0.0) return 0.0;
        pf *= a(k, k + 1);
        const int m = n - k - 2;
        if (m > 0) {
            Eigen::VectorXd tau = a.row(k).tail(m).transpose() / a(k, k + 1);
            Eigen::VectorXd col = a.col(k + 1).tail(m);
            a.bottomRightCorner(m, m) += tau * col.transpose() - col * tau.transpose();
        }
    }
    return pf;
}

RicciEngine::RicciEngine(const Scenario& s, const Decomposition& d, const OptimalBasis& b, const MetricProfile& p)
    : s_(&s), d_(&d), b_(&b), gram_(p, d, b), zz_(d.zd_norm2.to_double()), zkappa_(*s.alg) {
    const Algebra& g = *s.alg;
    for (auto& e : b.entries)
        if (e.kind == EntryKind::Flag) zkappa_ = zkappa_ + iH_root(g, e.beta);
    zkappa_zd_ = killing(zkappa_, d.zd).re.to_double();

    // z(l) Gram and Z^kappa pairing.
    const int nz = static_cast<int>(d.zl_basis.size());
    Eigen::MatrixXd gz(nz, nz);
    zl_kappa_.resize(nz);
    for (int i = 0; i < nz; ++i) {
        zl_.push_back(to_numeric(d.zl_basis[i]));
        zl_kappa_[i] = killing(zkappa_, d.zl_basis[i]).re.to_double();
        for (int j = 0; j < nz; ++j) gz(i, j) = killing(d.zl_basis[i], d.zl_basis[j]).re.to_double();
    }
    zl_gram_inv_ = nz ? Eigen::MatrixXd(gz.inverse()) : Eigen::MatrixXd();

    const int n1 = b.size();
    std::vector<XElem> ylm;
    for (int i = 0; i < n1; ++i) {
        XElem y = bracket(b.entries[i].F, b.entries[i].G);
        Q2i w = killing(d.zd, y);
        if (!w.im.is_zero()) throw std::logic_error("B(Z_D, [F_i, G_i]) is not real");
        w_.push_back(w.re);
        ylm.push_back(y - Q2i(w.re / d.zd_norm2) * d.zd);
        zk_.push_back(zl_kappa_pairing(to_numeric(y)));
        wI_.push_back(killing(p.I, y).re.to_double());
    }
    p_ = Eigen::MatrixXd::Zero(n1, b.nf);
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < b.nf; ++j) p_(i, j) = killing(ylm[i], ylm[j]).re.to_double();
    for (int j = 0; j < b.nf; ++j) ylm_.push_back(to_numeric(ylm[j]));
}

double RicciEngine::kfac(int i, double t) const { return -1.0 / j_coefficient(b_->entries[i - 1], t); }

double RicciEngine::zl_kappa_pairing(const CElem& x) const {
    const int nz = static_cast<int>(zl_.size());
    if (nz == 0) return 0.0;
    Eigen::VectorXd u(nz);
    for (int k = 0; k < nz; ++k) u[k] = killing(x, zl_[k]).real();
    return u.dot(zl_gram_inv_ * zl_kappa_);
}

double RicciEngine::h(double t) const {
    double pf = pfaffian(gram_.gram(t));
    if (pf == 0.0 || !std::isfinite(pf)) throw std::domain_error("degenerate Gram matrix at t = " + fmt_sci(t));
    return std::log(std::abs(pf));
}

double RicciEngine::h_prime(double t, double dt) const {
    auto d = [&](double s) { return (h(t + s) - h(t - s)) / (2 * s); };
    double v = (4 * d(dt / 2) - d(dt)) / 3;
    if (!std::isfinite(v)) throw std::domain_error("h' is not finite at t = " + fmt_sci(t));
    return v;
}

double RicciEngine::h_prime_blocks(double t) const {
    const MetricProfile& p = gram_.profile();
    if (p.c != 0) throw std::invalid_argument("block-product derivative needs c = 0");
    const double f = p.f.f(t), fp = p.f.fp(t);
    double v = p.f.fpp(t) / fp;
    for (int i = 1; i <= b_->size(); ++i) {
        const BasisEntry& e = b_->entries[i - 1];
        const double w = w_[i - 1].to_double();
        v += fp * w / (f * w + wI_[i - 1]);
        if (e.kind == EntryKind::Flag) continue;
        const double x = e.ell * t, sc = std::sinh(x) * std::cosh(x);
        v += (e.kind == EntryKind::Minus ? 1.0 : -1.0) * e.ell / sc;
    }
    return v;
}

double RicciEngine::brace(double t, double hprime) const {
    double v = 0.5 * hprime;
    for (int i = 1; i <= b_->nf; ++i) v -= kfac(i, t) * b_->entries[i - 1].ell;
    return v + zkappa_zd_;
}

CElem RicciEngine::apply_j(const CElem& e, double t, const JOracle* j) const {
    return j ? j->apply(e) : j_closed_apply(*b_, e, t);
}

double RicciEngine::a_coef(const CElem& e, double t, const JOracle* j) const {
    if (e.is_zero()) return 0.0;
    CElem x = bracket(e, apply_j(e, t, j));
    return killing(x, to_numeric(d_->zd)).real() / zz_;
}

double RicciEngine::b_coef(const CElem& e, double t, const JOracle* j) const {
    if (e.is_zero()) return 0.0;
    using C = std::complex<double>;
    CElem zd = to_numeric(d_->zd);
    CElem x = bracket(e, apply_j(e, t, j));
    CElem xlm = x - C(killing(x, zd).real() / zz_) * zd;
    double v = 0;
    for (int i = 1; i <= b_->nf; ++i) v -= kfac(i, t) * killing(xlm, ylm_[i - 1]).real();
    return v + zl_kappa_pairing(x);
}

double RicciEngine::ricci_value(const CElem& e, double t, double hprime, const JOracle* j) const {
    return a_coef(e, t, j) * brace(t, hprime) + b_coef(e, t, j);
}

double RicciEngine::omega_value(const CElem& e, double t) const {
    return eval_form(z_omega(gram_.profile(), *d_, t), e, j_closed_apply(*b_, e, t));
}

double RicciEngine::a_closed(int i, double t) const {
    const BasisEntry& e = b_->entries[i - 1];
    if (e.kind == EntryKind::Flag) return killing(d_->zd, iH_root(*s_->alg, e.beta)).re.to_double() / zz_;
    return -e.ell / kfac(i, t) / zz_;
}

double RicciEngine::b_closed(int i, double t) const {
    const double jc = j_coefficient(b_->entries[i - 1], t);
    double v = zk_[i - 1];
    for (int j = 1; j <= b_->nf; ++j) v -= kfac(j, t) * p_(i - 1, j - 1);
    return jc * v;
}

double RicciEngine::b_closed_literal(int i, double t) const {
    const BasisEntry& e = b_->entries[i - 1];
    if (e.kind == EntryKind::Flag) return killing(zkappa_, iH_root(*s_->alg, e.beta)).re.to_double();
    const double jfac = 1.0 / kfac(i, t);
    double v = a_closed(i, t) * zkappa_zd_;
    for (int j = 1; j <= b_->nf; ++j) v += jfac * kfac(j, t) * p_(i - 1, j - 1);
    return v;
}

double RicciEngine::ricci_closed(int i, double t, double hprime) const {
    return a_closed(i, t) * brace(t, hprime) + b_closed(i, t);
}

RicciSample RicciEngine::sample(double t, double dt) const {
    RicciSample r;
    r.t = t;
    r.hprime = h_prime(t, dt);
    const double br = brace(t, r.hprime);
    for (int i = 1; i <= b_->size(); ++i) {
        CElem f = to_numeric(b_->entries[i - 1].F);
        double a = a_coef(f, t), bb = b_coef(f, t);
        r.a_coefs.push_back(a);
        r.b_coefs.push_back(bb);
        r.values.push_back(a * br + bb);
    }
    return r;
}

ZRhoSample reconstruct_z_rho_at(const RicciEngine& e, double t, double dt, std::vector<int>* unobservable) {
    const Decomposition& d = e.decomposition();
    const OptimalBasis& b = e.basis();
    const Algebra& g = *e.scenario().alg;
    std::vector<CElem> unk{to_numeric(d.zd)};
    const bool ke = d.alpha >= 0;
    if (ke) {
        auto [f, gg] = compact_generators(g, d.alpha);
        unk.push_back(to_numeric(f));
        unk.push_back(to_numeric(gg));
    }
    for (auto& z : d.zl_basis) unk.push_back(to_numeric(z));
    const int nu = static_cast<int>(unk.size());

    std::vector<CElem> dirs;
    for (auto& en : b.entries) {
        dirs.push_back(to_numeric(en.F));
        dirs.push_back(to_numeric(en.G));
    }
    std::vector<CElem> es = dirs;
    for (size_t a = 0; a < dirs.size(); ++a)
        for (size_t c = a + 1; c < dirs.size(); ++c) es.push_back(dirs[a] + dirs[c]);

    const double hp = e.h_prime(t, dt);
    const double br = e.brace(t, hp);
    // Rows: rho(E^, JE^) for E in dirs and pairwise sums, then J-invariance
    // B(Z, [X, Y] - [JX, JY]) = 0 for pairs of dirs.
    std::vector<CElem> jd;
    for (auto& x : dirs) jd.push_back(j_closed_apply(b, x, t));
    const size_t nd = dirs.size(), ne = es.size();
    Eigen::MatrixXd A(ne + nd * (nd - 1) / 2, nu);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(A.rows());
    for (size_t r = 0; r < ne; ++r) {
        CElem x = bracket(es[r], j_closed_apply(b, es[r], t));
        for (int k = 0; k < nu; ++k) A(r, k) = killing(unk[k], x).real();
        rhs[r] = e.a_coef(es[r], t) * br + e.b_coef(es[r], t);
    }
    size_t r = ne;
    for (size_t a = 0; a < nd; ++a)
        for (size_t c = a + 1; c < nd; ++c, ++r) {
            CElem x = bracket(dirs[a], dirs[c]) - bracket(jd[a], jd[c]);
            for (int k = 0; k < nu; ++k) A(r, k) = killing(unk[k], x).real();
        }
    // Unknowns whose column vanishes never enter the form; any other rank loss is an error.
    const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
    std::vector<int> dead;
    for (int k = 0; k < nu; ++k)
        if (A.col(k).cwiseAbs().maxCoeff() <= 1e-12 * scale) dead.push_back(k);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(1e-9);
    if (static_cast<int>(svd.rank()) + static_cast<int>(dead.size()) < nu)
        throw std::runtime_error("Z_rho system is rank deficient beyond unobservable unknowns");
    if (unobservable) *unobservable = dead;
    Eigen::VectorXd x = svd.solve(rhs);
    ZRhoSample out;
    out.t = t;
    out.coeffs.assign(x.data(), x.data() + nu);
    out.residual = (A * x - rhs).cwiseAbs().maxCoeff() / std::max(1.0, rhs.cwiseAbs().maxCoeff());
    out.f_rho = x[0];
    int k0 = 1;
    if (ke) {
        out.g_rho = x[1];
        out.h_rho = x[2];
        k0 = 3;
    }
    for (int k = k0; k < nu; ++k) out.i_rho.push_back(x[k]);
    return out;
}

ZRhoFit reconstruct_z_rho(const RicciEngine& e, const std::vector<double>& tgrid, double dt) {
    ZRhoFit fit;
    fit.ke = e.decomposition().alpha >= 0;
    fit.unknowns.push_back("Z_D");
    if (fit.ke) {
        fit.unknowns.push_back("F_alpha");
        fit.unknowns.push_back("G_alpha");
    }
    for (size_t k = 0; k < e.decomposition().zl_basis.size(); ++k) fit.unknowns.push_back("z" + std::to_string(k));
    for (double t : tgrid) {
        if (t == 0.0) throw std::invalid_argument("t-grid contains 0");
        std::vector<int> dead;
        fit.samples.push_back(reconstruct_z_rho_at(e, t, dt, &dead));
        for (int k : dead) fit.unobservable.insert(fit.unknowns[k]);
        fit.max_residual = std::max(fit.max_residual, fit.samples.back().residual);
    }
    if (fit.samples.empty()) return fit;
    const double n = static_cast<double>(fit.samples.size());
    if (fit.ke) {
        for (auto& s : fit.samples) {
            fit.max_g = std::max(fit.max_g, std::abs(s.g_rho));
            fit.c_rho += s.h_rho * std::cosh(s.t) / n;
        }
        double dev = 0;
        for (auto& s : fit.samples) dev = std::max(dev, std::abs(s.h_rho * std::cosh(s.t) - fit.c_rho));
        fit.c_variation = std::abs(fit.c_rho) > 1e-8 ? dev / std::abs(fit.c_rho) : dev;
    }
    const size_t ni = fit.samples.front().i_rho.size();
    fit.i_rho.assign(ni, 0.0);
    for (auto& s : fit.samples)
        for (size_t k = 0; k < ni; ++k) fit.i_rho[k] += s.i_rho[k] / n;
    double scale = 1.0;
    for (double v : fit.i_rho) scale = std::max(scale, std::abs(v));
    for (auto& s : fit.samples)
        for (size_t k = 0; k < ni; ++k)
            fit.i_variation = std::max(fit.i_variation, std::abs(s.i_rho[k] - fit.i_rho[k]) / scale);
    return fit;
}

EinsteinResidual einstein_residual(const RicciEngine& e, double c, const std::vector<double>& tgrid, double dt) {
    EinsteinResidual r;
    const OptimalBasis& b = e.basis();
    const double zz = e.decomposition().zd_norm2.to_double();
    const double step = 1e-3;
    for (double t : tgrid) {
        const double hp = e.h_prime(t, dt);
        for (int i = 1; i <= b.size(); ++i) {
            CElem f = to_numeric(b.entries[i - 1].F);
            r.orbit = std::max(r.orbit, std::abs(e.ricci_value(f, t, hp) - c * e.omega_value(f, t)));
        }
        double fp = (reconstruct_z_rho_at(e, t + step, dt).f_rho - reconstruct_z_rho_at(e, t - step, dt).f_rho) /
                    (2 * step);
        r.transversal = std::max(r.transversal, std::abs(zz) * std::abs(fp - c * e.profile().f.fp(t)));
    }
    return r;
}

}  // namespace kcoh
