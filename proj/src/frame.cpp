#include "kcoh/frame.hpp"

#include "kcoh/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace kcoh {

std::string kind_name(EntryKind k) {
    switch (k) {
        case EntryKind::Plus: return "plus";
        case EntryKind::Minus: return "minus";
        case EntryKind::SelfDual: return "selfdual";
        case EntryKind::Flag: return "flag";
    }
    return "?";
}

OptimalBasis build_optimal_basis(const Scenario& s, const Decomposition& d, const CRPairing& p) {
    const Algebra& g = *s.alg;
    OptimalBasis b;
    b.alg = s.alg;
    b.f0 = d.zd;
    const Q2i h(Q2::inv_sqrt2());
    std::set<int> used;
    std::vector<BasisEntry> selfdual;
    for (auto& q : p.pairs) {
        if (used.count(q.alpha)) continue;
        used.insert(q.alpha);
        auto [fa, ga] = compact_generators(g, q.alpha);
        if (q.alpha == q.alpha_d) {
            BasisEntry e{fa, ga, EntryKind::SelfDual, q.ell, q.alpha, q.alpha_d, q.eps, -1};
            selfdual.push_back(e);
            continue;
        }
        if (p.find(q.alpha_d) < 0) throw CatalogError("dual root missing from pairing");
        used.insert(q.alpha_d);
        auto [fd, gd] = compact_generators(g, q.alpha_d);
        const Q2i e(q.eps);
        b.entries.push_back({h * (fa + e * fd), h * (ga + e * gd), EntryKind::Plus, q.ell, q.alpha, q.alpha_d, q.eps, -1});
        b.entries.push_back({h * (fa - e * fd), h * (ga - e * gd), EntryKind::Minus, q.ell, q.alpha, q.alpha_d, q.eps, -1});
    }
    if (selfdual.size() > 1) throw CatalogError("more than one self-dual root");
    for (auto& e : selfdual) b.entries.push_back(e);
    b.nf = static_cast<int>(b.entries.size());
    std::vector<int> plus = s.plus;
    std::sort(plus.begin(), plus.end());
    for (int beta : plus) {
        auto [f, gg] = compact_generators(g, beta);
        b.entries.push_back({f, gg, EntryKind::Flag, 0, -1, -1, 1, beta});
    }
    if (2 * b.size() != static_cast<int>(d.m_basis.size()))
        throw CatalogError("optimal basis size does not match dim m / 2");
    return b;
}

double j_coefficient(const BasisEntry& e, double t, double singular_tol) {
    if (e.kind == EntryKind::Flag) return 1.0;
    const double x = e.ell * t;
    if (e.kind == EntryKind::Minus) return -std::tanh(x);
    if (std::abs(t) < singular_tol) throw std::domain_error("J_t is undefined at t = 0 on the F+ block");
    return -1.0 / std::tanh(x);
}

CElem j_closed(const OptimalBasis& b, int i, double t, bool of_g) {
    if (i < 1 || i > b.size()) throw std::out_of_range("j_closed: entry index");
    const BasisEntry& e = b.entries[i - 1];
    const double c = j_coefficient(e, t);
    using C = std::complex<double>;
    if (of_g) return C(-1.0 / c) * to_numeric(e.F);
    return C(c) * to_numeric(e.G);
}

CElem j_closed_apply(const OptimalBasis& b, const CElem& x, double t) {
    using C = std::complex<double>;
    CElem out(*b.alg);
    for (int i = 1; i <= b.size(); ++i) {
        const BasisEntry& e = b.entries[i - 1];
        CElem f = to_numeric(e.F), g = to_numeric(e.G);
        C cf = -killing(x, f), cg = -killing(x, g);
        const double c = j_coefficient(e, t);
        if (cf != C(0)) out = out + (cf * c) * g;
        if (cg != C(0)) out = out + (cg * (-1.0 / c)) * f;
    }
    return out;
}

JOracle::JOracle(const Scenario& s, const CRPairing& p, double t, double tol) : g_(s.alg.get()), t_(t), tol_(tol) {
    auto v10 = expand_holomorphic(s, p, t);
    n10_ = static_cast<int>(v10.size());
    const int n = g_->eps_dim() + g_->nroots();
    basis_.resize(n, 2 * n10_);
    for (int k = 0; k < n10_; ++k) {
        basis_.col(k) = to_vector(v10[k]);
        basis_.col(n10_ + k) = to_vector(compact_conj(v10[k]));
    }
    qr_.compute(basis_);
    if (qr_.rank() != 2 * n10_) throw std::runtime_error("m10(t) meets its conjugate");
}

CElem JOracle::apply(const CElem& x) const {
    Eigen::VectorXcd v = to_vector(x);
    Eigen::VectorXcd c = qr_.solve(v);
    Eigen::VectorXcd back = basis_ * c;
    double res = (back - v).norm() / std::max(v.norm(), 1.0);
    if (res > tol_) throw std::runtime_error("j_oracle: element is not in m (residual " + fmt_sci(res) + ")");
    const std::complex<double> I(0, 1);
    Eigen::VectorXcd out = I * (basis_.leftCols(n10_) * c.head(n10_)) - I * (basis_.rightCols(n10_) * c.tail(n10_));
    return from_vector(*g_, out);
}

CElem j_oracle(const Scenario& s, const CRPairing& p, const CElem& x, double t) { return JOracle(s, p, t).apply(x); }

}  // namespace kcoh
