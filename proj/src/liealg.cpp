#include "kcoh/liealg.hpp"

#include <algorithm>
#include <functional>
#include <cmath>
#include <numeric>
#include <sstream>

namespace kcoh {

std::string family_name(Family f) {
    switch (f) {
        case Family::A: return "A";
        case Family::B: return "B";
        case Family::C: return "C";
        case Family::D: return "D";
        case Family::F4: return "F";
    }
    return "?";
}

Family parse_family(const std::string& s) {
    if (s == "A") return Family::A;
    if (s == "B") return Family::B;
    if (s == "C") return Family::C;
    if (s == "D") return Family::D;
    if (s == "F" || s == "F4") return Family::F4;
    throw std::invalid_argument("unsupported family '" + s + "'");
}

namespace {

int family_eps_dim(const SimpleFactor& f) { return f.family == Family::A ? f.rank + 1 : f.rank; }

void check_factor(const SimpleFactor& f) {
    bool ok = false;
    switch (f.family) {
        case Family::A: ok = f.rank >= 1; break;
        case Family::B: ok = f.rank >= 2; break;
        case Family::C: ok = f.rank >= 2; break;
        case Family::D: ok = f.rank >= 3; break;
        case Family::F4: ok = f.rank == 4; break;
    }
    if (!ok)
        throw std::invalid_argument("unsupported simple factor " + family_name(f.family) +
                                    std::to_string(f.rank));
}

using RMat = std::vector<std::vector<Rational>>;

RMat invert(RMat a) {
    const size_t n = a.size();
    RMat inv(n, std::vector<Rational>(n, Rational(0)));
    for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && sgn(a[p][c]) == 0) ++p;
        if (p == n) throw std::logic_error("singular Gram matrix");
        std::swap(a[p], a[c]);
        std::swap(inv[p], inv[c]);
        Rational d = a[c][c];
        for (size_t j = 0; j < n; ++j) {
            a[c][j] /= d;
            inv[c][j] /= d;
        }
        for (size_t r = 0; r < n; ++r) {
            if (r == c || sgn(a[r][c]) == 0) continue;
            Rational m = a[r][c];
            for (size_t j = 0; j < n; ++j) {
                a[r][j] -= m * a[c][j];
                inv[r][j] -= m * inv[c][j];
            }
        }
    }
    return inv;
}

}  // namespace

std::shared_ptr<const Algebra> Algebra::build(const std::vector<SimpleFactor>& factors,
                                              SignConvention conv) {
    if (factors.empty()) throw std::invalid_argument("algebra needs at least one simple factor");
    for (auto& f : factors) check_factor(f);
    auto g = std::shared_ptr<Algebra>(new Algebra());
    g->factors_ = factors;
    g->conv_ = conv;
    g->generate_roots();
    g->order_roots();
    g->compute_structure_constants();
    g->compute_killing_scale();
    return g;
}

Rational Algebra::ip_c2(const std::vector<int>& x, const std::vector<int>& y) const {
    long s = 0;
    for (size_t k = 0; k < x.size(); ++k) s += static_cast<long>(x[k]) * y[k];
    return rat(s, 4);
}

Rational Algebra::ip(int i, int j) const { return ip_c2(roots_[i].c2, roots_[j].c2); }

Rational Algebra::killing_ip(int i, int j) const {
    if (roots_[i].factor != roots_[j].factor) return Rational(0);
    return Rational(ip(i, j) / killing_scale_[roots_[i].factor]);
}

int Algebra::root_index(const std::vector<int>& c2) const {
    auto it = index_.find(c2);
    return it == index_.end() ? -1 : it->second;
}

std::string Algebra::root_str(int i) const {
    std::ostringstream os;
    os << "(";
    const auto& c = roots_[i].c2;
    for (size_t k = 0; k < c.size(); ++k) {
        if (k) os << ",";
        if (c[k] % 2 == 0)
            os << c[k] / 2;
        else
            os << c[k] << "/2";
    }
    os << ")";
    return os.str();
}

//---------------------------------------------------------------- root systems

void Algebra::generate_roots() {
    eps_dim_ = 0;
    for (auto& f : factors_) eps_dim_ += family_eps_dim(f);
    eps_factor_.assign(eps_dim_, 0);

    std::vector<Root> raw;
    std::vector<std::vector<int>> simple_c2;
    int off = 0;
    for (int fi = 0; fi < static_cast<int>(factors_.size()); ++fi) {
        const auto& f = factors_[fi];
        const int n = f.rank, d = family_eps_dim(f);
        for (int k = 0; k < d; ++k) eps_factor_[off + k] = fi;
        auto vec = [&](std::initializer_list<std::pair<int, int>> entries) {
            std::vector<int> v(eps_dim_, 0);
            for (auto [k, val] : entries) v[off + k] += val;
            return v;
        };
        auto add = [&](std::vector<int> v) { raw.push_back(Root{std::move(v), fi}); };

        if (f.family == Family::A) {
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j)
                    if (i != j) add(vec({{i, 2}, {j, -2}}));
            for (int i = 0; i < n; ++i) simple_c2.push_back(vec({{i, 2}, {i + 1, -2}}));
        } else {
            // long/short roots +-e_i +- e_j
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    for (int si : {1, -1})
                        for (int sj : {1, -1}) add(vec({{i, 2 * si}, {j, 2 * sj}}));
            if (f.family == Family::B || f.family == Family::F4)
                for (int i = 0; i < n; ++i)
                    for (int s : {1, -1}) add(vec({{i, 2 * s}}));
            if (f.family == Family::C)
                for (int i = 0; i < n; ++i)
                    for (int s : {1, -1}) add(vec({{i, 4 * s}}));
            if (f.family == Family::F4)
                for (int m = 0; m < 16; ++m)
                    add(vec({{0, (m & 1) ? -1 : 1}, {1, (m & 2) ? -1 : 1}, {2, (m & 4) ? -1 : 1},
                             {3, (m & 8) ? -1 : 1}}));
            switch (f.family) {
                case Family::B:
                    for (int i = 0; i + 1 < n; ++i) simple_c2.push_back(vec({{i, 2}, {i + 1, -2}}));
                    simple_c2.push_back(vec({{n - 1, 2}}));
                    break;
                case Family::C:
                    for (int i = 0; i + 1 < n; ++i) simple_c2.push_back(vec({{i, 2}, {i + 1, -2}}));
                    simple_c2.push_back(vec({{n - 1, 4}}));
                    break;
                case Family::D:
                    for (int i = 0; i + 1 < n; ++i) simple_c2.push_back(vec({{i, 2}, {i + 1, -2}}));
                    simple_c2.push_back(vec({{n - 2, 2}, {n - 1, 2}}));
                    break;
                case Family::F4:
                    simple_c2.push_back(vec({{1, 2}, {2, -2}}));
                    simple_c2.push_back(vec({{2, 2}, {3, -2}}));
                    simple_c2.push_back(vec({{3, 2}}));
                    simple_c2.push_back(vec({{0, 1}, {1, -1}, {2, -1}, {3, -1}}));
                    break;
                default: break;
            }
        }
        off += d;
    }

    // Gram matrix of the simple roots and its inverse (block diagonal across factors).
    const size_t r = simple_c2.size();
    RMat gram(r, std::vector<Rational>(r, Rational(0)));
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j) gram[i][j] = ip_c2(simple_c2[i], simple_c2[j]);
    gram_inv_ = invert(gram);

    // Simple-root coordinates: c = G^{-1} (alpha_s . beta).
    struct Tmp {
        Root root;
        std::vector<Rational> coef;
        int height;
        bool pos;
    };
    std::vector<Tmp> tmp;
    for (auto& rt : raw) {
        std::vector<Rational> w(r), c(r, Rational(0));
        for (size_t s = 0; s < r; ++s) w[s] = ip_c2(simple_c2[s], rt.c2);
        Rational h(0);
        bool pos = false, neg = false;
        for (size_t s = 0; s < r; ++s) {
            for (size_t t = 0; t < r; ++t) c[s] += gram_inv_[s][t] * w[t];
            if (c[s].get_den() != 1) throw std::logic_error("non-integral root coordinates");
            if (sgn(c[s]) > 0) pos = true;
            if (sgn(c[s]) < 0) neg = true;
            h += c[s];
        }
        if (pos == neg) throw std::logic_error("root neither positive nor negative");
        tmp.push_back({rt, c, static_cast<int>(h.get_num().get_si()), pos});
    }
    // Positive roots by height, then by simple coordinates; negatives mirror them.
    std::vector<Tmp> posr;
    for (auto& t : tmp)
        if (t.pos) posr.push_back(t);
    std::sort(posr.begin(), posr.end(), [](const Tmp& x, const Tmp& y) {
        if (x.height != y.height) return x.height < y.height;
        return std::lexicographical_compare(y.coef.begin(), y.coef.end(), x.coef.begin(), x.coef.end());
    });
    roots_.clear();
    positive_.clear();
    height_.clear();
    for (auto& t : posr) {
        roots_.push_back(t.root);
        positive_.push_back(true);
        height_.push_back(t.height);
    }
    for (auto& t : posr) {
        Root n = t.root;
        for (auto& v : n.c2) v = -v;
        roots_.push_back(n);
        positive_.push_back(false);
        height_.push_back(-t.height);
    }
    index_.clear();
    for (int i = 0; i < nroots(); ++i) index_[roots_[i].c2] = i;
    simple_.clear();
    for (auto& s : simple_c2) simple_.push_back(index_.at(s));
}

void Algebra::order_roots() {
    const int n = nroots();
    neg_.assign(n, -1);
    sum_.assign(static_cast<size_t>(n) * n, -1);
    std::vector<int> tmp(eps_dim_);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < eps_dim_; ++k) tmp[k] = -roots_[i].c2[k];
        neg_[i] = index_.at(tmp);
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < eps_dim_; ++k) tmp[k] = roots_[i].c2[k] + roots_[j].c2[k];
            sum_[i * n + j] = root_index(tmp);
        }
    }
    pos_list_.clear();
    compact_pos_.assign(n, -1);
    for (int i = 0; i < n; ++i)
        if (positive_[i]) {
            compact_pos_[i] = rank() + 2 * static_cast<int>(pos_list_.size());
            pos_list_.push_back(i);
        }
}

//---------------------------------------------------------------- structure constants
// Integral Chevalley constants n_{r,s} = +-(p+1) from signs on extraspecial pairs,
// propagated with the standard length relations; then rescaled to B(E_a, E_-a) = 1.

void Algebra::compute_structure_constants() {
    const int n = nroots();
    std::vector<Rational> npos(static_cast<size_t>(n) * n, Rational(0));
    std::vector<bool> known(static_cast<size_t>(n) * n, false);

    auto len = [&](int i) { return ip(i, i); };
    auto p_string = [&](int a, int b) {  // largest p with b - p a a root
        int p = 0, cur = b;
        while (true) {
            int nx = sum(cur, neg_[a]);
            if (nx < 0) break;
            ++p;
            cur = nx;
        }
        return p;
    };

    std::function<Rational(int, int)> nany = [&](int r, int s) -> Rational {
        if (s == neg_[r] || sum(r, s) < 0) return Rational(0);
        if (positive_[r] && positive_[s]) {
            if (!known[r * n + s]) throw std::logic_error("structure constant requested out of order");
            return npos[r * n + s];
        }
        if (!positive_[r] && !positive_[s]) return -nany(neg_[r], neg_[s]);
        if (!positive_[r]) return -nany(s, r);
        // r > 0, s < 0
        int t = neg_[sum(r, s)];
        if (positive_[t]) return Rational(len(t) / len(s)) * nany(t, r);
        return Rational(len(t) / len(r)) * nany(s, t);
    };

    int extraspecial_count = 0;
    for (int xi : pos_list_) {
        if (height_[xi] == 1) continue;
        std::vector<std::pair<int, int>> pairs;
        for (int rho : pos_list_) {
            int sigma = sum(xi, neg_[rho]);
            if (sigma >= 0 && positive_[sigma] && rho < sigma) pairs.emplace_back(rho, sigma);
        }
        if (pairs.empty()) throw std::logic_error("non-simple root without decomposition");
        std::sort(pairs.begin(), pairs.end());
        auto [al, be] = pairs.front();
        int sign = 1;
        if (conv_ == SignConvention::Alternate && (extraspecial_count % 2 == 1)) sign = -1;
        ++extraspecial_count;
        Rational nab(sign * (p_string(al, be) + 1));
        npos[al * n + be] = nab;
        npos[be * n + al] = -nab;
        known[al * n + be] = known[be * n + al] = true;
        for (size_t k = 1; k < pairs.size(); ++k) {
            auto [rho, sigma] = pairs[k];
            Rational t2(0), t3(0);
            int brho = sum(be, neg_[rho]);
            if (brho >= 0) t2 = nany(be, neg_[rho]) * nany(al, neg_[sigma]) / len(brho);
            int arho = sum(al, neg_[rho]);
            if (arho >= 0) t3 = nany(neg_[rho], al) * nany(be, neg_[sigma]) / len(arho);
            Rational v = len(xi) * (t2 + t3) / nab;
            npos[rho * n + sigma] = v;
            npos[sigma * n + rho] = -v;
            known[rho * n + sigma] = known[sigma * n + rho] = true;
        }
    }

    // c_a = sqrt((a,a)/2) lies in {1/sqrt2, 1, sqrt2}.
    auto cfac = [&](int i) -> Q2 {
        Rational l = len(i);
        if (l == 1) return Q2::inv_sqrt2();
        if (l == 2) return Q2(1);
        if (l == 4) return Q2::sqrt2();
        throw std::logic_error("unexpected root length");
    };
    nexact_.assign(static_cast<size_t>(n) * n, Q2());
    ndouble_.assign(static_cast<size_t>(n) * n, 0.0);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            int s = sum(a, b);
            if (s < 0 || b == neg_[a]) continue;
            Rational nab = nany(a, b);
            if (nab.get_den() != 1) throw std::logic_error("non-integral Chevalley constant");
            Q2 v = Q2(nab) * cfac(a) * cfac(b) / cfac(s);
            nexact_[a * n + b] = v;
            ndouble_[a * n + b] = v.to_double();
        }
}

void Algebra::compute_killing_scale() {
    killing_scale_.clear();
    for (int fi = 0; fi < static_cast<int>(factors_.size()); ++fi) {
        int s = -1;
        for (int i : simple_)
            if (roots_[i].factor == fi) {
                s = i;
                break;
            }
        // tr(ad H_v ad H_v) = sum_b b(H_v)^2 with b(H_v) = (b, v).
        Rational tr(0);
        for (int b = 0; b < nroots(); ++b) {
            Rational x = ip(b, s);
            tr += x * x;
        }
        killing_scale_.push_back(Rational(tr / ip(s, s)));
    }
}

//---------------------------------------------------------------- elements

XElem H_root(const Algebra& g, int a) {
    XElem x(g);
    const auto& c2 = g.root(a).c2;
    for (int k = 0; k < g.eps_dim(); ++k)
        if (c2[k]) x.add_h(k, Q2i(rat(c2[k], 2)));
    return x;
}

XElem E_root(const Algebra& g, int a) {
    XElem x(g);
    x.add_e(a, Q2i(1));
    return x;
}

XElem iH_root(const Algebra& g, int a) { return Q2i::I() * H_root(g, a); }

std::pair<XElem, XElem> compact_generators(const Algebra& g, int a) {
    if (a < 0 || a >= g.nroots()) throw std::invalid_argument("compact_generators: not a root");
    const Q2i s(Q2::inv_sqrt2());
    XElem f(g), gg(g);
    f.add_e(a, s);
    f.add_e(g.neg(a), -s);
    gg.add_e(a, Q2i::I() * s);
    gg.add_e(g.neg(a), Q2i::I() * s);
    return {f, gg};
}

CElem to_numeric(const XElem& x) {
    CElem r(*x.alg);
    for (auto& [k, c] : x.h) r.add_h(k, c.to_complex());
    for (auto& [k, c] : x.e) r.add_e(k, c.to_complex());
    return r;
}

namespace {

template <class S, class R>
std::vector<R> coords_impl(const Element<S>& x, const std::function<R(const S&)>& real_part,
                           const std::function<R(const S&)>& imag_part, const R& inv_sqrt2) {
    const Algebra& g = *x.alg;
    const int r = g.rank();
    std::vector<R> out(g.dim(), R(0));
    // Cartan: v = i sum_s c_s alpha_s  =>  c = -i G^{-1} w, w_s = (alpha_s . v)
    const auto& sr = g.simple_roots();
    const auto& gi = g.simple_gram_inv();
    std::vector<S> w(r, S(0));
    for (int s = 0; s < r; ++s) w[s] = root_on_cartan(g, sr[s], x.h);
    for (int s = 0; s < r; ++s) {
        S acc(0);
        for (int t = 0; t < r; ++t) acc += Scalar<S>::from_q2(Q2(gi[s][t])) * w[t];
        // -i * acc: real part = imag(acc)
        out[s] = imag_part(acc);
    }
    for (int p : g.positive_roots()) {
        int k = g.compact_index_of_root(p);
        S ep(0), em(0);
        if (auto it = x.e.find(p); it != x.e.end()) ep = it->second;
        if (auto it = x.e.find(g.neg(p)); it != x.e.end()) em = it->second;
        S xs = ep - em;            // x = (ep - em)/sqrt2
        S ys = ep + em;            // y = -i (ep + em)/sqrt2 -> real part = imag(ep+em)/sqrt2
        out[k] = real_part(xs) * inv_sqrt2;
        out[k + 1] = imag_part(ys) * inv_sqrt2;
    }
    return out;
}

}  // namespace

std::vector<Q2> real_coords(const XElem& x) {
    auto re = std::function<Q2(const Q2i&)>([](const Q2i& c) { return c.re; });
    auto im = std::function<Q2(const Q2i&)>([](const Q2i& c) { return c.im; });
    auto out = coords_impl<Q2i, Q2>(x, re, im, Q2::inv_sqrt2());
    // Compact form: the E_-a coefficient is -conj of the E_a one, and the Cartan part is
    // reproduced by its coordinates.
    const Algebra& g = *x.alg;
    auto coef = [&](int a) {
        auto it = x.e.find(a);
        return it == x.e.end() ? Q2i() : it->second;
    };
    bool ok = true;
    for (int p : g.positive_roots()) ok = ok && coef(g.neg(p)) == -coef(p).conj();
    XElem h(g);
    const auto& sr = g.simple_roots();
    for (int k = 0; k < g.rank() && ok; ++k) {
        if (out[k].is_zero()) continue;
        const auto& c2 = g.root(sr[k]).c2;
        for (int j = 0; j < g.eps_dim(); ++j)
            if (c2[j]) h.add_h(j, Q2i::I() * Q2i(out[k]) * detail::half_c2(c2[j], static_cast<const Q2i*>(nullptr)));
    }
    ok = ok && h.h == x.h;
    if (!ok) throw std::invalid_argument("element is not in the compact real form");
    return out;
}

std::vector<double> real_coords(const CElem& x, double* imag_residual) {
    using C = std::complex<double>;
    auto re = std::function<double(const C&)>([](const C& c) { return c.real(); });
    auto im = std::function<double(const C&)>([](const C& c) { return c.imag(); });
    auto out = coords_impl<C, double>(x, re, im, 1.0 / std::sqrt(2.0));
    if (imag_residual) {
        CElem back = from_real_coords(*x.alg, out);
        CElem d = back - x;
        double m = 0;
        for (auto& [k, c] : d.h) m = std::max(m, std::abs(c));
        for (auto& [k, c] : d.e) m = std::max(m, std::abs(c));
        *imag_residual = m;
    }
    return out;
}

XElem compact_basis_element(const Algebra& g, int k) {
    std::vector<Q2> c(g.dim(), Q2());
    c[k] = Q2(1);
    return from_real_coords(g, c);
}

namespace {
template <class S, class R>
Element<S> from_coords_impl(const Algebra& g, const std::vector<R>& c, const S& i_unit,
                            const S& inv_sqrt2, const std::function<S(const R&)>& lift) {
    Element<S> x(g);
    const auto& sr = g.simple_roots();
    for (int s = 0; s < g.rank(); ++s) {
        if (Scalar<S>::is_zero(lift(c[s]))) continue;
        const auto& c2 = g.root(sr[s]).c2;
        for (int k = 0; k < g.eps_dim(); ++k)
            if (c2[k]) x.add_h(k, i_unit * lift(c[s]) * detail::half_c2(c2[k], static_cast<const S*>(nullptr)));
    }
    for (int p : g.positive_roots()) {
        int k = g.compact_index_of_root(p);
        S xv = lift(c[k]), yv = lift(c[k + 1]);
        x.add_e(p, (xv + i_unit * yv) * inv_sqrt2);
        x.add_e(g.neg(p), (i_unit * yv - xv) * inv_sqrt2);
    }
    return x;
}
}  // namespace

XElem from_real_coords(const Algebra& g, const std::vector<Q2>& c) {
    return from_coords_impl<Q2i, Q2>(g, c, Q2i::I(), Q2i(Q2::inv_sqrt2()),
                                     [](const Q2& v) { return Q2i(v); });
}

CElem from_real_coords(const Algebra& g, const std::vector<double>& c) {
    using C = std::complex<double>;
    return from_coords_impl<C, double>(g, c, C(0, 1), C(1.0 / std::sqrt(2.0), 0),
                                       [](const double& v) { return C(v, 0); });
}

std::string element_str(const XElem& x) {
    std::ostringstream os;
    bool first = true;
    const Algebra& g = *x.alg;
    for (auto& [k, c] : x.h) {
        os << (first ? "" : " + ") << "(" << c.str() << ")*h[" << k << "]";
        first = false;
    }
    for (auto& [a, c] : x.e) {
        os << (first ? "" : " + ") << "(" << c.str() << ")*E" << g.root_str(a);
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace kcoh
