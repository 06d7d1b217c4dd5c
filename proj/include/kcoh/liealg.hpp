// Semisimple Lie algebras in Chevalley normalization over exact or floating scalars.
#pragma once

#include "kcoh/field.hpp"

#include <complex>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace kcoh {

enum class Family { A, B, C, D, F4 };

struct SimpleFactor {
    Family family;
    int rank;
};

std::string family_name(Family f);
Family parse_family(const std::string& s);

struct Root {
    std::vector<int> c2;  // doubled epsilon coordinates in the global epsilon space
    int factor = 0;
};

// Sign table selector for the extraspecial pairs. Both choices satisfy the N symmetries.
enum class SignConvention { Standard, Alternate };

class Algebra {
public:
    static std::shared_ptr<const Algebra> build(const std::vector<SimpleFactor>& factors,
                                                SignConvention conv = SignConvention::Standard);

    const std::vector<SimpleFactor>& factors() const { return factors_; }
    SignConvention convention() const { return conv_; }
    int eps_dim() const { return eps_dim_; }
    int rank() const { return static_cast<int>(simple_.size()); }
    int nroots() const { return static_cast<int>(roots_.size()); }
    int dim() const { return rank() + nroots(); }

    const Root& root(int i) const { return roots_.at(i); }
    int root_index(const std::vector<int>& c2) const;  // -1 when not a root
    int neg(int i) const { return neg_[i]; }
    int sum(int i, int j) const { return sum_[i * nroots() + j]; }  // -1 if not a root
    bool positive(int i) const { return positive_[i]; }
    int height(int i) const { return height_[i]; }
    const std::vector<int>& simple_roots() const { return simple_; }
    int eps_factor(int k) const { return eps_factor_[k]; }

    // N_{i,j} for E_i, E_j with i+j a root, zero otherwise.
    const Q2& N(int i, int j) const { return nexact_[i * nroots() + j]; }
    double Nd(int i, int j) const { return ndouble_[i * nroots() + j]; }

    // (alpha_i, alpha_j) under the working invariant form.
    Rational ip(int i, int j) const;
    Rational ip_c2(const std::vector<int>& x, const std::vector<int>& y) const;

    // Ratio Killing(H_v, H_w) / (v . w), per simple factor, from ad traces.
    const std::vector<Rational>& killing_scale() const { return killing_scale_; }
    // (alpha_i, alpha_j) under the Killing form itself: ip / killing_scale; 0 across factors.
    Rational killing_ip(int i, int j) const;

    // Inverse Gram matrix of the simple roots (used for compact coordinates).
    const std::vector<std::vector<Rational>>& simple_gram_inv() const { return gram_inv_; }

    // Ordered list of positive roots (compact basis order).
    const std::vector<int>& positive_roots() const { return pos_list_; }
    int compact_index_of_root(int pos_root) const { return compact_pos_[pos_root]; }

    std::string root_str(int i) const;

private:
    std::vector<SimpleFactor> factors_;
    SignConvention conv_ = SignConvention::Standard;
    int eps_dim_ = 0;
    std::vector<int> eps_factor_;
    std::vector<Root> roots_;
    std::map<std::vector<int>, int> index_;
    std::vector<int> neg_, sum_, height_, simple_, pos_list_, compact_pos_;
    std::vector<bool> positive_;
    std::vector<Q2> nexact_;
    std::vector<double> ndouble_;
    std::vector<Rational> killing_scale_;
    std::vector<std::vector<Rational>> gram_inv_;

    void generate_roots();
    void order_roots();
    void compute_structure_constants();
    void compute_killing_scale();
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

struct MixedAlgebraError : std::invalid_argument {
    MixedAlgebraError() : std::invalid_argument("operands belong to different algebras") {}
};

// Sparse element: sum_k h[k] H_{e_k} + sum_a e[a] E_a, where H_v is the B-dual of v.
template <class S>
struct Element {
    const Algebra* alg = nullptr;
    std::map<int, S> h;
    std::map<int, S> e;

    Element() = default;
    explicit Element(const Algebra& a) : alg(&a) {}

    bool is_zero() const { return h.empty() && e.empty(); }
    void add_h(int k, const S& c) { accumulate(h, k, c); }
    void add_e(int a, const S& c) { accumulate(e, a, c); }

private:
    static void accumulate(std::map<int, S>& m, int k, const S& c) {
        if (Scalar<S>::is_zero(c)) return;
        auto it = m.find(k);
        if (it == m.end()) {
            m.emplace(k, c);
        } else {
            it->second += c;
            if (Scalar<S>::is_zero(it->second)) m.erase(it);
        }
    }
};

using XElem = Element<Q2i>;
using CElem = Element<std::complex<double>>;

namespace detail {
inline void check_same(const Algebra* a, const Algebra* b) {
    if (a != b) throw MixedAlgebraError();
}
inline const Q2& nconst(const Algebra& g, int i, int j, const Q2i*) { return g.N(i, j); }
inline double nconst(const Algebra& g, int i, int j, const std::complex<double>*) { return g.Nd(i, j); }
inline Q2i half_c2(int v, const Q2i*) { return Q2i(rat(v, 2)); }
inline std::complex<double> half_c2(int v, const std::complex<double>*) { return {0.5 * v, 0.0}; }
}  // namespace detail

template <class S>
Element<S> operator+(const Element<S>& x, const Element<S>& y) {
    detail::check_same(x.alg, y.alg);
    Element<S> r = x;
    for (auto& [k, c] : y.h) r.add_h(k, c);
    for (auto& [k, c] : y.e) r.add_e(k, c);
    return r;
}

template <class S>
Element<S> operator*(const S& s, const Element<S>& x) {
    Element<S> r(*x.alg);
    if (Scalar<S>::is_zero(s)) return r;
    for (auto& [k, c] : x.h) r.add_h(k, s * c);
    for (auto& [k, c] : x.e) r.add_e(k, s * c);
    return r;
}

template <class S>
Element<S> operator-(const Element<S>& x) { return S(-1) * x; }

template <class S>
Element<S> operator-(const Element<S>& x, const Element<S>& y) { return x + (S(-1) * y); }

template <class S>
bool operator==(const Element<S>& x, const Element<S>& y) {
    return x.alg == y.alg && x.h == y.h && x.e == y.e;
}

// beta(H_v) for the Cartan part v of x.
template <class S>
S root_on_cartan(const Algebra& g, int beta, const std::map<int, S>& h) {
    S acc(0);
    const auto& c2 = g.root(beta).c2;
    for (auto& [k, c] : h)
        if (c2[k] != 0) acc += detail::half_c2(c2[k], static_cast<const S*>(nullptr)) * c;
    return acc;
}

template <class S>
Element<S> bracket(const Element<S>& x, const Element<S>& y) {
    detail::check_same(x.alg, y.alg);
    const Algebra& g = *x.alg;
    Element<S> r(g);
    // [H_v, E_b] = b(H_v) E_b
    if (!x.h.empty())
        for (auto& [b, c] : y.e) r.add_e(b, root_on_cartan(g, b, x.h) * c);
    if (!y.h.empty())
        for (auto& [b, c] : x.e) r.add_e(b, S(-1) * root_on_cartan(g, b, y.h) * c);
    for (auto& [a, ca] : x.e) {
        for (auto& [b, cb] : y.e) {
            if (b == g.neg(a)) {
                S c = ca * cb;
                const auto& c2 = g.root(a).c2;
                for (int k = 0; k < g.eps_dim(); ++k)
                    if (c2[k] != 0) r.add_h(k, detail::half_c2(c2[k], static_cast<const S*>(nullptr)) * c);
            } else {
                int s = g.sum(a, b);
                if (s >= 0) r.add_e(s, S(detail::nconst(g, a, b, static_cast<const S*>(nullptr))) * ca * cb);
            }
        }
    }
    return r;
}

template <class S>
S killing(const Element<S>& x, const Element<S>& y) {
    detail::check_same(x.alg, y.alg);
    const Algebra& g = *x.alg;
    S acc(0);
    for (auto& [k, c] : x.h) {
        auto it = y.h.find(k);
        if (it != y.h.end()) acc += c * it->second;
    }
    for (auto& [a, c] : x.e) {
        auto it = y.e.find(g.neg(a));
        if (it != y.e.end()) acc += c * it->second;
    }
    return acc;
}

// Conjugation of g^C with respect to the compact real form: E_a -> -E_{-a}, H -> -conj(H).
template <class S>
Element<S> compact_conj(const Element<S>& x) {
    const Algebra& g = *x.alg;
    Element<S> r(g);
    for (auto& [k, c] : x.h) r.add_h(k, S(-1) * Scalar<S>::conj(c));
    for (auto& [a, c] : x.e) r.add_e(g.neg(a), S(-1) * Scalar<S>::conj(c));
    return r;
}

// Basis element constructors.
XElem H_root(const Algebra& g, int a);
XElem E_root(const Algebra& g, int a);
XElem iH_root(const Algebra& g, int a);

// compact_generators: (F_a, G_a) with F = (E_a - E_-a)/sqrt2, G = i(E_a + E_-a)/sqrt2.
std::pair<XElem, XElem> compact_generators(const Algebra& g, int a);

CElem to_numeric(const XElem& x);

// Coordinates in the compact real basis (iH_{simple}, then F_p, G_p for positive p).
std::vector<Q2> real_coords(const XElem& x);  // throws if x is not in the compact form
std::vector<double> real_coords(const CElem& x, double* imag_residual = nullptr);
XElem from_real_coords(const Algebra& g, const std::vector<Q2>& c);
CElem from_real_coords(const Algebra& g, const std::vector<double>& c);
XElem compact_basis_element(const Algebra& g, int k);

std::string element_str(const XElem& x);

}  // namespace kcoh
