// Exact arithmetic in Q(sqrt2, i): values a + b*sqrt2 + i*(c + d*sqrt2), a..d rational.
#pragma once

#include <complex>
#include <gmpxx.h>
#include <string>

namespace kcoh {

using Rational = mpq_class;

// Canonicalized n/d.
inline Rational rat(long n, long d = 1) {
    Rational r(n, d);
    r.canonicalize();
    return r;
}

// Real quadratic field Q(sqrt2).
struct Q2 {
    Rational a;  // rational part
    Rational b;  // coefficient of sqrt2

    Q2() : a(0), b(0) {}
    Q2(long v) : a(v), b(0) {}
    Q2(const Rational& r) : a(r), b(0) {}
    Q2(const Rational& r, const Rational& s) : a(r), b(s) {}

    static Q2 sqrt2() { return Q2(Rational(0), Rational(1)); }
    static Q2 inv_sqrt2() { return Q2(Rational(0), rat(1, 2)); }

    bool is_zero() const { return sgn(a) == 0 && sgn(b) == 0; }
    double to_double() const;
    int sign() const;  // exact sign of a + b*sqrt2
    Q2 inverse() const;
    std::string str() const;
};

Q2 operator+(const Q2& x, const Q2& y);
Q2 operator-(const Q2& x, const Q2& y);
Q2 operator-(const Q2& x);
Q2 operator*(const Q2& x, const Q2& y);
Q2 operator/(const Q2& x, const Q2& y);
bool operator==(const Q2& x, const Q2& y);
inline bool operator!=(const Q2& x, const Q2& y) { return !(x == y); }
inline Q2& operator+=(Q2& x, const Q2& y) { x = x + y; return x; }
inline Q2& operator-=(Q2& x, const Q2& y) { x = x - y; return x; }
inline Q2& operator*=(Q2& x, const Q2& y) { x = x * y; return x; }

// Q(sqrt2, i) = Q2 + i*Q2.
struct Q2i {
    Q2 re;
    Q2 im;

    Q2i() = default;
    Q2i(long v) : re(v), im() {}
    Q2i(const Rational& r) : re(r), im() {}
    Q2i(const Q2& r) : re(r), im() {}
    Q2i(const Q2& r, const Q2& i) : re(r), im(i) {}

    static Q2i I() { return Q2i(Q2(), Q2(1)); }

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    Q2i conj() const { return Q2i(re, -im); }
    std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }
    Q2i inverse() const;
    std::string str() const;
};

Q2i operator+(const Q2i& x, const Q2i& y);
Q2i operator-(const Q2i& x, const Q2i& y);
Q2i operator-(const Q2i& x);
Q2i operator*(const Q2i& x, const Q2i& y);
Q2i operator/(const Q2i& x, const Q2i& y);
bool operator==(const Q2i& x, const Q2i& y);
inline bool operator!=(const Q2i& x, const Q2i& y) { return !(x == y); }
inline Q2i& operator+=(Q2i& x, const Q2i& y) { x = x + y; return x; }
inline Q2i& operator-=(Q2i& x, const Q2i& y) { x = x - y; return x; }
inline Q2i& operator*=(Q2i& x, const Q2i& y) { x = x * y; return x; }

// Parses sums of products such as "-2/3*i", "1/2*sqrt2", "3 - i/2".
Q2i parse_q2i(const std::string& s);

// Scalar traits so that algebra elements can be templated over exact or floating rings.
template <class S> struct Scalar;

template <> struct Scalar<Q2i> {
    static bool is_zero(const Q2i& x) { return x.is_zero(); }
    static Q2i from_q2(const Q2& x) { return Q2i(x); }
    static Q2i conj(const Q2i& x) { return x.conj(); }
    static Q2i i() { return Q2i::I(); }
};

template <> struct Scalar<std::complex<double>> {
    using C = std::complex<double>;
    static bool is_zero(const C& x) { return x == C(0.0, 0.0); }
    static C from_q2(const Q2& x) { return C(x.to_double(), 0.0); }
    static C conj(const C& x) { return std::conj(x); }
    static C i() { return C(0.0, 1.0); }
};

}  // namespace kcoh
