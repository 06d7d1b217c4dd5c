#include "kcoh/field.hpp"

#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace kcoh {

double Q2::to_double() const { return a.get_d() + b.get_d() * std::sqrt(2.0); }

int Q2::sign() const {
    int sa = sgn(a), sb = sgn(b);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // opposite signs: compare a^2 with 2 b^2
    Rational a2 = a * a, b2 = 2 * b * b;
    int c = cmp(a2, b2);
    return c > 0 ? sa : (c < 0 ? sb : 0);
}

Q2 Q2::inverse() const {
    Rational n = a * a - 2 * b * b;
    if (sgn(n) == 0) throw std::domain_error("Q2: division by zero");
    return Q2(Rational(a / n), Rational(-b / n));
}

std::string Q2::str() const {
    std::ostringstream os;
    if (sgn(b) == 0) {
        os << a.get_str();
    } else if (sgn(a) == 0) {
        os << b.get_str() << "*sqrt2";
    } else {
        os << a.get_str() << (sgn(b) > 0 ? "+" : "") << b.get_str() << "*sqrt2";
    }
    return os.str();
}

Q2 operator+(const Q2& x, const Q2& y) { return Q2(Rational(x.a + y.a), Rational(x.b + y.b)); }
Q2 operator-(const Q2& x, const Q2& y) { return Q2(Rational(x.a - y.a), Rational(x.b - y.b)); }
Q2 operator-(const Q2& x) { return Q2(Rational(-x.a), Rational(-x.b)); }
Q2 operator*(const Q2& x, const Q2& y) {
    return Q2(Rational(x.a * y.a + 2 * x.b * y.b), Rational(x.a * y.b + x.b * y.a));
}
Q2 operator/(const Q2& x, const Q2& y) { return x * y.inverse(); }
bool operator==(const Q2& x, const Q2& y) { return x.a == y.a && x.b == y.b; }

Q2i Q2i::inverse() const {
    Q2 n = re * re + im * im;
    Q2 ni = n.inverse();
    return Q2i(re * ni, -(im * ni));
}

std::string Q2i::str() const {
    if (im.is_zero()) return re.str();
    if (re.is_zero()) return "(" + im.str() + ")*i";
    return re.str() + "+(" + im.str() + ")*i";
}

Q2i operator+(const Q2i& x, const Q2i& y) { return Q2i(x.re + y.re, x.im + y.im); }
Q2i operator-(const Q2i& x, const Q2i& y) { return Q2i(x.re - y.re, x.im - y.im); }
Q2i operator-(const Q2i& x) { return Q2i(-x.re, -x.im); }
Q2i operator*(const Q2i& x, const Q2i& y) {
    return Q2i(x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re);
}
Q2i operator/(const Q2i& x, const Q2i& y) { return x * y.inverse(); }
bool operator==(const Q2i& x, const Q2i& y) { return x.re == y.re && x.im == y.im; }

namespace {

Q2i parse_factor(const std::string& f) {
    if (f == "i") return Q2i::I();
    if (f == "sqrt2") return Q2i(Q2::sqrt2());
    if (f.empty()) throw std::invalid_argument("empty factor in scalar literal");
    for (char c : f)
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/'))
            throw std::invalid_argument("bad factor '" + f + "' in scalar literal");
    Rational r(f);
    r.canonicalize();
    return Q2i(r);
}

// term := factor ('*' factor | '/' integer)*
Q2i parse_term(const std::string& t) {
    Q2i acc(1);
    std::string cur;
    auto flush = [&]() {
        acc = acc * parse_factor(cur);
        cur.clear();
    };
    for (size_t k = 0; k < t.size(); ++k) {
        char c = t[k];
        if (c == '*') {
            flush();
        } else if (c == '/' && (cur == "i" || cur == "sqrt2")) {
            // "i/2": divide the accumulated product
            flush();
            size_t j = k + 1;
            std::string den;
            while (j < t.size() && std::isdigit(static_cast<unsigned char>(t[j]))) den += t[j++];
            if (den.empty()) throw std::invalid_argument("bad divisor in scalar literal");
            acc = acc * Q2i(rat(1, std::stol(den)));
            k = j - 1;
            cur = "1";
        } else {
            cur += c;
        }
    }
    flush();
    return acc;
}

}  // namespace

Q2i parse_q2i(const std::string& s_in) {
    std::string s;
    for (char c : s_in)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("empty scalar literal");
    Q2i total;
    size_t k = 0;
    while (k < s.size()) {
        int sign = 1;
        while (k < s.size() && (s[k] == '+' || s[k] == '-')) {
            if (s[k] == '-') sign = -sign;
            ++k;
        }
        size_t j = k;
        while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
        Q2i term = parse_term(s.substr(k, j - k));
        total = sign > 0 ? total + term : total - term;
        k = j;
    }
    return total;
}

}  // namespace kcoh
