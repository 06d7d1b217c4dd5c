#include <doctest.h>

#include "kcoh/field.hpp"
#include "kcoh/literal.hpp"

#include <cmath>
#include <random>

using namespace kcoh;

TEST_CASE("sqrt2 squares to 2 and inverts exactly") {
    Q2 s = Q2::sqrt2();
    CHECK(s * s == Q2(2));
    CHECK(s * Q2::inv_sqrt2() == Q2(1));
    Q2 x(rat(3, 7), rat(-5, 2));
    CHECK(x * x.inverse() == Q2(1));
}

TEST_CASE("exact sign of a + b sqrt2") {
    CHECK(Q2(rat(-141, 100), 1).sign() == 1);   // sqrt2 - 1.41
    CHECK(Q2(rat(-142, 100), 1).sign() == -1);  // sqrt2 - 1.42
    CHECK(Q2(3, -2).sign() == 1);               // 3 - 2 sqrt2 ~ 0.17
    CHECK(Q2().sign() == 0);
}

TEST_CASE("field axioms on random elements against double evaluation") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d(-9, 9);
    auto rq = [&] { return Q2(rat(d(rng), 1 + std::abs(d(rng))), rat(d(rng), 1 + std::abs(d(rng)))); };
    for (int k = 0; k < 200; ++k) {
        Q2i x(rq(), rq()), y(rq(), rq()), z(rq(), rq());
        CHECK((x + y) * z == x * z + y * z);
        CHECK(x * y == y * x);
        std::complex<double> want = x.to_complex() * y.to_complex();
        CHECK(std::abs((x * y).to_complex() - want) < 1e-12);
        if (!y.is_zero()) CHECK((x / y) * y == x);
    }
}

TEST_CASE("scalar literals parse and round-trip") {
    CHECK(parse_q2i("-2/3*i") == Q2i(Q2(), Q2(rat(-2, 3))));
    CHECK(parse_q2i("1/2*sqrt2") == Q2i(Q2::inv_sqrt2()));
    CHECK(parse_q2i("3 - i/2") == Q2i(Q2(3), Q2(rat(-1, 2))));
    Q2i v(Q2(rat(1, 3), rat(-7, 5)), Q2(rat(-2, 9), rat(1, 4)));
    CHECK(parse_q2i(q2i_literal(v)) == v);
    CHECK_THROWS(parse_q2i("2*x"));
}
