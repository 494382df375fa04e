#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "flatband/unipoly.hpp"

#include <random>

using namespace flatband;

namespace {

ZPoly zp(std::initializer_list<long> cs) {
    std::vector<Int> v;
    for (long c : cs) v.emplace_back(c);
    return ZPoly(std::move(v));
}

ZPoly random_zpoly(std::mt19937& rng, int maxdeg) {
    int deg = static_cast<int>(rng() % static_cast<unsigned>(maxdeg + 1));
    std::vector<Int> c(static_cast<size_t>(deg) + 1);
    for (auto& v : c) v = static_cast<long>(rng() % 11) - 5;
    return ZPoly(std::move(c));
}

}  // namespace

TEST_CASE("basic arithmetic and evaluation") {
    ZPoly p = zp({1, 2, 1});  // (x+1)^2
    ZPoly q = zp({-1, 1});    // x-1
    CHECK(p.degree() == 2);
    CHECK((p * q).degree() == 3);
    CHECK((p + q).coeff(0) == 0);
    CHECK(p.evaluate(Rational(2)) == Rational(9));
    CHECK((p * q) == zp({-1, -1, 1, 1}));
    CHECK(p.derivative() == zp({2, 2}));
}

TEST_CASE("gcd examples") {
    // gcd(2(x+1), x^2-1) = x+1
    CHECK(zpoly_gcd(zp({2, 2}), zp({-1, 0, 1})) == zp({1, 1}));
    // gcd(x, x^2) = x
    CHECK(zpoly_gcd(zp({0, 1}), zp({0, 0, 1})) == zp({0, 1}));
    // coprime
    CHECK(zpoly_gcd(zp({1, 0, 1}), zp({2, 0, 1})) == zp({1}));
    // gcd(a, 0) = primitive(a)
    CHECK(zpoly_gcd(zp({2, 4}), ZPoly()) == zp({1, 2}));
    CHECK_THROWS_AS(zpoly_gcd(ZPoly(), ZPoly()), error);
}

TEST_CASE("gcd divides both arguments and keeps common rational roots") {
    std::mt19937 rng(12345);
    for (int it = 0; it < 200; ++it) {
        ZPoly a = random_zpoly(rng, 5), b = random_zpoly(rng, 5);
        if (a.is_zero() && b.is_zero()) continue;
        ZPoly g = zpoly_gcd(a, b);
        if (!a.is_zero()) CHECK(poly_mod(to_qpoly(a), to_qpoly(g)).is_zero());
        if (!b.is_zero()) CHECK(poly_mod(to_qpoly(b), to_qpoly(g)).is_zero());
        // any common rational root of a and b is a root of g
        for (long r = -3; r <= 3; ++r) {
            Rational x(r);
            if (!a.is_zero() && !b.is_zero() && sign_at(a, x) == 0 && sign_at(b, x) == 0)
                CHECK(sign_at(g, x) == 0);
        }
    }
}

TEST_CASE("ring axioms on random triples") {
    std::mt19937 rng(999);
    for (int it = 0; it < 100; ++it) {
        ZPoly a = random_zpoly(rng, 4), b = random_zpoly(rng, 4), c = random_zpoly(rng, 4);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK(a + b == b + a);
    }
}

TEST_CASE("squarefree decomposition") {
    // (x-1)^2 (x+2)
    ZPoly p = zp({-1, 1}) * zp({-1, 1}) * zp({2, 1});
    auto sf = squarefree_decomposition(p);
    REQUIRE(sf.size() == 2);
    CHECK(sf[0].first == zp({2, 1}));
    CHECK(sf[0].second == 1);
    CHECK(sf[1].first == zp({-1, 1}));
    CHECK(sf[1].second == 2);
}

TEST_CASE("sturm counting") {
    ZPoly p = zp({-1, -1, 1});  // x^2-x-1, roots golden ratio and conjugate
    CHECK(sturm_count_all(p) == 2);
    CHECK(sturm_count(p, Rational(1), Rational(2)) == 1);
    CHECK(sturm_count(p, Rational(-1), Rational(0)) == 1);
    CHECK(sturm_count(p, Rational(0), Rational(1)) == 0);
    CHECK(sturm_count_all(zp({1, 0, 1})) == 0);  // x^2+1
    CHECK(sturm_count_all(zp({0, -1, 0, 1})) == 3);  // x^3-x
}

TEST_CASE("divmod over the rationals") {
    QPoly a = to_qpoly(zp({-1, 0, 0, 1}));
    QPoly b = to_qpoly(zp({-1, 1}));
    auto [q, r] = divmod(a, b);
    CHECK(r.is_zero());
    CHECK(q == to_qpoly(zp({1, 1, 1})));
    CHECK_THROWS_AS(divide_exact(to_qpoly(zp({1, 1})), to_qpoly(zp({0, 1}))), error);
}

TEST_CASE("canonical rendering") {
    CHECK(poly_to_string(zp({-1, -1, 1}), "x") == "x^2 - x - 1");
    CHECK(poly_to_string(zp({1, 1}), "lambda") == "lambda + 1");
    CHECK(poly_to_string(ZPoly(), "x") == "0");
    CHECK(poly_to_string(zp({0, -2}), "x") == "-2*x");
}
