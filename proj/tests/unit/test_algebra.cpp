#include <doctest.h>

#include "htau/series_json.hpp"
#include "random_series.hpp"

using namespace htau;
using htau::testing::random_series;

TEST_CASE("rational parsing and combinatorics")
{
    CHECK(parse_rational("-6/4") == make_rational(-3, 2));
    CHECK(to_string(make_rational(10, 4)) == "5/2");
    CHECK(factorial(10) == 3628800);
    CHECK(binomial(7, 3) == 35);
    CHECK(binomial(3, 5) == 0);
    CHECK_THROWS(parse_rational("1/0"));
    CHECK_THROWS(parse_rational("abc"));
}

TEST_CASE("Laurent polynomials in u")
{
    const UPoly a = UPoly::parse("u^-1+2");
    const UPoly b = UPoly::parse("3*u-1/2");
    CHECK(a.lowest() == -1);
    CHECK(a.highest() == 0);
    CHECK(a * b == UPoly::parse("3 + 6*u - 1/2*u^-1 - 1"));
    CHECK((a - a).is_zero());
    CHECK(UPoly::parse(a.to_string()) == a);
    CHECK(a.shifted(2) == UPoly::parse("u+2*u^2"));
    CHECK(b.truncated_above(0) == UPoly::parse("-1/2"));
}

TEST_CASE("monomials: weight, order, enumeration")
{
    const Monomial m = Monomial::from_pairs(Family::q, {{1, 2}, {3, 1}});
    CHECK(m.weight() == 5);
    CHECK(m.degree() == 3);
    CHECK(m.exponent(1) == 2);
    CHECK(m.to_string() == "q1^2*q3");
    // partitions of 0..6
    const std::vector<std::size_t> p{1, 1, 2, 3, 5, 7, 11};
    for (int w = 0; w <= 6; ++w) {
        CHECK(monomials_of_weight(Family::q, w).size() == p[static_cast<std::size_t>(w)]);
    }
    CHECK(monomials_up_to(Family::p, 6).size() == 30);
    const auto ms = monomials_up_to(Family::q, 6);
    for (std::size_t i = 1; i < ms.size(); ++i) {
        CHECK(CanonicalLess{}(ms[i - 1], ms[i]));
    }
}

TEST_CASE("series ring axioms on random input")
{
    std::mt19937 rng(20240611);
    for (int trial = 0; trial < 20; ++trial) {
        const int W = 5;
        const auto a = random_series(rng, Family::q, W, 6);
        const auto b = random_series(rng, Family::q, W, 6);
        const auto c = random_series(rng, Family::q, W, 6);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK((a - a).is_zero());
    }
}

TEST_CASE("truncation commutes with products")
{
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = random_series(rng, Family::q, 6, 8);
        const auto b = random_series(rng, Family::q, 6, 8);
        for (int w = 0; w <= 6; ++w) {
            CHECK((a * b).truncated(w) == a.truncated(w) * b.truncated(w));
        }
    }
}

TEST_CASE("partial derivatives commute and obey Leibniz")
{
    std::mt19937 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = random_series(rng, Family::q, 6, 8);
        const auto b = random_series(rng, Family::q, 6, 8);
        CHECK(partial(1, partial(2, a)) == partial(2, partial(1, a)));
        CHECK(partial(2, a * b) == partial(2, a) * b.truncated(4) + a.truncated(4) * partial(2, b));
    }
    const auto s = TruncatedSeries::variable(Family::q, 4, 2);
    CHECK(partial(2, s).W() == 2);
    CHECK(partial(5, s).W() == -1);
}

TEST_CASE("u-precision follows products")
{
    const int W = 4;
    auto a = TruncatedSeries::variable(Family::q, W, 1).with_ucap({2, 2, 2, 2, 2});
    auto b = TruncatedSeries::variable(Family::q, W, 1, UPoly::monomial(1));
    const auto ab = a * b;
    // a is known to u^2, b starts at u^1: the product is known to u^3
    CHECK(ab.ucap(2) == 3);
    CHECK(ab.coefficient_of(Monomial::variable(Family::q, 1, 2)) == UPoly::monomial(1));
    const auto layer = u_layer(ab, 1);
    CHECK(layer.W() == W);
    CHECK(u_layer(ab, 5).W() < W);
}

TEST_CASE("band overflow is an error, not a silent drop")
{
    const auto s = TruncatedSeries::variable(Family::q, 2, 1, UPoly::monomial(3));
    CHECK_THROWS_AS(s.with_band({0, 1}), BandOverflow);
    CHECK_THROWS_AS(TruncatedSeries::variable(Family::q, 2, 1, UPoly::monomial(5)), BandOverflow);
    // sums take the hull of the two bands
    TruncatedSeries t(Family::q, 2, {0, 1});
    t += s.with_band({0, 3});
    CHECK(t.band() == Band{0, 3});
}

TEST_CASE("json round trip")
{
    std::mt19937 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        auto a = random_series(rng, Family::p, 5, 7);
        if (trial % 2) {
            a = a.with_ucap({3, 2, 2, 1, 0, 0});
        }
        CHECK(series_from_json(to_json(a)) == a);
    }
    CHECK_THROWS_AS(series_from_json(nlohmann::json::parse(R"({"family":"x","W":1,"terms":[]})")),
                    std::invalid_argument);
}

TEST_CASE("linear substitution matches term-by-term expansion")
{
    const int W = 4;
    LinearRule rule{Family::q, {}};
    for (int b = 1; b <= W; ++b) {
        rule.images.emplace(b, TruncatedSeries::variable(Family::q, W, b) +
                                   TruncatedSeries::variable(Family::q, W, b).scaled(UPoly::monomial(1)));
    }
    // p1^2 + p2 -> (1+u)^2 q1^2 + (1+u) q2
    TruncatedSeries s = TruncatedSeries::monomial(Monomial::variable(Family::p, 1, 2), W) +
                        TruncatedSeries::variable(Family::p, W, 2);
    const auto r = substitute_linear(s, rule);
    CHECK(r.coefficient_of(Monomial::variable(Family::q, 1, 2)) == UPoly::parse("1+2*u+u^2"));
    CHECK(r.coefficient_of(Monomial::variable(Family::q, 2)) == UPoly::parse("1+u"));
    CHECK(r.size() == 2);
}
