#include <doctest.h>

#include "htau/gjv.hpp"
#include "htau/intersections.hpp"
#include "htau/o_operators.hpp"
#include "random_series.hpp"

using namespace htau;
using htau::testing::random_series;

namespace {

TruncatedSeries q(int W, int i, const UPoly& c = UPoly(1))
{
    return TruncatedSeries::variable(Family::q, W, i, c);
}

Coefficient find(const std::vector<IntersectionNumber>& recs, int j, std::vector<int> degrees)
{
    for (const auto& r : recs) {
        if (r.j() == j && r.degrees() == degrees) {
            return r.value();
        }
    }
    return 0;
}

} // namespace

TEST_CASE("T-basis")
{
    const auto T = build_tbasis(3, 6);
    CHECK(T[0] == q(6, 1));
    CHECK(T[1] == q(6, 1, UPoly::parse("u")) + q(6, 2));
    CHECK(T[2] == q(6, 1, UPoly::parse("u^2")) + q(6, 2, UPoly::parse("3*u")) + q(6, 3, UPoly(2)));
    CHECK(T[3] == q(6, 1, UPoly::parse("u^3")) + q(6, 2, UPoly::parse("7*u^2")) + q(6, 3, UPoly::parse("12*u")) +
                      q(6, 4, UPoly(6)));
    CHECK_THROWS(build_tbasis(6, 6));
}

TEST_CASE("change of variables is invertible")
{
    std::mt19937 rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        const auto s = random_series(rng, Family::p, 5, 6);
        CHECK(inverse_change_of_variables(change_of_variables(s)) == s);
    }
    CHECK_THROWS(change_of_variables(q(3, 1)));
}

TEST_CASE("L inverts on positive weight")
{
    std::mt19937 rng(43);
    for (int trial = 0; trial < 10; ++trial) {
        auto s = random_series(rng, Family::q, 5, 6);
        s -= TruncatedSeries::constant(Family::q, 5, s.coefficient_of(Monomial(Family::q)));
        const auto X = invert_L(s);
        const auto back = apply(L_operator(), X);
        CHECK(compare_series("L(invert_L)", 5, back, s).passed());
    }
    CHECK_THROWS(invert_L(TruncatedSeries::constant(Family::q, 3, UPoly(1))));
}

TEST_CASE("both tau assemblies agree")
{
    const int W = 6;
    const auto G = extract_G(W);
    for (const auto& c : {UPoly(0), UPoly(1), UPoly::parse("u^-1+2")}) {
        CHECK(compare_series("tau", W, assemble_tau_theorem1(c, G), assemble_tau_theorem2(c, W)).passed());
    }
}

TEST_CASE("the T-expansion of G has odd powers of u only")
{
    const auto ex = tbasis_expansion(extract_G(8));
    CHECK(ex.terms.size() > 10);
    for (const auto& t : ex.terms) {
        CAPTURE(t.tmono.to_string());
        CHECK(t.e % 2 == 1);
    }
}

TEST_CASE("intersection numbers: genus zero is multinomial")
{
    const int W = 8;
    const auto recs = extract_intersections_tbasis(extract_G(W), W - 1);
    for (const auto& r : recs) {
        if (r.g() != 0) {
            continue;
        }
        // <tau_{d_1}..tau_{d_n}>_0 = (n-3)! / prod d_i!
        Coefficient expect = factorial(r.n() - 3);
        for (int d : r.degrees()) {
            expect /= factorial(d);
        }
        CAPTURE(r.label());
        CHECK(r.j() == 0);
        CHECK(r.value() == expect);
    }
    CHECK(find(recs, 0, {0, 0, 0}) == 1);
    CHECK(find(recs, 0, {0, 0, 0, 1}) == 1);
    CHECK(find(recs, 0, {2}) == Coefficient(1, 24));
    CHECK(find(recs, 1, {0}) == Coefficient(1, 24));
    CHECK(find(recs, 0, {0, 3}) == Coefficient(1, 24));
    CHECK(find(recs, 0, {1, 2}) == Coefficient(1, 24));
    CHECK(find(recs, 1, {0, 1}) == Coefficient(1, 24));
}

TEST_CASE("polynomial fit reproduces the T-basis values")
{
    const auto src = bruteforce_source();
    const auto g0n3 = extract_intersections_polyfit(0, 3, src, 5);
    REQUIRE(g0n3.size() == 1);
    CHECK(g0n3[0].value() == 1);
    const auto g1n1 = extract_intersections_polyfit(1, 1, src, 5);
    CHECK(find(g1n1, 0, {2}) == Coefficient(1, 24));
    CHECK(find(g1n1, 1, {0}) == Coefficient(1, 24));
    CHECK_THROWS_AS(extract_intersections_polyfit(0, 5, src, 5), UnderdeterminedSystem);
    CHECK_THROWS(IntersectionNumber(0, {0, 0}, 1));
}

TEST_CASE("string equation and second derivative")
{
    const auto F = extract_F(extract_G(8));
    CHECK(verify_string(F).passed());
    CHECK(verify_lambda1(F).passed());
    CHECK(verify_second_derivative(F).passed());
}

TEST_CASE("n d/dq_n identity for small n")
{
    for (int n = 1; n <= 3; ++n) {
        CHECK(verify_proposition(n, 8).passed());
    }
    // n >= 4: the commutator [M2, n d/dq_n] has a second-order part that the
    // identity does not account for
    CHECK(verify_proposition(4, 8).failed());
    CHECK(verify_proposition(5, 8).failed());
}

TEST_CASE("O-operators")
{
    for (int n = 1; n <= 3; ++n) {
        for (const auto& r : verify_O_operators(n, 8)) {
            CAPTURE(r.check);
            CHECK(r.passed());
        }
    }
}
