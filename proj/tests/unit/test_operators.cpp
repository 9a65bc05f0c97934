#include <doctest.h>

#include "htau/gjv.hpp"
#include "htau/o_operators.hpp"
#include "random_series.hpp"

using namespace htau;
using htau::testing::random_series;

namespace {

using Op = LinearOperator;

TruncatedSeries q(int W, int i, const UPoly& c = UPoly(1))
{
    return TruncatedSeries::variable(Family::q, W, i, c);
}

// Q(k) written out with partials: 1/2 sum x_{i+j+k} i j d_i d_j.
TruncatedSeries second_order_oracle(int k, const TruncatedSeries& s)
{
    const int W = s.W();
    TruncatedSeries r(Family::q, W + k);
    for (int i = 1; i <= W; ++i) {
        for (int j = 1; i + j <= W; ++j) {
            const auto dd = partial(i, partial(j, s));
            TruncatedSeries lifted = TruncatedSeries::from_terms(Family::q, W + k, dd.terms());
            r += (q(W + k, i + j + k) * lifted).scaled(make_rational(i * j, 2));
        }
    }
    return r;
}

} // namespace

TEST_CASE("Lambda and M on small monomials")
{
    const int W = 6;
    // Lambda(1) q1 = q2, Lambda(0) q2 = 2 q2
    CHECK(apply(Op::lambda(1), q(W, 1)) == q(W, 2));
    CHECK(apply(Op::lambda(0), q(W, 2)) == q(W, 2, UPoly(2)));
    // M2 q1 = q1 q2; M2 q2 = 2 q1 q3 + q2^2
    const auto m2q2 = apply(Op::M(2), q(W, 2));
    CHECK(apply(Op::M(2), q(W, 1)) == q(W, 1) * q(W, 2));
    CHECK(m2q2.coefficient_of(Monomial::from_pairs(Family::q, {{1, 1}, {3, 1}})) == UPoly(2));
    CHECK(m2q2.coefficient_of(Monomial::variable(Family::q, 2, 2)) == UPoly(1));
    // Q part: M0 q1^2 contains q2 (i=j=1)
    const auto m0 = apply(Op::M(0), TruncatedSeries::monomial(Monomial::variable(Family::q, 1, 2), W));
    CHECK(m0.coefficient_of(Monomial::variable(Family::q, 2)) == UPoly(1));
    CHECK_THROWS(Op::lambda(2));
}

TEST_CASE("M splits into a derivation and a second-order part")
{
    std::mt19937 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        const int W = 5;
        const auto f = random_series(rng, Family::q, W, 5);
        const auto g = random_series(rng, Family::q, W, 5);
        for (int k = 0; k <= 2; ++k) {
            const Op V = Op::M_first(k);
            const int Wk = W;
            const auto lhs = apply(V, f * g);
            const auto rhs = apply(V, f) * g.truncated(Wk) + f.truncated(Wk) * apply(V, g);
            CHECK(lhs == rhs);
            CHECK(apply(Op::M_second(k), f) == second_order_oracle(k, f).truncated(apply(Op::M_second(k), f).W()));
            CHECK(apply(Op::M(k), f) == apply(V, f) + apply(Op::M_second(k), f));
        }
    }
}

TEST_CASE("commutation relations")
{
    const int W = 8;
    CHECK_FALSE(extensional_difference(commutator(Op::M(0), Op::lambda(1)), UPoly(2) * Op::M(1), W));
    CHECK_FALSE(extensional_difference(commutator(Op::M(1), Op::lambda(1)), Op::M(2), W));
    CHECK_FALSE(extensional_difference(commutator(Op::M(2), Op::lambda(1)), Op::zero(), W));
    CHECK_FALSE(extensional_difference(commutator(Op::lambda(0), Op::lambda(1)), Op::lambda(1), W));
    CHECK_FALSE(extensional_difference(commutator(Op::partial(1), Op::M(2)), Op::lambda(1), W));
    // a false identity is reported with a witness
    const auto diff = extensional_difference(commutator(Op::M(1), Op::lambda(1)), Op::M(1), W);
    REQUIRE(diff);
    CHECK(diff->rfind("on ", 0) == 0);
}

TEST_CASE("Lambda(0) counts weight")
{
    std::mt19937 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const auto s = random_series(rng, Family::q, 6, 6);
        TruncatedSeries expect(Family::q, 6);
        for (const auto& [m, c] : s.terms()) {
            expect += TruncatedSeries::monomial(m, 6, c * Coefficient(m.weight()));
        }
        CHECK(apply(Op::lambda(0), s) == expect);
    }
}

TEST_CASE("operator exponentials")
{
    const int W = 6;
    // exp(Lambda1) q1 = sum q_{k+1}
    const auto e = exponential_apply({Op::lambda(1), UPoly(1), std::nullopt}, q(W, 1));
    TruncatedSeries expect(Family::q, W);
    for (int k = 1; k <= W; ++k) {
        expect += q(W, k);
    }
    CHECK(e == expect);
    // exp(-A) exp(A) = 1
    std::mt19937 rng(17);
    const auto s = random_series(rng, Family::q, W, 6);
    for (const Op& A : {Op::lambda(1), Op::M(2), Op::M(1)}) {
        const auto there = exponential_apply({A, UPoly(1), std::nullopt}, s);
        CHECK(exponential_apply({A, UPoly(-1), std::nullopt}, there) == s);
    }
    // weight-lowering bases need an explicit cap
    CHECK_THROWS(exponential_apply({Op::partial(1), UPoly(1), std::nullopt}, s));
    // exp(d1) q1^2 = (q1 + 1)^2, each term costing one weight
    const auto shifted = exponential_apply({Op::partial(1), UPoly(1), 2}, q(W, 1) * q(W, 1));
    CHECK(shifted.W() == W - 2);
    CHECK(shifted.coefficient_of(Monomial()) == UPoly(1));
    CHECK(shifted.coefficient_of(Monomial::variable(Family::q, 1)) == UPoly(2));
}

TEST_CASE("conjugation by exp(Lambda1/u)")
{
    const int W = 6;
    const OperatorExponential e{Op::lambda(1), UPoly::monomial(-1), std::nullopt};
    CHECK_FALSE(extensional_difference(conjugate(e, UPoly::monomial(2) * Op::M(0), 6, W), conjugated_cutjoin_operator(), W));
    CHECK_FALSE(extensional_difference(conjugate(e, UPoly::monomial(1) * Op::lambda(0), 6, W),
                                       UPoly::monomial(1) * Op::lambda(0) + Op::lambda(1), W));
}

TEST_CASE("linear part and operator json")
{
    CHECK(linear_part(Op::M(2)).kind() == Op::Kind::MFirst);
    CHECK_THROWS(linear_part(Op::lambda(0)));
    const Op op = Op::M(2) + UPoly::parse("2*u") * Op::M(1) - Op::lambda(-1) * Op::partial(3);
    const Op back = Op::from_json(op.to_json());
    CHECK(back.to_json() == op.to_json());
    CHECK_FALSE(extensional_difference(op, back, 5));
    CHECK(op.min_weight_shift() == -4);
}

TEST_CASE("ad formula against iterated commutators")
{
    for (const auto& [n, i] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {3, 2}, {4, 2}}) {
        CHECK(verify_ad_formula(n, i, 6).passed());
    }
}
