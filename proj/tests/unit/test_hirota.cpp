#include <doctest.h>

#include "htau/gjv.hpp"
#include "htau/hirota.hpp"
#include "htau/hurwitz.hpp"
#include "htau/o_operators.hpp"

using namespace htau;

namespace {

TruncatedSeries t(int W, int i, const Coefficient& c = 1)
{
    return TruncatedSeries::variable(Family::t, W, i, UPoly(c));
}

TruncatedSeries one(int W)
{
    return TruncatedSeries::constant(Family::t, W, UPoly(1));
}

} // namespace

TEST_CASE("Hirota operator on small products")
{
    const int W = 8;
    // D1^2 f.f = 2 (f f'' - f'^2); for f = t1 this is -2
    HirotaPolynomial d1sq{{{{{1, 2}}, Coefficient(1)}}};
    const auto r = hirota_apply(d1sq, t(W, 1), t(W, 1));
    CHECK(r == TruncatedSeries::constant(Family::t, W - 2, UPoly(-2)));
    CHECK(HirotaPolynomial::kp1().weight_cost() == 4);
    CHECK(HirotaPolynomial::kp2().weight_cost() == 5);
}

TEST_CASE("Schur functions solve KP1, perturbations do not")
{
    const int W = 8;
    // s_(2) = t1^2/2 + t2, s_(1,1) = t1^2/2 - t2, s_(2,1) = t1^3/3 - t3
    const auto s2 = (t(W, 1) * t(W, 1)).scaled(Coefficient(1, 2)) + t(W, 2);
    const auto s11 = (t(W, 1) * t(W, 1)).scaled(Coefficient(1, 2)) - t(W, 2);
    const auto s21 = (t(W, 1) * t(W, 1) * t(W, 1)).scaled(Coefficient(1, 3)) - t(W, 3);
    CHECK(check_kp1(s2, "s2").passed());
    CHECK(check_kp1(s11, "s11").passed());
    CHECK(check_kp1(s21, "s21").passed());
    CHECK(check_kp1(one(W) + t(W, 1), "1+t1").passed());
    CHECK(check_kp1(s2 + s11.scaled(Coefficient(2)), "s2+2s11").failed());
}

TEST_CASE("linearized KP")
{
    const int W = 8;
    CHECK(check_linearized_kp(t(W, 1) + t(W, 2), "t1+t2").passed());
    CHECK(check_linearized_kp(t(W, 1) * t(W, 1) * t(W, 1) * t(W, 1), "t1^4").failed());
    CHECK(check_linearized_kp(to_hirota_vars(exp_M2_q1_power(1, W)), "exp(M2)q1").passed());
}

TEST_CASE("the t_i = q_i / i convention is the one that works")
{
    const auto choice = select_hirota_convention(8);
    REQUIRE(choice.chosen);
    CHECK(*choice.chosen == HirotaConvention::miwa);
    CHECK(convention_name(*choice.chosen) == "t=q/i");
}

TEST_CASE("tau functions built from Hurwitz numbers")
{
    const int W = 8;
    for (int c = 0; c <= 1; ++c) {
        CHECK(check_kp1(to_hirota_vars(cutjoin_series(W, 4, UPoly(c))), "cutjoin").passed());
        CHECK(check_kp1(to_hirota_vars(assemble_tau_theorem2(UPoly(c), W)), "exponential").passed());
    }
    // the q-variables themselves are not Hirota times
    CHECK(check_kp1(to_hirota_vars(assemble_tau_theorem2(UPoly(1), W), HirotaConvention::identity), "id").failed());
}
