#include "htau/hirota.hpp"

#include <functional>

namespace htau {

HirotaPolynomial HirotaPolynomial::kp1()
{
    return {{{{{1, 4}}, Coefficient(1)}, {{{1, 1}, {3, 1}}, Coefficient(-4)}, {{{2, 2}}, Coefficient(3)}}};
}

HirotaPolynomial HirotaPolynomial::kp2()
{
    return {{{{{1, 3}, {2, 1}}, Coefficient(1)}, {{{2, 1}, {3, 1}}, Coefficient(2)}, {{{1, 1}, {4, 1}}, Coefficient(-3)}}};
}

int HirotaPolynomial::weight_cost() const
{
    int cost = 0;
    for (const auto& t : terms) {
        int c = 0;
        for (const auto& [i, a] : t.powers) {
            c += i * a;
        }
        cost = std::max(cost, c);
    }
    return cost;
}

namespace {

TruncatedSeries derivative(const TruncatedSeries& s, const std::vector<std::pair<int, int>>& orders)
{
    TruncatedSeries r = s;
    for (const auto& [i, k] : orders) {
        for (int t = 0; t < k; ++t) {
            r = partial(i, r);
        }
    }
    return r;
}

} // namespace

TruncatedSeries hirota_apply(const HirotaPolynomial& P, const TruncatedSeries& f, const TruncatedSeries& g)
{
    const int R = std::min(f.W(), g.W()) - P.weight_cost();
    const Band band = Band::hull(f.band(), g.band());
    TruncatedSeries acc(f.family(), std::max(R, -1), {2 * band.umin, 2 * band.umax});
    if (R < 0) {
        return acc;
    }
    for (const auto& term : P.terms) {
        std::vector<std::pair<int, int>> vars(term.powers.begin(), term.powers.end());
        // choose k_i derivatives on f, a_i - k_i on g, sign (-1)^{a_i - k_i}
        std::vector<std::pair<int, int>> on_f(vars.size()), on_g(vars.size());
        std::function<void(std::size_t, Coefficient)> rec = [&](std::size_t idx, Coefficient c) {
            if (idx == vars.size()) {
                const TruncatedSeries df = derivative(f, on_f).truncated(std::min(R, f.W()));
                const TruncatedSeries dg = derivative(g, on_g);
                TruncatedSeries prod = df.with_band(acc.band()) * dg.with_band(acc.band());
                acc += prod.truncated(std::min(R, prod.W())).scaled(c * term.coef);
                return;
            }
            const auto [i, a] = vars[idx];
            for (int k = 0; k <= a; ++k) {
                on_f[idx] = {i, k};
                on_g[idx] = {i, a - k};
                Coefficient ck = c * binomial(a, k);
                if ((a - k) % 2 == 1) {
                    ck = -ck;
                }
                rec(idx + 1, ck);
            }
        };
        rec(0, Coefficient(1));
    }
    return acc.truncated(std::max(R, -1));
}

std::string convention_name(HirotaConvention c)
{
    return c == HirotaConvention::miwa ? "t=q/i" : "t=q";
}

TruncatedSeries to_hirota_vars(const TruncatedSeries& s, HirotaConvention c)
{
    TruncatedSeries::TermMap out;
    for (const auto& [m, coef] : s.terms()) {
        Coefficient k = 1;
        if (c == HirotaConvention::miwa) {
            for (const auto& [i, e] : m.pairs()) {
                for (int r = 0; r < e; ++r) {
                    k *= i;
                }
            }
        }
        out.emplace(m.with_family(Family::t), coef * k);
    }
    return TruncatedSeries::from_terms(Family::t, s.W(), std::move(out), s.ucap(), s.band());
}

namespace {

CheckReport residual_report(const std::string& check, const std::string& label, int W, const TruncatedSeries& r)
{
    CheckReport rep = expect_zero(check, W, r, W - 4);
    rep.extra["tau"] = label;
    return rep;
}

} // namespace

CheckReport check_kp1(const TruncatedSeries& tau, std::string label)
{
    return residual_report("kp1", label, tau.W(), hirota_apply(HirotaPolynomial::kp1(), tau, tau));
}

CheckReport check_kp2(const TruncatedSeries& tau, std::string label)
{
    const HirotaPolynomial P = HirotaPolynomial::kp2();
    CheckReport rep = expect_zero("kp2", tau.W(), hirota_apply(P, tau, tau), tau.W() - P.weight_cost());
    rep.extra["tau"] = label;
    return rep;
}

TruncatedSeries linearized_kp_residual(const TruncatedSeries& f)
{
    const int R = f.W() - 4;
    TruncatedSeries r = derivative(f, {{1, 4}}).truncated(std::max(R, -1));
    r -= derivative(f, {{1, 1}, {3, 1}}).scaled(Coefficient(4));
    r += derivative(f, {{2, 2}}).scaled(Coefficient(3));
    return r;
}

CheckReport check_linearized_kp(const TruncatedSeries& f, std::string label)
{
    return residual_report("linearized_kp", label, f.W(), linearized_kp_residual(f));
}

ConventionChoice select_hirota_convention(int W)
{
    ConventionChoice choice;
    choice.outcomes = nlohmann::json::object();
    for (auto conv : {HirotaConvention::miwa, HirotaConvention::identity}) {
        // c + q1 with c = 1, and 1 + sum p_i
        TruncatedSeries a = TruncatedSeries::constant(Family::q, W, UPoly(1)) + TruncatedSeries::variable(Family::q, W, 1);
        TruncatedSeries b = TruncatedSeries::constant(Family::p, W, UPoly(1));
        for (int i = 1; i <= W; ++i) {
            b += TruncatedSeries::variable(Family::p, W, i);
        }
        const bool ok_a = check_kp1(to_hirota_vars(a, conv), "1+q1").passed();
        const bool ok_b = check_kp1(to_hirota_vars(b, conv), "1+sum p_i").passed();
        choice.outcomes[convention_name(conv)] = {{"1+q1", ok_a}, {"1+sum p_i", ok_b}};
        if (ok_a && ok_b && !choice.chosen) {
            choice.chosen = conv;
        }
    }
    return choice;
}

} // namespace htau
