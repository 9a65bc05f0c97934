#include <algorithm>
#include <map>

#include "htau/cli.hpp"
#include "htau/gjv.hpp"
#include "htau/hirota.hpp"
#include "htau/o_operators.hpp"

namespace htau {

void RunConfig::validate() const
{
    if (W < 4) {
        throw ConfigError("--W must be >= 4");
    }
    if (dmax < 1 || dmax > 7) {
        throw ConfigError("--dmax must lie in 1..7 (brute force grows factorially)");
    }
    if (dgrid < 1 || dgrid > 7) {
        throw ConfigError("the polynomial-fit grid must lie in 1..7");
    }
    if (Mmax && *Mmax < 1) {
        throw ConfigError("--mmax must be positive");
    }
    if (hurwitz_mmax < 0) {
        throw ConfigError("the Hurwitz beta-order must be >= 0");
    }
    if (K && (*K < 0 || *K + 1 > W)) {
        throw ConfigError("--K must satisfy 0 <= K <= W - 1");
    }
}

int RunConfig::mmax() const
{
    return Mmax.value_or(default_mmax(W));
}

int RunConfig::k() const
{
    return K.value_or(W - 1);
}

namespace {

TruncatedSeries qvar(int W, int i, const UPoly& c = UPoly(1))
{
    return TruncatedSeries::variable(Family::q, W, i, c);
}

TruncatedSeries series_parse_q(int W, const std::vector<std::pair<int, std::string>>& terms)
{
    TruncatedSeries s(Family::q, W);
    for (const auto& [i, c] : terms) {
        s += qvar(W, i, UPoly::parse(c));
    }
    return s;
}

CheckReport operator_identity(const std::string& name, const LinearOperator& a, const LinearOperator& b, int W)
{
    auto diff = extensional_difference(a, b, W);
    CheckReport rep = boolean_check(name, W, !diff, diff);
    rep.extra["lhs"] = a.name();
    return rep;
}

void append(std::vector<CheckReport>& out, std::vector<CheckReport> more)
{
    for (auto& r : more) {
        out.push_back(std::move(r));
    }
}

CheckReport skipped(const std::string& name, int W, const std::string& why)
{
    CheckReport rep;
    rep.check = name;
    rep.W = W;
    rep.reliable_weight = 0;
    rep.status = CheckStatus::vacuous;
    rep.extra["note"] = why;
    return rep;
}

std::vector<CheckReport> tbasis_checks(const RunConfig& cfg)
{
    const int W = std::max(cfg.W, 4);
    const auto T = build_tbasis(3, W);
    const std::vector<TruncatedSeries> expected{
        series_parse_q(W, {{1, "1"}}),
        series_parse_q(W, {{1, "u"}, {2, "1"}}),
        series_parse_q(W, {{1, "u^2"}, {2, "3*u"}, {3, "2"}}),
        series_parse_q(W, {{1, "u^3"}, {2, "7*u^2"}, {3, "12*u"}, {4, "6"}}),
    };
    std::vector<CheckReport> out;
    for (std::size_t k = 0; k < expected.size(); ++k) {
        out.push_back(compare_series("tbasis_T" + std::to_string(k), W, T[k], expected[k]));
    }
    return out;
}

std::vector<CheckReport> commutator_checks(int W)
{
    using Op = LinearOperator;
    const Op L0 = Op::lambda(0);
    const Op L1 = Op::lambda(1);
    return {
        operator_identity("[M0,Lambda1]=2M1", commutator(Op::M(0), L1), UPoly(2) * Op::M(1), W),
        operator_identity("[M1,Lambda1]=M2", commutator(Op::M(1), L1), Op::M(2), W),
        operator_identity("[M2,Lambda1]=0", commutator(Op::M(2), L1), Op::zero(), W),
        operator_identity("[Lambda0,Lambda1]=Lambda1", commutator(L0, L1), L1, W),
        operator_identity("[d/dq1,M2]=Lambda1", commutator(Op::partial(1), Op::M(2)), L1, W),
    };
}

std::vector<CheckReport> conjugation_checks(int W)
{
    using Op = LinearOperator;
    const OperatorExponential e{Op::lambda(1), UPoly::monomial(-1), std::nullopt};
    const Op lhs1 = conjugate(e, UPoly::monomial(2) * Op::M(0), 6, W);
    const Op rhs1 = conjugated_cutjoin_operator();
    const Op lhs2 = conjugate(e, UPoly::monomial(1) * Op::lambda(0), 6, W);
    const Op rhs2 = UPoly::monomial(1) * Op::lambda(0) + Op::lambda(1);
    return {operator_identity("conjugate(u^2 M0)", lhs1, rhs1, W),
            operator_identity("conjugate(u Lambda0)", lhs2, rhs2, W)};
}

std::vector<CheckReport> exponential_inverse_checks(int W)
{
    const TruncatedSeries s = series_parse_q(W, {{1, "1"}, {3, "u-2"}}) + qvar(W, 2) * qvar(W, 2);
    std::vector<CheckReport> out;
    for (const auto& [name, A] : {std::pair{std::string("Lambda1"), LinearOperator::lambda(1)},
                                  std::pair{std::string("M2"), LinearOperator::M(2)}}) {
        const TruncatedSeries back = exponential_apply({A, UPoly(-1), std::nullopt},
                                                       exponential_apply({A, UPoly(1), std::nullopt}, s));
        out.push_back(compare_series("exp(" + name + ")exp(-" + name + ")=1", W, back, s));
    }
    return out;
}

std::vector<CheckReport> hurwitz_checks(const RunConfig& cfg)
{
    std::vector<CheckReport> out;
    const int dmax = cfg.dmax;
    const TruncatedSeries cj = cutjoin_series(dmax, cfg.hurwitz_mmax);
    {
        CheckReport rep = boolean_check("hurwitz_route_agreement", dmax, true);
        int count = 0;
        for (const auto& idx : hurwitz_indices(dmax, cfg.hurwitz_mmax)) {
            const Coefficient bf = hurwitz_bruteforce(idx, dmax).h;
            const Coefficient sr = extract_hurwitz(cj, idx).h;
            auto rev = idx.parts();
            std::reverse(rev.begin(), rev.end());
            const HurwitzIndex ridx(idx.g(), rev);
            const bool ok = bf == sr && hurwitz_bruteforce(ridx, dmax).h == bf && extract_hurwitz(cj, ridx).h == sr;
            ++count;
            if (!ok && rep.passed()) {
                rep.status = CheckStatus::fail;
                rep.first_failure = idx.to_string() + ": brute force " + to_string(bf) + " vs series " + to_string(sr);
            }
        }
        rep.extra["indices"] = count;
        out.push_back(std::move(rep));
    }
    {
        const int W = cfg.W;
        bool ok = true;
        std::optional<std::string> bad;
        for (int d = 1; d <= std::min(W, 7) && ok; ++d) {
            const Coefficient h = hurwitz_bruteforce(HurwitzIndex(0, {d}), 7).h;
            if (h != Coefficient(1, d)) {
                ok = false;
                bad = "h_{0,(" + std::to_string(d) + ")} = " + to_string(h);
            }
        }
        out.push_back(boolean_check("anchor_h0d=1/d", W, ok, bad));
    }
    {
        const int W = cfg.W;
        const auto [h01, h02] = h01_h02_closed_forms(W);
        const LinearOperator L0 = LinearOperator::lambda(0);
        const TruncatedSeries q1 = qvar(W, 1);
        const TruncatedSeries q2 = qvar(W, 2);
        out.push_back(compare_series("anchor_H01->q1/u", W, change_of_variables(apply(L0, apply(L0, h01))),
                                     q1.scaled(UPoly::monomial(-1))));
        out.push_back(compare_series("anchor_H02->q1q2/u+q1^2", W, change_of_variables(apply(L0, apply(L0, h02))),
                                     (q1 * q2).scaled(UPoly::monomial(-1)) + q1 * q1));
        out.push_back(compare_series("anchor_beta0_layer", W, u_layer(cutjoin_series(W, 1), 0),
                                     apply(L0, apply(L0, h01))));
        TruncatedSeries T0p(Family::p, W);
        for (int b = 1; b <= W; ++b) {
            T0p += TruncatedSeries::variable(Family::p, W, b, UPoly::monomial(1));
        }
        out.push_back(compare_series("anchor_T0->q1", W, change_of_variables(T0p), q1));
    }
    return out;
}

std::vector<CheckReport> change_checks(int W)
{
    std::vector<CheckReport> out;
    // p-side T_d = u^{d+1} sum b^d p_b
    const LinearOperator uL0 = UPoly::monomial(1) * LinearOperator::lambda(0);
    const LinearOperator qstep = uL0 + LinearOperator::lambda(1);
    const auto T = build_tbasis(2, W);
    for (int d = 0; d <= 2; ++d) {
        TruncatedSeries Tp(Family::p, W);
        for (int b = 1; b <= W; ++b) {
            mpz_class bd;
            mpz_ui_pow_ui(bd.get_mpz_t(), static_cast<unsigned long>(b), static_cast<unsigned long>(d));
            Tp += TruncatedSeries::variable(Family::p, W, b, UPoly::monomial(d + 1, Coefficient(bd)));
        }
        const TruncatedSeries Tq = change_of_variables(Tp);
        out.push_back(compare_series("change_T" + std::to_string(d), W, Tq, T[static_cast<std::size_t>(d)]));
        out.push_back(compare_series("change_uLambda0_T" + std::to_string(d), W, change_of_variables(apply(uL0, Tp)),
                                     apply(qstep, Tq)));
    }
    TruncatedSeries s(Family::p, W);
    s += TruncatedSeries::variable(Family::p, W, 1, UPoly::parse("u^2+1"));
    s += TruncatedSeries::monomial(Monomial::from_pairs(Family::p, {{1, 1}, {2, 1}}), W, UPoly::parse("3/2"));
    s += TruncatedSeries::variable(Family::p, W, 3, UPoly::parse("-u"));
    out.push_back(compare_series("change_roundtrip", W, inverse_change_of_variables(change_of_variables(s)), s));
    return out;
}

std::vector<CheckReport> gjv_checks(const RunConfig& cfg, const TruncatedSeries& G)
{
    const int W = cfg.W;
    std::vector<CheckReport> out;
    for (const auto& c : cfg.cs) {
        TruncatedSeries t2 = assemble_tau_theorem2(c, W, 2 * cfg.mmax());
        if (cfg.inject_corruption) {
            t2 += TruncatedSeries::monomial(Monomial::from_pairs(Family::q, {{1, 1}, {2, 1}}), W,
                                            UPoly(make_rational(1, 1000)))
                      .with_band(t2.band());
        }
        out.push_back(compare_series("tau_assembled=tau_exponential(c=" + c.to_string() + ")", W, assemble_tau_theorem1(c, G), t2));
    }
    const TruncatedSeries F = extract_F(G);
    out.push_back(verify_lambda1(F));
    out.push_back(verify_string(F));
    out.push_back(verify_second_derivative(F));
    out.push_back(compare_series("G_u2_layer=Lambda(-1)F/2", W, u_layer(G, 2),
                                 apply(LinearOperator::lambda(-1), F).scaled(Coefficient(1, 2))));
    try {
        const auto recs = extract_intersections_tbasis(G, W - 1);
        out.push_back(compare_series("G_u1_layer=F(records)", W, F, F_from_intersections(recs, W)));
        out.push_back(boolean_check("G_odd_u_powers", W, true));
    } catch (const std::runtime_error& e) {
        out.push_back(boolean_check("G_odd_u_powers", W, false, e.what()));
    }
    return out;
}

std::vector<CheckReport> derivative_identity_checks(int W)
{
    std::vector<CheckReport> out;
    for (int n = 1; n <= 5; ++n) {
        if (W < n + 2) {
            out.push_back(skipped("dqn_identity(n=" + std::to_string(n) + ")", W, "needs W >= n + 2"));
            continue;
        }
        out.push_back(verify_proposition(n, W));
    }
    for (int n = 1; n <= 5; ++n) {
        if (W < n) {
            continue;
        }
        append(out, verify_O_operators(n, W));
    }
    out.push_back(verify_ad_formula(2, 1, std::min(W, 6)));
    return out;
}

std::vector<CheckReport> hirota_checks(const RunConfig& cfg)
{
    const int W = cfg.W;
    std::vector<CheckReport> out;
    const ConventionChoice choice = select_hirota_convention(W);
    {
        int passing = 0;
        for (const auto& [name, res] : choice.outcomes.items()) {
            bool all = true;
            for (const auto& [k, v] : res.items()) {
                all = all && v.get<bool>();
            }
            passing += all ? 1 : 0;
        }
        CheckReport rep = boolean_check("hirota_convention", W, passing == 1 && choice.chosen.has_value(),
                                        "conventions passing all fixtures: " + std::to_string(passing));
        rep.extra["outcomes"] = choice.outcomes;
        rep.extra["convention"] = choice.chosen ? nlohmann::json(convention_name(*choice.chosen)) : nlohmann::json(nullptr);
        out.push_back(std::move(rep));
    }
    const HirotaConvention conv = choice.chosen.value_or(HirotaConvention::miwa);
    auto tag = [&conv](CheckReport r) {
        r.extra["convention"] = convention_name(conv);
        return r;
    };
    for (int c = 0; c <= 1; ++c) {
        const TruncatedSeries a = TruncatedSeries::constant(Family::q, W, UPoly(c)) + qvar(W, 1);
        out.push_back(tag(check_kp1(to_hirota_vars(a, conv), "c+t1,c=" + std::to_string(c))));
        const TruncatedSeries cj = cutjoin_series(W, 4, UPoly(c));
        out.push_back(tag(check_kp1(to_hirota_vars(cj, conv), "cutjoin,c=" + std::to_string(c))));
        const TruncatedSeries t2 = assemble_tau_theorem2(UPoly(c), W);
        out.push_back(tag(check_kp1(to_hirota_vars(t2, conv), "exponential,c=" + std::to_string(c))));
        if (cfg.kp2) {
            out.push_back(tag(check_kp2(to_hirota_vars(t2, conv), "exponential,c=" + std::to_string(c))));
            out.push_back(tag(check_kp2(to_hirota_vars(cj, conv), "cutjoin,c=" + std::to_string(c))));
        }
    }
    out.push_back(tag(check_linearized_kp(to_hirota_vars(exp_M2_q1_power(1, W), conv), "exp(M2)q1")));
    return out;
}

} // namespace

std::vector<CheckReport> run_verify_suite(const RunConfig& cfg)
{
    cfg.validate();
    const int W = cfg.W;
    std::vector<CheckReport> out;
    append(out, tbasis_checks(cfg));
    append(out, commutator_checks(W));
    append(out, conjugation_checks(W));
    append(out, exponential_inverse_checks(W));
    append(out, hurwitz_checks(cfg));
    append(out, change_checks(W));
    const TruncatedSeries G = extract_G(W, cfg.mmax());
    append(out, gjv_checks(cfg, G));
    append(out, derivative_identity_checks(W));
    append(out, hirota_checks(cfg));
    try {
        const nlohmann::json table = intersections_table(cfg);
        CheckReport rep = boolean_check("intersections_two_routes", W, true);
        int both = 0;
        for (const auto& r : table) {
            both += r["routes"].size() == 2 ? 1 : 0;
        }
        rep.extra["records_on_both_routes"] = both;
        out.push_back(std::move(rep));
    } catch (const std::runtime_error& e) {
        out.push_back(boolean_check("intersections_two_routes", W, false, e.what()));
    }
    return out;
}

} // namespace htau
