#include "htau/gjv.hpp"

#include "htau/hurwitz.hpp"

namespace htau {

int default_mmax(int W)
{
    return (W + 2) / 2;
}

LinearRule change_rule(int W)
{
    LinearRule rule{Family::q, {}};
    for (int b = 1; b <= W; ++b) {
        TruncatedSeries img(Family::q, W, {-W, 0});
        for (int i = b; i <= W; ++i) {
            Coefficient c = binomial(i - 1, b - 1);
            if ((i - b) % 2 == 1) {
                c = -c;
            }
            img += TruncatedSeries::variable(Family::q, W, i, UPoly::monomial(-i, c)).with_band({-W, 0});
        }
        rule.images.emplace(b, std::move(img));
    }
    return rule;
}

LinearRule inverse_change_rule(int W)
{
    LinearRule rule{Family::p, {}};
    for (int i = 1; i <= W; ++i) {
        TruncatedSeries img(Family::p, W, {0, W});
        for (int b = i; b <= W; ++b) {
            img += TruncatedSeries::variable(Family::p, W, b, UPoly::monomial(i, binomial(b - 1, i - 1)))
                       .with_band({0, W});
        }
        rule.images.emplace(i, std::move(img));
    }
    return rule;
}

TruncatedSeries change_of_variables(const TruncatedSeries& p_series)
{
    if (p_series.family() != Family::p) {
        throw std::invalid_argument("change_of_variables expects a p-family series");
    }
    return substitute_linear(p_series, change_rule(std::max(p_series.W(), 1)));
}

TruncatedSeries inverse_change_of_variables(const TruncatedSeries& q_series)
{
    if (q_series.family() != Family::q) {
        throw std::invalid_argument("inverse_change_of_variables expects a q-family series");
    }
    return substitute_linear(q_series, inverse_change_rule(std::max(q_series.W(), 1)));
}

LinearOperator L_operator()
{
    return LinearOperator::lambda(0) + UPoly::monomial(-1) * LinearOperator::lambda(1);
}

LinearOperator conjugated_cutjoin_operator()
{
    return LinearOperator::sum({LinearOperator::M(2), UPoly::monomial(1, 2) * LinearOperator::M(1),
                                UPoly::monomial(2) * LinearOperator::M(0)});
}

std::vector<TruncatedSeries> build_tbasis(int K, int W)
{
    if (K < 0 || K + 1 > W) {
        throw std::invalid_argument("build_tbasis needs 0 <= K and K + 1 <= W");
    }
    const LinearOperator step = UPoly::monomial(1) * LinearOperator::lambda(0) + LinearOperator::lambda(1);
    const Band band{0, K + 1};
    std::vector<TruncatedSeries> T{TruncatedSeries::variable(Family::q, W, 1).with_band(band)};
    for (int k = 0; k < K; ++k) {
        T.push_back(apply(step, T.back()));
    }
    return T;
}

TruncatedSeries assemble_tau_theorem2(const UPoly& c, int W, std::optional<int> D)
{
    const int cap = D.value_or(2 * default_mmax(W));
    const Band band{std::min(-1, c.is_zero() ? 0 : c.lowest()), std::max(cap, c.is_zero() ? 0 : c.highest())};
    TruncatedSeries start = TruncatedSeries::constant(Family::q, W, c).with_band(band) +
                            TruncatedSeries::variable(Family::q, W, 1, UPoly::monomial(-1)).with_band(band);
    start = start.with_total_degree_cap(cap);
    return exponential_apply({conjugated_cutjoin_operator(), UPoly(1), std::nullopt}, start);
}

TruncatedSeries assemble_tau_theorem1(const UPoly& c, const TruncatedSeries& G)
{
    const int W = G.W();
    const Band band = Band::hull(G.band(), {std::min(-1, c.is_zero() ? 0 : c.lowest()),
                                            std::max(0, c.is_zero() ? 0 : c.highest())});
    const TruncatedSeries q1 = TruncatedSeries::variable(Family::q, W, 1).with_band(band);
    const TruncatedSeries q2 = TruncatedSeries::variable(Family::q, W, 2).with_band(band);
    const LinearOperator L = L_operator();
    TruncatedSeries tau = TruncatedSeries::constant(Family::q, W, c).with_band(band);
    tau += (q1 + q1 * q2).scaled(UPoly::monomial(-1));
    tau += q1 * q1;
    tau += apply(L, apply(L, G.with_band(band)));
    return tau;
}

TruncatedSeries invert_L(const TruncatedSeries& Y)
{
    const int W = Y.W();
    const Band band{Y.band().umin - std::max(W, 0), Y.band().umax};
    TruncatedSeries::TermMap X;
    std::vector<int> cap(static_cast<std::size_t>(W + 1), kExactCap);
    TruncatedSeries::TermMap prev;
    auto it = Y.terms().begin();
    if (it != Y.terms().end() && it->first.weight() == 0) {
        throw std::domain_error("cannot invert Lambda0 + Lambda1/u on a weight-0 component");
    }
    const LinearOperator raise = UPoly::monomial(-1) * LinearOperator::lambda(1);
    for (int w = 1; w <= W; ++w) {
        TruncatedSeries::TermMap layer;
        for (; it != Y.terms().end() && it->first.weight() == w; ++it) {
            layer.emplace(it->first, it->second);
        }
        if (!prev.empty()) {
            const TruncatedSeries from_prev =
                apply(raise, TruncatedSeries::from_terms(Family::q, W, prev, {}, band));
            for (const auto& [m, c] : from_prev.terms()) {
                auto [jt, inserted] = layer.try_emplace(m, -c);
                if (!inserted) {
                    jt->second -= c;
                }
            }
        }
        prev.clear();
        for (auto& [m, c] : layer) {
            if (!c.is_zero()) {
                c *= Coefficient(1, w);
                prev.emplace(m, c);
                X.emplace(m, c);
            }
        }
        cap[static_cast<std::size_t>(w)] = std::min(Y.ucap(w), cap_add(cap[static_cast<std::size_t>(w - 1)], -1));
    }
    return TruncatedSeries::from_terms(Family::q, W, std::move(X), std::move(cap), band);
}

TruncatedSeries extract_G(int W, std::optional<int> Mmax)
{
    const TruncatedSeries tau = change_of_variables(cutjoin_series(W, Mmax.value_or(default_mmax(W))));
    const Band band = tau.band();
    const TruncatedSeries q1 = TruncatedSeries::variable(Family::q, W, 1).with_band(band);
    const TruncatedSeries q2 = TruncatedSeries::variable(Family::q, W, 2).with_band(band);
    TruncatedSeries Y = tau - (q1 + q1 * q2).scaled(UPoly::monomial(-1)) - q1 * q1;
    return invert_L(invert_L(Y));
}

} // namespace htau
