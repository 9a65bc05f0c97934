#include "htau/o_operators.hpp"

#include <functional>

namespace htau {

TruncatedSeries exp_M2(const TruncatedSeries& s)
{
    return exponential_apply({LinearOperator::M(2), UPoly(1), std::nullopt}, s);
}

TruncatedSeries exp_M2_q1_power(int k, int W)
{
    if (k < 0) {
        throw std::invalid_argument("negative power");
    }
    return exp_M2(TruncatedSeries::monomial(Monomial::variable(Family::q, 1, k), W));
}

std::vector<TruncatedSeries> ad_power_actions(const LinearOperator& X, const LinearOperator& Y,
                                              const TruncatedSeries& s)
{
    if (Y.min_weight_shift() <= 0) {
        throw std::invalid_argument("ad_power_actions needs a weight-raising Y");
    }
    // rows[q][r] = Y^r X Y^q s
    std::vector<std::vector<TruncatedSeries>> rows;
    TruncatedSeries yq = s;
    while (true) {
        std::vector<TruncatedSeries> row{apply(X, yq)};
        while (!row.back().is_zero()) {
            row.push_back(apply(Y, row.back()));
        }
        rows.push_back(std::move(row));
        if (yq.is_zero()) {
            break;
        }
        yq = apply(Y, yq);
    }
    std::size_t jmax = 0;
    for (std::size_t q = 0; q < rows.size(); ++q) {
        jmax = std::max(jmax, q + rows[q].size());
    }
    const TruncatedSeries zero(s.family(), rows[0][0].W(), rows[0][0].band());
    std::vector<TruncatedSeries> out;
    for (std::size_t j = 0; j <= jmax; ++j) {
        TruncatedSeries acc = zero;
        for (std::size_t r = 0; r <= j; ++r) {
            const std::size_t q = j - r;
            if (q >= rows.size() || r >= rows[q].size()) {
                continue;
            }
            Coefficient c = binomial(static_cast<int>(j), static_cast<int>(r));
            if (r % 2 == 1) {
                c = -c;
            }
            acc += rows[q][r].scaled(c);
        }
        out.push_back(std::move(acc));
    }
    while (out.size() > 1 && out.back().is_zero()) {
        out.pop_back();
    }
    return out;
}

std::vector<TruncatedSeries> o_operator_actions(int n, const TruncatedSeries& s)
{
    const LinearOperator X = UPoly(n) * LinearOperator::partial(n);
    const auto ad = ad_power_actions(X, LinearOperator::M(2), s);
    std::vector<TruncatedSeries> out;
    for (std::size_t i = 0; i < ad.size(); ++i) {
        TruncatedSeries acc(s.family(), ad[0].W(), ad[0].band());
        for (std::size_t k = 0; i + k < ad.size(); ++k) {
            Coefficient c = 1 / (factorial(static_cast<int>(i)) * factorial(static_cast<int>(k)));
            if (k % 2 == 1) {
                c = -c;
            }
            acc += ad[i + k].scaled(c);
        }
        out.push_back(std::move(acc));
    }
    return out;
}

std::vector<CheckReport> verify_O_operators(int n, int W)
{
    if (n < 1 || W < n) {
        throw std::invalid_argument("verify_O_operators needs n >= 1 and W >= n");
    }
    const std::string tag = "(n=" + std::to_string(n) + ")";
    const TruncatedSeries E = exp_M2_q1_power(1, W);
    const auto O = o_operator_actions(n, E);
    std::vector<CheckReport> reports;

    // (i) vanishing outside {n-1, n}
    {
        CheckReport rep = expect_zero("O_vanishing" + tag, W, TruncatedSeries(Family::q, W - n));
        nlohmann::json nonzero = nlohmann::json::array();
        for (std::size_t i = 0; i < O.size(); ++i) {
            if (static_cast<int>(i) == n - 1 || static_cast<int>(i) == n) {
                continue;
            }
            CheckReport r = expect_zero("", W, O[i]);
            if (r.failed()) {
                nonzero.push_back(static_cast<int>(i));
                if (!rep.first_failure) {
                    rep.first_failure = "O_" + std::to_string(i) + " " + *r.first_failure;
                    rep.status = CheckStatus::fail;
                }
            }
        }
        rep.extra["nonzero_indices"] = nonzero;
        reports.push_back(std::move(rep));
    }

    // (ii) O_{n-1} exp(M2) q1 = n exp(M2) q1^{n-1}
    {
        const TruncatedSeries rhs = exp_M2_q1_power(n - 1, W).scaled(Coefficient(n));
        const TruncatedSeries lhs =
            static_cast<std::size_t>(n - 1) < O.size() ? O[static_cast<std::size_t>(n - 1)]
                                                       : TruncatedSeries(Family::q, W - n);
        reports.push_back(compare_series("O_n-1_action" + tag, W, lhs, rhs));
    }

    // (iii) sum_i i O_i = n Lambda(2-n), extensionally
    {
        const int Wc = W - n;
        const LinearOperator target = UPoly(n) * LinearOperator::lambda(2 - n);
        CheckReport rep = boolean_check("O_weighted_sum" + tag, W, true);
        rep.reliable_weight = Wc;
        for (const auto& m : monomials_up_to(Family::q, Wc)) {
            const TruncatedSeries probe = TruncatedSeries::monomial(m, Wc + n);
            const auto Om = o_operator_actions(n, probe);
            TruncatedSeries lhs(Family::q, Wc);
            for (std::size_t i = 1; i < Om.size(); ++i) {
                lhs += Om[i].scaled(Coefficient(static_cast<long>(i)));
            }
            CheckReport r = compare_series("", W, lhs, apply(target, probe), Wc);
            if (r.failed()) {
                rep.status = CheckStatus::fail;
                rep.first_failure = "on " + m.to_string() + ": " + *r.first_failure;
                break;
            }
        }
        if (rep.passed() && Wc < 1) {
            rep.status = CheckStatus::vacuous;
        }
        reports.push_back(std::move(rep));
    }
    return reports;
}

TruncatedSeries ad_formula_apply(int n, int i, const TruncatedSeries& s)
{
    if (n < 1 || i < 1) {
        throw std::invalid_argument("ad formula needs n >= 1 and i >= 1");
    }
    Coefficient pref = 1;
    for (int j = 0; j < i; ++j) {
        pref *= n - j;
    }
    const int delta = 2 * i - n;
    const int W = std::max(s.W() + std::min(delta, 0), -1);
    TruncatedSeries::TermMap acc;
    for (const auto& [m, c] : s.terms()) {
        if (m.weight() + delta > W || pref == 0) {
            continue;
        }
        for (const auto& [idx, e] : m.pairs()) {
            const int K = idx - n + 2 * i;
            if (K < i) {
                continue;
            }
            auto base = m.exponents();
            --base[static_cast<std::size_t>(idx)];
            base.resize(std::max<std::size_t>(base.size(), static_cast<std::size_t>(K) + 1), 0);
            // every ordered composition (k_1, .., k_i) of K
            std::function<void(int, int)> rec = [&](int left, int parts) {
                if (parts == 0) {
                    if (left == 0) {
                        const Monomial mm = Monomial::from_exponents(Family::q, base);
                        UPoly t = c * (pref * Coefficient(e * idx));
                        auto [it, inserted] = acc.try_emplace(mm, t);
                        if (!inserted) {
                            it->second += t;
                        }
                    }
                    return;
                }
                for (int k = 1; k <= left - (parts - 1); ++k) {
                    ++base[static_cast<std::size_t>(k)];
                    rec(left - k, parts - 1);
                    --base[static_cast<std::size_t>(k)];
                }
            };
            rec(K, i);
        }
    }
    for (auto it = acc.begin(); it != acc.end();) {
        it = it->second.is_zero() ? acc.erase(it) : std::next(it);
    }
    std::vector<int> cap(static_cast<std::size_t>(W + 1), kExactCap);
    for (int w = 0; w <= W; ++w) {
        const int src = w - delta;
        if (src >= 0 && src <= s.W()) {
            cap[static_cast<std::size_t>(w)] = s.ucap(src);
        }
    }
    return TruncatedSeries::from_terms(Family::q, W, std::move(acc), std::move(cap), s.band());
}

CheckReport verify_ad_formula(int n, int i, int W)
{
    const LinearOperator V = linear_part(LinearOperator::M(2));
    LinearOperator op = UPoly(n) * LinearOperator::partial(n);
    for (int k = 0; k < i; ++k) {
        op = commutator(op, V);
    }
    const int span = op.span();
    CheckReport rep = boolean_check("ad_formula(n=" + std::to_string(n) + ",i=" + std::to_string(i) + ")", W, true);
    for (const auto& m : monomials_up_to(Family::q, W)) {
        const TruncatedSeries probe = TruncatedSeries::monomial(m, m.weight() + span);
        CheckReport r = compare_series("", W, apply(op, probe), ad_formula_apply(n, i, probe));
        if (r.failed()) {
            rep.status = CheckStatus::fail;
            rep.first_failure = "on " + m.to_string() + ": " + *r.first_failure;
            break;
        }
    }
    return rep;
}

} // namespace htau
