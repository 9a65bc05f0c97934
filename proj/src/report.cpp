#include "htau/report.hpp"

namespace htau {

std::string_view status_name(CheckStatus s)
{
    switch (s) {
    case CheckStatus::pass:
        return "pass";
    case CheckStatus::fail:
        return "fail";
    case CheckStatus::vacuous:
        return "vacuous";
    }
    return "?";
}

nlohmann::json CheckReport::to_json() const
{
    nlohmann::json j = {{"check", check},
                        {"W", W},
                        {"reliable_weight", reliable_weight},
                        {"pass", passed()},
                        {"status", std::string(status_name(status))},
                        {"first_failure", first_failure ? nlohmann::json(*first_failure) : nlohmann::json(nullptr)}};
    for (const auto& [k, v] : extra.items()) {
        j[k] = v;
    }
    return j;
}

CheckReport expect_zero(std::string check, int W, const TruncatedSeries& s, std::optional<int> R)
{
    const int r = std::min(R.value_or(s.W()), s.W());
    CheckReport rep;
    rep.check = std::move(check);
    rep.W = W;
    rep.reliable_weight = std::max(r, 0);
    const TruncatedSeries cut = r >= 0 ? s.truncated(r) : TruncatedSeries(s.family(), -1);
    if (auto label = first_term_label(cut)) {
        rep.status = CheckStatus::fail;
        rep.first_failure = *label;
    } else {
        rep.status = r < 1 ? CheckStatus::vacuous : CheckStatus::pass;
    }
    return rep;
}

CheckReport compare_series(std::string check, int W, const TruncatedSeries& lhs,
                           const TruncatedSeries& rhs, std::optional<int> R)
{
    return expect_zero(std::move(check), W, lhs - rhs, R);
}

CheckReport boolean_check(std::string check, int W, bool ok, std::optional<std::string> failure)
{
    CheckReport rep;
    rep.check = std::move(check);
    rep.W = W;
    rep.reliable_weight = W;
    rep.status = ok ? CheckStatus::pass : CheckStatus::fail;
    if (!ok) {
        rep.first_failure = failure.value_or("mismatch");
    }
    return rep;
}

} // namespace htau
