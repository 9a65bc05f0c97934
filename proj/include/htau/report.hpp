#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "htau/series.hpp"

namespace htau {

enum class CheckStatus { pass, fail, vacuous };

std::string_view status_name(CheckStatus s);

// Outcome of one verification. A check whose reliable weight is below 1 can
// certify nothing and is reported as vacuous rather than passed.
struct CheckReport {
    std::string check;
    int W = 0;
    int reliable_weight = 0;
    CheckStatus status = CheckStatus::fail;
    std::optional<std::string> first_failure;
    nlohmann::json extra = nlohmann::json::object();

    bool passed() const { return status == CheckStatus::pass; }
    bool failed() const { return status == CheckStatus::fail; }
    nlohmann::json to_json() const;
};

// Compares lhs and rhs on every weight <= R (both must be exact there) and on
// the u-range both sides know. R defaults to the smaller reliable weight.
CheckReport compare_series(std::string check, int W, const TruncatedSeries& lhs,
                           const TruncatedSeries& rhs, std::optional<int> R = std::nullopt);

// Passes iff s vanishes to weight R.
CheckReport expect_zero(std::string check, int W, const TruncatedSeries& s,
                        std::optional<int> R = std::nullopt);

CheckReport boolean_check(std::string check, int W, bool ok, std::optional<std::string> failure = std::nullopt);

} // namespace htau
