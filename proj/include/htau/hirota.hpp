#pragma once

#include <map>
#include <string>
#include <vector>

#include "htau/report.hpp"

namespace htau {

// Sum of c * prod_i D_i^{a_i}.
struct HirotaTerm {
    std::map<int, int> powers; // i -> a_i
    Coefficient coef;
};

struct HirotaPolynomial {
    std::vector<HirotaTerm> terms;

    // D1^4 - 4 D1 D3 + 3 D2^2
    static HirotaPolynomial kp1();
    // D1^3 D2 + 2 D2 D3 - 3 D1 D4
    static HirotaPolynomial kp2();
    // Largest sum a_i * i over the terms.
    int weight_cost() const;
};

// P(D) f.g, truncated to W - weight_cost so that every kept coefficient is exact.
TruncatedSeries hirota_apply(const HirotaPolynomial& P, const TruncatedSeries& f, const TruncatedSeries& g);

// Normalization of the bilinear variables.
enum class HirotaConvention {
    miwa,    // t_i = q_i / i, so q_i -> i t_i
    identity // t_i = q_i
};

std::string convention_name(HirotaConvention c);

// q- or p-series to the t-family under the given convention.
TruncatedSeries to_hirota_vars(const TruncatedSeries& s, HirotaConvention c = HirotaConvention::miwa);

// KP1 residual of tau (already in t-variables) up to weight W - 4.
CheckReport check_kp1(const TruncatedSeries& tau, std::string label);
CheckReport check_kp2(const TruncatedSeries& tau, std::string label);

// (d1^4 - 4 d1 d3 + 3 d2^2) f up to weight W - 4.
TruncatedSeries linearized_kp_residual(const TruncatedSeries& f);
CheckReport check_linearized_kp(const TruncatedSeries& f, std::string label);

// Runs the KP1 fixtures (c + q1 and the beta^0 cut-and-join layer 1 + sum p_i)
// under both conventions at weight W. The chosen convention is the one under
// which every fixture passes; the report lists both outcomes.
struct ConventionChoice {
    std::optional<HirotaConvention> chosen;
    nlohmann::json outcomes;
};
ConventionChoice select_hirota_convention(int W);

} // namespace htau
