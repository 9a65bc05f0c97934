#pragma once

#include <vector>

#include "htau/operators.hpp"
#include "htau/report.hpp"

namespace htau {

// exp(M2) s.
TruncatedSeries exp_M2(const TruncatedSeries& s);
// exp(M2) q1^k truncated at W (k = 0 gives 1).
TruncatedSeries exp_M2_q1_power(int k, int W);

// (ad Y)^j (X) applied to s, where (ad Y)(x) = [x, Y]. Entry j of the result
// is that action for j = 0, 1, ...; the list stops once every further entry
// is zero at the truncation of s. Y must raise weight.
std::vector<TruncatedSeries> ad_power_actions(const LinearOperator& X, const LinearOperator& Y,
                                              const TruncatedSeries& s);

// O_i(s) = exp(-ad M2) (ad M2)^i (n d/dq_n) / i!, applied to s, for i = 0, 1, ...
std::vector<TruncatedSeries> o_operator_actions(int n, const TruncatedSeries& s);

// The three O-operator statements on exp(M2) q1 at weight W:
//   vanishing of O_i for i outside {n-1, n};
//   O_{n-1} exp(M2) q1 = n exp(M2) q1^{n-1};
//   sum_i i O_i = n Lambda(2-n) on every monomial of weight <= W - n.
std::vector<CheckReport> verify_O_operators(int n, int W);

// (ad V)^i (n d/dq_n) against the closed form
//   prod_{j<i} (n-j) sum_{k_1..k_i} q_{k_1}..q_{k_i} (K+n-2i) d/dq_{K+n-2i},
// K = k_1+..+k_i, on every monomial of weight <= W; V is linear_part(M2).
CheckReport verify_ad_formula(int n, int i, int W);

// The closed form above acting on s.
TruncatedSeries ad_formula_apply(int n, int i, const TruncatedSeries& s);

} // namespace htau
