#pragma once

#include <optional>
#include <vector>

#include "htau/operators.hpp"

namespace htau {

// Default beta-order for a weight-W computation: enough that every
// coefficient u^e q^a with e + weight <= W + 1 is known after the change of
// variables.
int default_mmax(int W);

// p_b -> sum_{i=b}^{W} u^{-i} (-1)^{i-b} C(i-1, b-1) q_i
LinearRule change_rule(int W);
// q_i -> u^i sum_{b=i}^{W} C(b-1, i-1) p_b
LinearRule inverse_change_rule(int W);

// p-series (with beta already written as u^2) to q-series, exact to the
// source truncation; u-precision follows the substitution.
TruncatedSeries change_of_variables(const TruncatedSeries& p_series);
TruncatedSeries inverse_change_of_variables(const TruncatedSeries& q_series);

// T_0 = q1, T_{k+1} = (u Lambda0 + Lambda1) T_k, for k = 0..K.
std::vector<TruncatedSeries> build_tbasis(int K, int W);

// Lambda0 + Lambda1 / u.
LinearOperator L_operator();
// M2 + 2u M1 + u^2 M0.
LinearOperator conjugated_cutjoin_operator();

// exp(M2 + 2u M1 + u^2 M0)(c + q1/u). Coefficients u^e q^a are exact for
// e + weight(a) <= D (default 2 * default_mmax(W)).
TruncatedSeries assemble_tau_theorem2(const UPoly& c, int W, std::optional<int> D = std::nullopt);

// c + (q1 + q1 q2)/u + q1^2 + L^2 G.
TruncatedSeries assemble_tau_theorem1(const UPoly& c, const TruncatedSeries& G);

// Solves L X = Y weight by weight. Y must vanish at weight 0.
TruncatedSeries invert_L(const TruncatedSeries& Y);

// G from the cut-and-join series: change variables, subtract the unstable
// part, invert L twice.
TruncatedSeries extract_G(int W, std::optional<int> Mmax = std::nullopt);

} // namespace htau
