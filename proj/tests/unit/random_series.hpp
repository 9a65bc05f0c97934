#pragma once

#include <random>

#include "htau/series.hpp"

namespace htau::testing {

// Sparse random u-exact series; u-exponents in [-1, 1], small integer coefficients.
inline TruncatedSeries random_series(std::mt19937& rng, Family f, int W, int terms)
{
    std::uniform_int_distribution<int> coef(-3, 3);
    std::uniform_int_distribution<int> uexp(-1, 1);
    const auto monos = monomials_up_to(f, W);
    std::uniform_int_distribution<std::size_t> pick(0, monos.size() - 1);
    TruncatedSeries s(f, W);
    for (int k = 0; k < terms; ++k) {
        const int c = coef(rng);
        if (c != 0) {
            s += TruncatedSeries::monomial(monos[pick(rng)], W, UPoly::monomial(uexp(rng), Coefficient(c)));
        }
    }
    return s;
}

} // namespace htau::testing
