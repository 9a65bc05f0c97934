#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "htau/rational.hpp"

namespace htau {

// Laurent polynomial sum_k c_k u^k with exact coefficients. Terms are kept
// sorted by exponent and zero coefficients are never stored.
class UPoly {
public:
    using Term = std::pair<int, Coefficient>;

    UPoly() = default;
    UPoly(const Coefficient& c); // NOLINT: constants promote implicitly
    UPoly(long c) : UPoly(Coefficient(c)) {} // NOLINT

    static UPoly monomial(int exponent, const Coefficient& c = Coefficient(1));
    // Parses sums like "u^-1+2", "3/2*u^2 - u", "0".
    static UPoly parse(std::string_view text);

    bool is_zero() const { return terms_.empty(); }
    const std::vector<Term>& terms() const { return terms_; }
    Coefficient coefficient(int exponent) const;
    int lowest() const;
    int highest() const;

    UPoly shifted(int k) const;
    UPoly truncated_above(int cap) const;
    UPoly restricted(int lo, int hi) const;

    UPoly& operator+=(const UPoly& o);
    UPoly& operator-=(const UPoly& o);
    UPoly& operator*=(const UPoly& o);
    UPoly& operator*=(const Coefficient& c);
    UPoly operator-() const;

    friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
    friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
    friend UPoly operator*(const UPoly& a, const UPoly& b);
    friend UPoly operator*(UPoly a, const Coefficient& c) { return a *= c; }
    friend UPoly operator*(const Coefficient& c, UPoly a) { return a *= c; }
    friend bool operator==(const UPoly& a, const UPoly& b);

    std::string to_string() const;

private:
    // Add c * u^k in place, keeping order and dropping zeros.
    void accumulate(int k, const Coefficient& c);

    std::vector<Term> terms_;
};

} // namespace htau
