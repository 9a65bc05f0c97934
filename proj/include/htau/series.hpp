#pragma once

#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "htau/monomial.hpp"
#include "htau/upoly.hpp"

namespace htau {

// u-precision value meaning "known to every order in u".
inline constexpr int kExactCap = std::numeric_limits<int>::max() / 4;

// Saturating helpers for u-precision arithmetic.
inline int cap_add(int a, int b)
{
    if (a >= kExactCap || b >= kExactCap) {
        return kExactCap;
    }
    return a + b;
}

// Hard range for stored u-exponents. A stored term outside the band is a
// configuration error (BandOverflow), never silently discarded.
struct Band {
    int umin;
    int umax;

    static Band for_weight(int W) { return {-(W + 2), W + 2}; }
    static Band hull(const Band& a, const Band& b);
    friend bool operator==(const Band&, const Band&) = default;
};

class BandOverflow : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

// Weight-truncated sparse series in one variable family with Laurent
// polynomial coefficients in u.
//
// Two truncations are tracked:
//   * weight: every stored monomial has weight <= W, and the series is exact
//     in every weight <= W;
//   * u-precision: at weight w the coefficients are exact for u-exponents
//     <= ucap(w). Terms above it are unknown and are not stored.
// A series that is exact in u has ucap(w) == kExactCap for all w. W may be -1,
// meaning that nothing is known (used when a derivative exhausts the weight).
class TruncatedSeries {
public:
    using TermMap = std::map<Monomial, UPoly, CanonicalLess>;

    TruncatedSeries(Family family, int W);
    TruncatedSeries(Family family, int W, Band band);

    static TruncatedSeries constant(Family family, int W, const UPoly& c);
    static TruncatedSeries variable(Family family, int W, int index, const UPoly& c = UPoly(1));
    static TruncatedSeries monomial(const Monomial& m, int W, const UPoly& c = UPoly(1));
    // Builds from raw terms; terms beyond W or above ucap are dropped.
    static TruncatedSeries from_terms(Family family, int W, TermMap terms,
                                      std::vector<int> ucap = {},
                                      std::optional<Band> band = std::nullopt);

    Family family() const { return family_; }
    int W() const { return W_; }
    // The largest weight to which the series is exact.
    int reliable_weight() const { return W_; }
    const Band& band() const { return band_; }
    const std::vector<int>& ucap() const { return ucap_; }
    int ucap(int w) const;
    bool u_exact() const;

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    // Throws std::out_of_range when weight(m) > W.
    UPoly coefficient_of(const Monomial& m) const;
    // Lowest stored u-exponent at weight w, or ucap(w) + 1 when nothing is stored.
    int lowest_u(int w) const;

    TruncatedSeries truncated(int W) const;
    TruncatedSeries with_ucap(std::vector<int> ucap) const;
    // Keeps u^e * m only when e + weight(m) <= D (a total-degree cut).
    TruncatedSeries with_total_degree_cap(int D) const;
    // Keeps u^e only when e <= U, at every weight.
    TruncatedSeries with_u_cap(int U) const;
    TruncatedSeries with_band(Band band) const;

    TruncatedSeries& operator+=(const TruncatedSeries& o);
    TruncatedSeries& operator-=(const TruncatedSeries& o);
    TruncatedSeries operator-() const;
    TruncatedSeries scaled(const Coefficient& c) const;
    TruncatedSeries scaled(const UPoly& c) const;

    friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
    friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator*(const Coefficient& c, const TruncatedSeries& s) { return s.scaled(c); }
    friend TruncatedSeries operator*(const UPoly& c, const TruncatedSeries& s) { return s.scaled(c); }

    // Exact equality of terms, truncations and family.
    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b);

    std::string to_string() const;

private:
    void normalize();
    void check_family(const TruncatedSeries& o) const;

    Family family_;
    int W_;
    Band band_;
    std::vector<int> ucap_; // size W_ + 1
    TermMap terms_;
};

TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b);
// Formal d/dx_n. The result is exact to weight W - n and carries that W.
TruncatedSeries partial(int n, const TruncatedSeries& s);
UPoly coefficient_of(const TruncatedSeries& s, const Monomial& m);

// The coefficient of u^e as a u-free series, exact up to the largest weight
// w0 with ucap(w) >= e for every w <= w0.
TruncatedSeries u_layer(const TruncatedSeries& s, int e);

// Simultaneous linear substitution x_b -> image(b). Every image must be a
// u-exact series in the target family, linear in the target variables, with
// only monomials of weight >= b and with W >= the source W.
struct LinearRule {
    Family target;
    std::map<int, TruncatedSeries> images;
};

TruncatedSeries substitute_linear(const TruncatedSeries& s, const LinearRule& rule,
                                  std::optional<Band> band = std::nullopt);

// Canonical-order first term of s whose coefficient is nonzero, formatted as
// "u^e*mono" for diagnostics; nullopt if s is zero.
std::optional<std::string> first_term_label(const TruncatedSeries& s);

} // namespace htau
