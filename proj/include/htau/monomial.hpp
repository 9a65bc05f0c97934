#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace htau {

// Variable families. q and p are related only through an explicit change of
// variables; t is the normalization used for bilinear (Hirota) derivatives.
enum class Family { q, p, t };

std::string_view family_name(Family f);
Family parse_family(std::string_view name);

// Monomial prod x_i^{e_i} with weight sum i * e_i. Stored as (index, exponent)
// pairs with ascending index and positive exponents; the empty product is 1.
class Monomial {
public:
    using Pair = std::pair<int, int>;

    Monomial() = default;
    explicit Monomial(Family f) : family_(f) {}

    static Monomial from_pairs(Family f, std::vector<Pair> pairs);
    // exps[i] is the exponent of x_i; exps[0] is ignored.
    static Monomial from_exponents(Family f, const std::vector<int>& exps);
    static Monomial variable(Family f, int index, int exponent = 1);

    Family family() const { return family_; }
    int weight() const { return weight_; }
    int degree() const;
    int exponent(int index) const;
    int max_index() const { return pairs_.empty() ? 0 : pairs_.back().first; }
    bool is_one() const { return pairs_.empty(); }
    const std::vector<Pair>& pairs() const { return pairs_; }

    // Dense exponent vector of length max(size, max_index() + 1).
    std::vector<int> exponents(std::size_t size = 0) const;

    Monomial operator*(const Monomial& o) const;
    Monomial with_family(Family f) const;

    // "q1^2*q3"; the unit monomial prints as "1".
    std::string to_string() const;

    friend bool operator==(const Monomial& a, const Monomial& b)
    {
        return a.family_ == b.family_ && a.pairs_ == b.pairs_;
    }

private:
    Family family_ = Family::q;
    int weight_ = 0;
    std::vector<Pair> pairs_;
};

// Canonical order: ascending weight, then lexicographic on the (index,
// exponent) pairs read from the highest index down.
struct CanonicalLess {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

// Every monomial of weight <= max_weight (including 1), in canonical order.
std::vector<Monomial> monomials_up_to(Family f, int max_weight);
// Every monomial of weight exactly w.
std::vector<Monomial> monomials_of_weight(Family f, int w);

} // namespace htau
