#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "htau/hurwitz.hpp"
#include "htau/report.hpp"

namespace htau {

// <lambda_{2j} tau_{d_1} .. tau_{d_n}> with 2j + sum d = 4g - 3 + n. Degrees
// are kept sorted; construction rejects a non-integral or negative genus.
class IntersectionNumber {
public:
    IntersectionNumber(int j, std::vector<int> degrees, Coefficient value);

    int j() const { return j_; }
    const std::vector<int>& degrees() const { return degrees_; }
    const Coefficient& value() const { return value_; }
    int n() const { return static_cast<int>(degrees_.size()); }
    int g() const { return g_; }
    // Weight of the matching T-monomial, sum (d_i + 1).
    int tweight() const;

    std::string label() const;
    nlohmann::json to_json() const;

    friend bool operator<(const IntersectionNumber& a, const IntersectionNumber& b);

private:
    int j_;
    std::vector<int> degrees_;
    Coefficient value_;
    int g_;
};

// Genus from 4g - 3 + n = 2j + sum d, or nullopt when it is not a
// non-negative integer.
std::optional<int> genus_of(int j, const std::vector<int>& degrees);

// Coefficient of u^e prod T_k^{a_k} / a_k! in G, for one T-monomial.
struct TExpansionTerm {
    int e;
    Monomial tmono; // q_{k+1}^{a_k}, the leading monomial of the T-product
    Coefficient coef;
};

struct TExpansion {
    int W;
    std::vector<TExpansionTerm> terms; // descending weight, then canonical order
    // Largest e at weight w that the reduction can certify.
    std::vector<int> window;
};

// Greedy triangular reduction of G in the T-basis. A coefficient u^e at
// q-weight w is certified when e <= min(ucap(w), W + 1 - w): T-products of
// weight above W only reach e >= W + 2 - w.
TExpansion tbasis_expansion(const TruncatedSeries& G);

// Intersection numbers read from the T-expansion (odd e = 2j + 1 only; an
// even power is an error). Records with a degree above K are dropped.
std::vector<IntersectionNumber> extract_intersections_tbasis(const TruncatedSeries& G, int K);

// True when (j; degrees) lies inside the certified window of the expansion,
// so that a missing record means the value is zero.
bool tbasis_reaches(const TExpansion& ex, int j, const std::vector<int>& degrees);

using HurwitzSource = std::function<Coefficient(const HurwitzIndex&)>;

// Hurwitz values read off one cut-and-join series covering d <= dmax, m <= mmax.
HurwitzSource cutjoin_source(int dmax, int mmax);
HurwitzSource bruteforce_source(int dcap = kDefaultDegreeCap);

class UnderdeterminedSystem : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Solves h_{g,b} / (d m!) = sum_j (-1)^j sum_{ordered degrees} <lambda_{2j} tau..> prod b_i^{d_i}
// over every ordered b with b_i >= 1 and d <= dgrid. Throws
// UnderdeterminedSystem when the grid is too small, std::runtime_error when
// the system is inconsistent or the solution is not symmetric.
std::vector<IntersectionNumber> extract_intersections_polyfit(int g, int n, const HurwitzSource& h,
                                                              int dgrid = 6);

// F = u^1 layer of G.
TruncatedSeries extract_F(const TruncatedSeries& G);
// F assembled from j = 0 records, tau_d paired with d! q_{d+1}.
TruncatedSeries F_from_intersections(const std::vector<IntersectionNumber>& recs, int W);

CheckReport verify_string(const TruncatedSeries& F);
CheckReport verify_lambda1(const TruncatedSeries& F);
CheckReport verify_second_derivative(const TruncatedSeries& F);
// n d/dq_n exp(M2) q1 = Lambda(2-n) exp(M2) q1 + exp(M2) q1^{n-1}
CheckReport verify_proposition(int n, int W);

} // namespace htau
