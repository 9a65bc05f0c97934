#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "htau/series.hpp"

namespace htau {

// Genus g and the ordered profile (b_1..b_n) over infinity. The degree is
// d = sum b_i and the number of simple branch points is m = 2g - 1 + n.
class HurwitzIndex {
public:
    HurwitzIndex(int g, std::vector<int> parts);

    int g() const { return g_; }
    const std::vector<int>& parts() const { return parts_; }
    int n() const { return static_cast<int>(parts_.size()); }
    int d() const;
    int m() const { return 2 * g_ - 1 + n(); }
    std::vector<int> sorted_parts() const;
    // Number of permutations of the parts fixing the tuple, prod (mult)!.
    Coefficient automorphisms() const;
    std::string to_string() const;

private:
    int g_;
    std::vector<int> parts_;
};

struct HurwitzValue {
    HurwitzIndex index;
    Coefficient h;
};

inline constexpr int kDefaultDegreeCap = 6;

// Counts tuples of m transpositions whose product with a fixed permutation of
// cycle type b is a full d-cycle, and normalizes to h = N / prod b_i.
HurwitzValue hurwitz_bruteforce(const HurwitzIndex& idx, int dcap = kDefaultDegreeCap);

// c + exp(beta M0) sum_{i<=W} p_i in the p-family with beta = u^2, known to
// beta^Mmax (u-precision 2 Mmax at every weight).
TruncatedSeries cutjoin_series(int W, int Mmax, const UPoly& c = UPoly());

// Reads h from a cut-and-join series: the coefficient of beta^m p_{b_1}..p_{b_n}
// divided by d^2 equals h / (|Aut b| d m!).
HurwitzValue extract_hurwitz(const TruncatedSeries& series, const HurwitzIndex& idx);

// The unstable pieces H_{0,1} and H_{0,2} of the Hurwitz generating series,
// assembled from brute-force values, in the p-family with beta = u^2.
std::pair<TruncatedSeries, TruncatedSeries> h01_h02_closed_forms(int W);

// Every index with sorted parts, d <= dmax and m <= mmax.
std::vector<HurwitzIndex> hurwitz_indices(int dmax, int mmax);

// Persistent table keyed by genus and sorted parts.
class HurwitzCache {
public:
    std::optional<Coefficient> lookup(const HurwitzIndex& idx) const;
    void insert(const HurwitzValue& v);
    std::size_t size() const { return table_.size(); }

    nlohmann::json to_json() const;
    static HurwitzCache from_json(const nlohmann::json& j);
    // A missing file yields an empty cache.
    static HurwitzCache load(const std::string& path);
    void save(const std::string& path) const;

private:
    std::map<std::pair<int, std::vector<int>>, Coefficient> table_;
};

} // namespace htau
