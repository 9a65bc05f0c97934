#include "htau/hurwitz.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>

#include "htau/operators.hpp"

namespace htau {

HurwitzIndex::HurwitzIndex(int g, std::vector<int> parts) : g_(g), parts_(std::move(parts))
{
    if (g_ < 0) {
        throw std::invalid_argument("genus must be >= 0");
    }
    if (parts_.empty()) {
        throw std::invalid_argument("at least one part is required");
    }
    for (int b : parts_) {
        if (b < 1) {
            throw std::invalid_argument("parts must be positive");
        }
    }
    if (m() < 0) {
        throw std::invalid_argument("m = 2g - 1 + n must be >= 0");
    }
}

int HurwitzIndex::d() const
{
    return std::accumulate(parts_.begin(), parts_.end(), 0);
}

std::vector<int> HurwitzIndex::sorted_parts() const
{
    auto p = parts_;
    std::sort(p.begin(), p.end());
    return p;
}

Coefficient HurwitzIndex::automorphisms() const
{
    std::map<int, int> mult;
    for (int b : parts_) {
        ++mult[b];
    }
    Coefficient a = 1;
    for (const auto& [b, k] : mult) {
        a *= factorial(k);
    }
    return a;
}

std::string HurwitzIndex::to_string() const
{
    std::string s = "g=" + std::to_string(g_) + ",b=(";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        s += (i ? "," : "") + std::to_string(parts_[i]);
    }
    return s + ")";
}

namespace {

int count_cycles(const std::vector<int>& perm, std::vector<char>& seen)
{
    std::fill(seen.begin(), seen.end(), 0);
    int cycles = 0;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) {
            continue;
        }
        ++cycles;
        for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) {
            seen[j] = 1;
        }
    }
    return cycles;
}

struct FactorizationCounter {
    std::vector<std::pair<int, int>> transpositions;
    std::vector<char> seen;

    // Number of sequences of `left` transpositions turning perm into one cycle,
    // multiplying on the left each time.
    unsigned long long count(std::vector<int>& perm, int left)
    {
        const int cycles = count_cycles(perm, seen);
        if (cycles - 1 > left || (cycles - 1 - left) % 2 != 0) {
            return 0;
        }
        if (left == 0) {
            return 1;
        }
        unsigned long long total = 0;
        for (const auto& [a, b] : transpositions) {
            // (a b) o perm: swap the values a and b in the image.
            auto ia = std::find(perm.begin(), perm.end(), a);
            auto ib = std::find(perm.begin(), perm.end(), b);
            std::iter_swap(ia, ib);
            total += count(perm, left - 1);
            std::iter_swap(ia, ib);
        }
        return total;
    }
};

} // namespace

HurwitzValue hurwitz_bruteforce(const HurwitzIndex& idx, int dcap)
{
    const int d = idx.d();
    if (d > dcap) {
        throw std::invalid_argument("degree " + std::to_string(d) + " exceeds brute-force cap " +
                                    std::to_string(dcap));
    }
    // sigma: consecutive labeled cycles of lengths b_1, .., b_n
    std::vector<int> perm(static_cast<std::size_t>(d));
    int start = 0;
    for (int b : idx.parts()) {
        for (int k = 0; k < b; ++k) {
            perm[static_cast<std::size_t>(start + k)] = start + (k + 1) % b;
        }
        start += b;
    }
    FactorizationCounter counter;
    counter.seen.resize(static_cast<std::size_t>(d));
    for (int a = 0; a < d; ++a) {
        for (int b = a + 1; b < d; ++b) {
            counter.transpositions.emplace_back(a, b);
        }
    }
    const unsigned long long N = counter.count(perm, idx.m());
    Coefficient h{mpz_class(std::to_string(N))};
    for (int b : idx.parts()) {
        h /= b;
    }
    return {idx, h};
}

TruncatedSeries cutjoin_series(int W, int Mmax, const UPoly& c)
{
    if (W < 1 || Mmax < 0) {
        throw std::invalid_argument("cutjoin_series needs W >= 1 and Mmax >= 0");
    }
    const int U = 2 * Mmax;
    const Band band{std::min(0, c.is_zero() ? 0 : c.lowest()), std::max(U, c.is_zero() ? 0 : c.highest())};
    TruncatedSeries s(Family::p, W, band);
    for (int i = 1; i <= W; ++i) {
        s += TruncatedSeries::variable(Family::p, W, i).with_band(band);
    }
    s = s.with_u_cap(U);
    TruncatedSeries out =
        exponential_apply({LinearOperator::M(0), UPoly::monomial(2), std::nullopt}, s);
    return out + TruncatedSeries::constant(Family::p, W, c).with_band(band);
}

HurwitzValue extract_hurwitz(const TruncatedSeries& series, const HurwitzIndex& idx)
{
    if (series.family() != Family::p) {
        throw std::invalid_argument("Hurwitz numbers are read from a p-family series");
    }
    const int d = idx.d();
    if (d > series.W()) {
        throw std::out_of_range("degree " + std::to_string(d) + " beyond truncation weight " +
                                std::to_string(series.W()));
    }
    const int e = 2 * idx.m();
    if (series.ucap(d) < e) {
        throw std::out_of_range("beta order " + std::to_string(idx.m()) + " beyond series precision");
    }
    std::vector<Monomial::Pair> pairs;
    for (int b : idx.parts()) {
        pairs.emplace_back(b, 1);
    }
    const Monomial mono = Monomial::from_pairs(Family::p, pairs);
    const Coefficient coef = series.coefficient_of(mono).coefficient(e);
    return {idx, coef * idx.automorphisms() * factorial(idx.m()) / d};
}

std::pair<TruncatedSeries, TruncatedSeries> h01_h02_closed_forms(int W)
{
    if (W < 2) {
        throw std::invalid_argument("h01_h02_closed_forms needs W >= 2");
    }
    const Band band{0, 2};
    TruncatedSeries h01(Family::p, W, band);
    TruncatedSeries h02(Family::p, W, band);
    for (int d = 1; d <= W; ++d) {
        const HurwitzIndex idx(0, {d});
        const Coefficient h = hurwitz_bruteforce(idx, W).h;
        h01 += TruncatedSeries::variable(Family::p, W, d, UPoly(h / d)).with_band(band);
        for (int b1 = 1; 2 * b1 <= d; ++b1) {
            const HurwitzIndex idx2(0, {b1, d - b1});
            const Coefficient h2 = hurwitz_bruteforce(idx2, W).h;
            const Monomial m = Monomial::from_pairs(Family::p, {{b1, 1}, {d - b1, 1}});
            h02 += TruncatedSeries::monomial(m, W, UPoly::monomial(2, h2 / (idx2.automorphisms() * d)))
                       .with_band(band);
        }
    }
    return {h01, h02};
}

std::vector<HurwitzIndex> hurwitz_indices(int dmax, int mmax)
{
    std::vector<HurwitzIndex> out;
    for (int d = 1; d <= dmax; ++d) {
        for (const auto& mono : monomials_of_weight(Family::p, d)) {
            std::vector<int> parts;
            for (const auto& [b, e] : mono.pairs()) {
                parts.insert(parts.end(), static_cast<std::size_t>(e), b);
            }
            const int n = static_cast<int>(parts.size());
            for (int g = 0; 2 * g - 1 + n <= mmax; ++g) {
                if (2 * g - 1 + n >= 0) {
                    out.emplace_back(g, parts);
                }
            }
        }
    }
    return out;
}

std::optional<Coefficient> HurwitzCache::lookup(const HurwitzIndex& idx) const
{
    auto it = table_.find({idx.g(), idx.sorted_parts()});
    if (it == table_.end()) {
        return std::nullopt;
    }
    return it->second;
}

void HurwitzCache::insert(const HurwitzValue& v)
{
    table_[{v.index.g(), v.index.sorted_parts()}] = v.h;
}

nlohmann::json HurwitzCache::to_json() const
{
    nlohmann::json out = nlohmann::json::array();
    for (const auto& [key, h] : table_) {
        out.push_back({{"g", key.first}, {"parts", key.second}, {"h", htau::to_string(h)}});
    }
    return out;
}

HurwitzCache HurwitzCache::from_json(const nlohmann::json& j)
{
    HurwitzCache cache;
    try {
        for (const auto& rec : j) {
            const HurwitzIndex idx(rec.at("g").get<int>(), rec.at("parts").get<std::vector<int>>());
            cache.insert({idx, parse_rational(rec.at("h").get<std::string>())});
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed Hurwitz cache: ") + e.what());
    }
    return cache;
}

HurwitzCache HurwitzCache::load(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        return {};
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("cannot parse Hurwitz cache " + path + ": " + e.what());
    }
    return from_json(j);
}

void HurwitzCache::save(const std::string& path) const
{
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write Hurwitz cache " + path);
    }
    out << to_json().dump(1) << '\n';
}

} // namespace htau
