#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <numeric>

#include "htau/hurwitz.hpp"

using namespace htau;

namespace {

using Perm = std::vector<int>;

Perm compose(const Perm& a, const Perm& b) // a after b
{
    Perm r(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) {
        r[i] = a[static_cast<std::size_t>(b[i])];
    }
    return r;
}

bool is_full_cycle(const Perm& p)
{
    std::size_t len = 0;
    int x = 0;
    do {
        x = p[static_cast<std::size_t>(x)];
        ++len;
    } while (x != 0);
    return len == p.size();
}

// Straight enumeration over all m-tuples of transpositions; no pruning.
Coefficient naive_hurwitz(int g, const std::vector<int>& parts)
{
    const int d = std::accumulate(parts.begin(), parts.end(), 0);
    const int m = 2 * g - 1 + static_cast<int>(parts.size());
    Perm sigma(static_cast<std::size_t>(d));
    int pos = 0;
    for (int b : parts) {
        for (int k = 0; k < b; ++k) {
            sigma[static_cast<std::size_t>(pos + k)] = pos + (k + 1) % b;
        }
        pos += b;
    }
    std::vector<Perm> transpositions;
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            Perm t(static_cast<std::size_t>(d));
            std::iota(t.begin(), t.end(), 0);
            std::swap(t[static_cast<std::size_t>(i)], t[static_cast<std::size_t>(j)]);
            transpositions.push_back(t);
        }
    }
    long count = 0;
    std::vector<std::size_t> idx(static_cast<std::size_t>(m), 0);
    const std::size_t T = transpositions.size();
    if (m > 0 && T == 0) {
        return 0;
    }
    while (true) {
        Perm p = sigma;
        for (std::size_t k = 0; k < idx.size(); ++k) {
            p = compose(transpositions[idx[k]], p);
        }
        count += is_full_cycle(p) ? 1 : 0;
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == T) {
            idx[k++] = 0;
        }
        if (k == idx.size()) {
            break;
        }
    }
    Coefficient h(count);
    for (int b : parts) {
        h /= b;
    }
    return h;
}

Coefficient pow_int(int base, int e)
{
    Coefficient r(1);
    for (int k = 0; k < std::abs(e); ++k) {
        r *= base;
    }
    return e >= 0 ? r : Coefficient(1) / r;
}

} // namespace

TEST_CASE("index validation")
{
    CHECK_THROWS(HurwitzIndex(-1, {1}));
    CHECK_THROWS(HurwitzIndex(0, {}));
    CHECK_THROWS(HurwitzIndex(0, {2, 0}));
    const HurwitzIndex idx(1, {2, 1, 2});
    CHECK(idx.d() == 5);
    CHECK(idx.m() == 4);
    CHECK(idx.automorphisms() == 2);
}

TEST_CASE("brute force matches naive enumeration")
{
    for (const auto& idx : hurwitz_indices(4, 3)) {
        CAPTURE(idx.to_string());
        CHECK(hurwitz_bruteforce(idx).h == naive_hurwitz(idx.g(), idx.parts()));
    }
}

TEST_CASE("anchors")
{
    for (int d = 1; d <= 6; ++d) {
        CHECK(hurwitz_bruteforce(HurwitzIndex(0, {d})).h == Coefficient(1, d));
    }
    CHECK(hurwitz_bruteforce(HurwitzIndex(0, {2, 3})).h == 1);
    CHECK(hurwitz_bruteforce(HurwitzIndex(0, {1, 1})).h == 1);
}

TEST_CASE("one-part closed forms in genus 0 and 1")
{
    for (const auto& idx : hurwitz_indices(6, 4)) {
        if (idx.g() > 1) {
            continue;
        }
        const int d = idx.d();
        const int n = idx.n();
        const Coefficient lhs = hurwitz_bruteforce(idx).h / (d * factorial(idx.m()));
        Coefficient rhs;
        if (idx.g() == 0) {
            rhs = pow_int(d, n - 3);
        } else {
            int sq = 0;
            for (int b : idx.parts()) {
                sq += b * b;
            }
            rhs = pow_int(d, n - 1) * make_rational(sq - 1, 24);
        }
        CAPTURE(idx.to_string());
        CHECK(lhs == rhs);
    }
}

TEST_CASE("series route agrees with brute force and is symmetric")
{
    const auto cj = cutjoin_series(5, 5);
    for (const auto& idx : hurwitz_indices(5, 5)) {
        CAPTURE(idx.to_string());
        CHECK(extract_hurwitz(cj, idx).h == hurwitz_bruteforce(idx).h);
        auto parts = idx.parts();
        std::reverse(parts.begin(), parts.end());
        CHECK(extract_hurwitz(cj, HurwitzIndex(idx.g(), parts)).h == extract_hurwitz(cj, idx).h);
    }
    CHECK_THROWS(extract_hurwitz(cj, HurwitzIndex(3, {1})));
    CHECK_THROWS(hurwitz_bruteforce(HurwitzIndex(0, {4, 4})));
}

TEST_CASE("cache round trip")
{
    HurwitzCache cache;
    cache.insert(hurwitz_bruteforce(HurwitzIndex(1, {2, 1})));
    const auto path = std::filesystem::temp_directory_path() / "htau_cache_test.json";
    cache.save(path.string());
    const auto back = HurwitzCache::load(path.string());
    CHECK(back.size() == 1);
    CHECK(back.lookup(HurwitzIndex(1, {1, 2})) == hurwitz_bruteforce(HurwitzIndex(1, {2, 1})).h);
    CHECK_FALSE(back.lookup(HurwitzIndex(0, {3})));
    std::filesystem::remove(path);
    CHECK(HurwitzCache::load(path.string()).size() == 0);
}
