#include "htau/monomial.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace htau {

std::string_view family_name(Family f)
{
    switch (f) {
    case Family::q:
        return "q";
    case Family::p:
        return "p";
    case Family::t:
        return "t";
    }
    return "?";
}

Family parse_family(std::string_view name)
{
    if (name == "q") {
        return Family::q;
    }
    if (name == "p") {
        return Family::p;
    }
    if (name == "t") {
        return Family::t;
    }
    throw std::invalid_argument("unknown variable family: " + std::string(name));
}

Monomial Monomial::from_pairs(Family f, std::vector<Pair> pairs)
{
    std::sort(pairs.begin(), pairs.end());
    Monomial m(f);
    for (const auto& [i, e] : pairs) {
        if (i < 1 || e < 0) {
            throw std::invalid_argument("monomial needs indices >= 1 and exponents >= 0");
        }
        if (e == 0) {
            continue;
        }
        if (!m.pairs_.empty() && m.pairs_.back().first == i) {
            m.pairs_.back().second += e;
        } else {
            m.pairs_.emplace_back(i, e);
        }
        m.weight_ += i * e;
    }
    return m;
}

Monomial Monomial::from_exponents(Family f, const std::vector<int>& exps)
{
    Monomial m(f);
    for (std::size_t i = 1; i < exps.size(); ++i) {
        if (exps[i] < 0) {
            throw std::invalid_argument("negative exponent in monomial");
        }
        if (exps[i] > 0) {
            m.pairs_.emplace_back(static_cast<int>(i), exps[i]);
            m.weight_ += static_cast<int>(i) * exps[i];
        }
    }
    return m;
}

Monomial Monomial::variable(Family f, int index, int exponent)
{
    return from_pairs(f, {{index, exponent}});
}

int Monomial::degree() const
{
    int d = 0;
    for (const auto& pr : pairs_) {
        d += pr.second;
    }
    return d;
}

int Monomial::exponent(int index) const
{
    for (const auto& [i, e] : pairs_) {
        if (i == index) {
            return e;
        }
    }
    return 0;
}

std::vector<int> Monomial::exponents(std::size_t size) const
{
    std::vector<int> e(std::max<std::size_t>(size, static_cast<std::size_t>(max_index()) + 1), 0);
    for (const auto& [i, k] : pairs_) {
        e[static_cast<std::size_t>(i)] = k;
    }
    return e;
}

Monomial Monomial::operator*(const Monomial& o) const
{
    if (family_ != o.family_) {
        throw std::invalid_argument("cannot multiply monomials of different families");
    }
    std::vector<Pair> all = pairs_;
    all.insert(all.end(), o.pairs_.begin(), o.pairs_.end());
    return from_pairs(family_, std::move(all));
}

Monomial Monomial::with_family(Family f) const
{
    Monomial m(*this);
    m.family_ = f;
    return m;
}

std::string Monomial::to_string() const
{
    if (pairs_.empty()) {
        return "1";
    }
    std::string out;
    for (const auto& [i, e] : pairs_) {
        if (!out.empty()) {
            out += "*";
        }
        out += std::string(family_name(family_)) + std::to_string(i);
        if (e != 1) {
            out += "^" + std::to_string(e);
        }
    }
    return out;
}

bool CanonicalLess::operator()(const Monomial& a, const Monomial& b) const
{
    if (a.weight() != b.weight()) {
        return a.weight() < b.weight();
    }
    return std::lexicographical_compare(a.pairs().rbegin(), a.pairs().rend(),
                                        b.pairs().rbegin(), b.pairs().rend());
}

std::vector<Monomial> monomials_of_weight(Family f, int w)
{
    std::vector<Monomial> out;
    if (w < 0) {
        return out;
    }
    std::vector<int> exps(static_cast<std::size_t>(w) + 1, 0);
    // Partitions of w by parts of size <= largest.
    std::function<void(int, int)> rec = [&](int remaining, int largest) {
        if (remaining == 0) {
            out.push_back(Monomial::from_exponents(f, exps));
            return;
        }
        for (int part = std::min(remaining, largest); part >= 1; --part) {
            ++exps[static_cast<std::size_t>(part)];
            rec(remaining - part, part);
            --exps[static_cast<std::size_t>(part)];
        }
    };
    rec(w, w);
    std::sort(out.begin(), out.end(), CanonicalLess{});
    return out;
}

std::vector<Monomial> monomials_up_to(Family f, int max_weight)
{
    std::vector<Monomial> out;
    for (int w = 0; w <= max_weight; ++w) {
        auto layer = monomials_of_weight(f, w);
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

} // namespace htau
