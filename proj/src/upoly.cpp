#include "htau/upoly.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <stdexcept>

namespace htau {

UPoly::UPoly(const Coefficient& c)
{
    if (c != 0) {
        terms_.emplace_back(0, c);
    }
}

UPoly UPoly::monomial(int exponent, const Coefficient& c)
{
    UPoly p;
    if (c != 0) {
        p.terms_.emplace_back(exponent, c);
    }
    return p;
}

Coefficient UPoly::coefficient(int exponent) const
{
    auto it = std::lower_bound(terms_.begin(), terms_.end(), exponent,
                               [](const Term& t, int k) { return t.first < k; });
    if (it != terms_.end() && it->first == exponent) {
        return it->second;
    }
    return Coefficient(0);
}

int UPoly::lowest() const
{
    if (terms_.empty()) {
        throw std::logic_error("lowest exponent of the zero polynomial");
    }
    return terms_.front().first;
}

int UPoly::highest() const
{
    if (terms_.empty()) {
        throw std::logic_error("highest exponent of the zero polynomial");
    }
    return terms_.back().first;
}

UPoly UPoly::shifted(int k) const
{
    UPoly r(*this);
    for (auto& t : r.terms_) {
        t.first += k;
    }
    return r;
}

UPoly UPoly::truncated_above(int cap) const
{
    UPoly r;
    for (const auto& t : terms_) {
        if (t.first <= cap) {
            r.terms_.push_back(t);
        }
    }
    return r;
}

UPoly UPoly::restricted(int lo, int hi) const
{
    UPoly r;
    for (const auto& t : terms_) {
        if (t.first >= lo && t.first <= hi) {
            r.terms_.push_back(t);
        }
    }
    return r;
}

void UPoly::accumulate(int k, const Coefficient& c)
{
    if (c == 0) {
        return;
    }
    auto it = std::lower_bound(terms_.begin(), terms_.end(), k,
                               [](const Term& t, int e) { return t.first < e; });
    if (it != terms_.end() && it->first == k) {
        it->second += c;
        if (it->second == 0) {
            terms_.erase(it);
        }
    } else {
        terms_.emplace(it, k, c);
    }
}

UPoly& UPoly::operator+=(const UPoly& o)
{
    if (terms_.empty()) {
        terms_ = o.terms_;
        return *this;
    }
    std::vector<Term> merged;
    merged.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.begin();
    auto b = o.terms_.begin();
    while (a != terms_.end() || b != o.terms_.end()) {
        if (b == o.terms_.end() || (a != terms_.end() && a->first < b->first)) {
            merged.push_back(std::move(*a++));
        } else if (a == terms_.end() || b->first < a->first) {
            merged.push_back(*b++);
        } else {
            Coefficient s = a->second + b->second;
            if (s != 0) {
                merged.emplace_back(a->first, std::move(s));
            }
            ++a;
            ++b;
        }
    }
    terms_ = std::move(merged);
    return *this;
}

UPoly& UPoly::operator-=(const UPoly& o)
{
    return *this += -o;
}

UPoly& UPoly::operator*=(const UPoly& o)
{
    *this = *this * o;
    return *this;
}

UPoly& UPoly::operator*=(const Coefficient& c)
{
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) {
        t.second *= c;
    }
    return *this;
}

UPoly UPoly::operator-() const
{
    UPoly r(*this);
    for (auto& t : r.terms_) {
        t.second = -t.second;
    }
    return r;
}

UPoly operator*(const UPoly& a, const UPoly& b)
{
    if (a.terms_.size() == 1 && b.terms_.size() == 1) {
        return UPoly::monomial(a.terms_[0].first + b.terms_[0].first,
                               a.terms_[0].second * b.terms_[0].second);
    }
    std::map<int, Coefficient> acc;
    for (const auto& [ka, ca] : a.terms_) {
        for (const auto& [kb, cb] : b.terms_) {
            acc[ka + kb] += ca * cb;
        }
    }
    UPoly r;
    for (auto& [k, c] : acc) {
        if (c != 0) {
            r.terms_.emplace_back(k, std::move(c));
        }
    }
    return r;
}

bool operator==(const UPoly& a, const UPoly& b)
{
    return a.terms_ == b.terms_;
}

std::string UPoly::to_string() const
{
    if (terms_.empty()) {
        return "0";
    }
    std::string out;
    for (const auto& [k, c] : terms_) {
        std::string piece;
        if (k == 0) {
            piece = htau::to_string(c);
        } else {
            if (c == 1) {
                piece = "";
            } else if (c == -1) {
                piece = "-";
            } else {
                piece = htau::to_string(c) + "*";
            }
            piece += "u";
            if (k != 1) {
                piece += "^" + std::to_string(k);
            }
        }
        if (!out.empty() && piece[0] != '-') {
            out += "+";
        }
        out += piece;
    }
    return out;
}

UPoly UPoly::parse(std::string_view text)
{
    std::string s;
    for (char ch : text) {
        if (!std::isspace(static_cast<unsigned char>(ch))) {
            s.push_back(ch);
        }
    }
    if (s.empty()) {
        throw std::invalid_argument("empty Laurent polynomial literal");
    }
    // Split into signed terms; a sign right after '^' belongs to the exponent.
    std::vector<std::string> pieces;
    std::string cur;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const char ch = s[i];
        if ((ch == '+' || ch == '-') && i > 0 && s[i - 1] != '^' && s[i - 1] != '*') {
            pieces.push_back(cur);
            cur.clear();
        }
        cur.push_back(ch);
    }
    pieces.push_back(cur);

    UPoly result;
    for (std::string piece : pieces) {
        bool negative = false;
        if (!piece.empty() && (piece[0] == '+' || piece[0] == '-')) {
            negative = piece[0] == '-';
            piece.erase(0, 1);
        }
        if (piece.empty()) {
            throw std::invalid_argument("malformed Laurent polynomial: " + std::string(text));
        }
        Coefficient coef(1);
        int exponent = 0;
        const auto upos = piece.find('u');
        if (upos == std::string::npos) {
            coef = parse_rational(piece);
        } else {
            std::string head = piece.substr(0, upos);
            std::string tail = piece.substr(upos + 1);
            if (!head.empty()) {
                if (head.back() == '*') {
                    head.pop_back();
                }
                coef = parse_rational(head);
            }
            if (tail.empty()) {
                exponent = 1;
            } else if (tail[0] == '^') {
                try {
                    std::size_t used = 0;
                    exponent = std::stoi(tail.substr(1), &used);
                    if (used != tail.size() - 1) {
                        throw std::invalid_argument("trailing characters");
                    }
                } catch (const std::exception&) {
                    throw std::invalid_argument("malformed exponent in: " + std::string(text));
                }
            } else {
                throw std::invalid_argument("malformed Laurent polynomial: " + std::string(text));
            }
        }
        if (negative) {
            coef = -coef;
        }
        result.accumulate(exponent, coef);
    }
    return result;
}

} // namespace htau
