#include "htau/series.hpp"

#include <algorithm>
#include <sstream>

namespace htau {

Band Band::hull(const Band& a, const Band& b)
{
    return {std::min(a.umin, b.umin), std::max(a.umax, b.umax)};
}

TruncatedSeries::TruncatedSeries(Family family, int W)
    : TruncatedSeries(family, W, Band::for_weight(std::max(W, 0)))
{
}

TruncatedSeries::TruncatedSeries(Family family, int W, Band band)
    : family_(family), W_(W), band_(band), ucap_(static_cast<std::size_t>(std::max(W + 1, 0)), kExactCap)
{
    if (W < -1) {
        throw std::invalid_argument("truncation weight must be >= -1");
    }
    if (band.umin > band.umax) {
        throw std::invalid_argument("empty u-exponent band");
    }
}

TruncatedSeries TruncatedSeries::constant(Family family, int W, const UPoly& c)
{
    TermMap t;
    if (!c.is_zero()) {
        t.emplace(Monomial(family), c);
    }
    return from_terms(family, W, std::move(t));
}

TruncatedSeries TruncatedSeries::variable(Family family, int W, int index, const UPoly& c)
{
    return monomial(Monomial::variable(family, index), W, c);
}

TruncatedSeries TruncatedSeries::monomial(const Monomial& m, int W, const UPoly& c)
{
    TermMap t;
    if (!c.is_zero()) {
        t.emplace(m, c);
    }
    return from_terms(m.family(), W, std::move(t));
}

TruncatedSeries TruncatedSeries::from_terms(Family family, int W, TermMap terms,
                                            std::vector<int> ucap, std::optional<Band> band)
{
    TruncatedSeries s(family, W, band.value_or(Band::for_weight(std::max(W, 0))));
    if (!ucap.empty()) {
        if (ucap.size() != s.ucap_.size()) {
            throw std::invalid_argument("u-precision vector must have W + 1 entries");
        }
        s.ucap_ = std::move(ucap);
    }
    for (const auto& [m, c] : terms) {
        if (m.family() != family) {
            throw std::invalid_argument("term family does not match series family");
        }
    }
    s.terms_ = std::move(terms);
    s.normalize();
    return s;
}

int TruncatedSeries::ucap(int w) const
{
    if (w < 0 || w > W_) {
        throw std::out_of_range("weight outside truncation");
    }
    return ucap_[static_cast<std::size_t>(w)];
}

bool TruncatedSeries::u_exact() const
{
    return std::all_of(ucap_.begin(), ucap_.end(), [](int c) { return c >= kExactCap; });
}

void TruncatedSeries::normalize()
{
    for (auto it = terms_.begin(); it != terms_.end();) {
        const int w = it->first.weight();
        if (w > W_) {
            it = terms_.erase(it);
            continue;
        }
        const int cap = ucap_[static_cast<std::size_t>(w)];
        if (cap < kExactCap && !it->second.is_zero() && it->second.highest() > cap) {
            it->second = it->second.truncated_above(cap);
        }
        if (it->second.is_zero()) {
            it = terms_.erase(it);
            continue;
        }
        if (it->second.lowest() < band_.umin || it->second.highest() > band_.umax) {
            throw BandOverflow("u-exponent outside band [" + std::to_string(band_.umin) + ", " +
                               std::to_string(band_.umax) + "] at " + it->first.to_string());
        }
        ++it;
    }
}

void TruncatedSeries::check_family(const TruncatedSeries& o) const
{
    if (family_ != o.family_) {
        throw std::invalid_argument("series family mismatch: " + std::string(family_name(family_)) +
                                    " vs " + std::string(family_name(o.family_)));
    }
}

UPoly TruncatedSeries::coefficient_of(const Monomial& m) const
{
    if (m.family() != family_) {
        throw std::invalid_argument("monomial family does not match series family");
    }
    if (m.weight() > W_) {
        throw std::out_of_range("monomial " + m.to_string() + " lies beyond truncation weight " +
                                std::to_string(W_));
    }
    auto it = terms_.find(m);
    return it == terms_.end() ? UPoly() : it->second;
}

int TruncatedSeries::lowest_u(int w) const
{
    int lo = cap_add(ucap(w), 1);
    // Terms of weight w form a contiguous block in canonical order.
    auto it = terms_.lower_bound(Monomial::from_pairs(family_, {}));
    for (; it != terms_.end(); ++it) {
        if (it->first.weight() == w) {
            lo = std::min(lo, it->second.lowest());
        } else if (it->first.weight() > w) {
            break;
        }
    }
    return lo;
}

TruncatedSeries TruncatedSeries::truncated(int W) const
{
    if (W > W_) {
        throw std::invalid_argument("cannot raise truncation weight");
    }
    TruncatedSeries r(family_, W, band_);
    std::copy(ucap_.begin(), ucap_.begin() + (W + 1), r.ucap_.begin());
    r.terms_ = terms_;
    r.normalize();
    return r;
}

TruncatedSeries TruncatedSeries::with_ucap(std::vector<int> ucap) const
{
    if (ucap.size() != ucap_.size()) {
        throw std::invalid_argument("u-precision vector must have W + 1 entries");
    }
    TruncatedSeries r(*this);
    for (std::size_t w = 0; w < ucap.size(); ++w) {
        r.ucap_[w] = std::min(ucap_[w], ucap[w]);
    }
    r.normalize();
    return r;
}

TruncatedSeries TruncatedSeries::with_total_degree_cap(int D) const
{
    std::vector<int> cap(ucap_.size());
    for (std::size_t w = 0; w < cap.size(); ++w) {
        cap[w] = D - static_cast<int>(w);
    }
    return with_ucap(std::move(cap));
}

TruncatedSeries TruncatedSeries::with_u_cap(int U) const
{
    return with_ucap(std::vector<int>(ucap_.size(), U));
}

TruncatedSeries TruncatedSeries::with_band(Band band) const
{
    TruncatedSeries r(*this);
    r.band_ = band;
    r.normalize();
    return r;
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o)
{
    check_family(o);
    const int W = std::min(W_, o.W_);
    ucap_.resize(static_cast<std::size_t>(W + 1));
    for (std::size_t w = 0; w < ucap_.size(); ++w) {
        ucap_[w] = std::min(ucap_[w], o.ucap_[w]);
    }
    W_ = W;
    band_ = Band::hull(band_, o.band_);
    for (const auto& [m, c] : o.terms_) {
        if (m.weight() > W_) {
            continue;
        }
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
        }
    }
    normalize();
    return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& o)
{
    return *this += -o;
}

TruncatedSeries TruncatedSeries::operator-() const
{
    TruncatedSeries r(*this);
    for (auto& [m, c] : r.terms_) {
        c = -c;
    }
    return r;
}

TruncatedSeries TruncatedSeries::scaled(const Coefficient& c) const
{
    TruncatedSeries r(*this);
    if (c == 0) {
        r.terms_.clear();
        return r;
    }
    for (auto& [m, p] : r.terms_) {
        p *= c;
    }
    return r;
}

TruncatedSeries TruncatedSeries::scaled(const UPoly& c) const
{
    TruncatedSeries r(*this);
    if (c.is_zero()) {
        r.terms_.clear();
        std::fill(r.ucap_.begin(), r.ucap_.end(), kExactCap);
        return r;
    }
    const int shift = c.lowest();
    for (auto& cap : r.ucap_) {
        cap = cap_add(cap, shift);
    }
    for (auto& [m, p] : r.terms_) {
        p = p * c;
    }
    r.normalize();
    return r;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b)
{
    a.check_family(b);
    const int W = std::min(a.W_, b.W_);
    TruncatedSeries r(a.family_, W, Band::hull(a.band_, b.band_));
    auto lows = [W](const TruncatedSeries& s) {
        std::vector<int> lo(static_cast<std::size_t>(W + 1));
        for (int w = 0; w <= W; ++w) {
            lo[static_cast<std::size_t>(w)] = cap_add(s.ucap(w), 1);
        }
        for (const auto& [m, c] : s.terms()) {
            if (m.weight() > W) {
                break;
            }
            auto& l = lo[static_cast<std::size_t>(m.weight())];
            l = std::min(l, c.lowest());
        }
        return lo;
    };
    const auto lo_a = lows(a);
    const auto lo_b = lows(b);
    // Unknown terms of one factor times known (or unknown) terms of the other.
    for (int w = 0; w <= W; ++w) {
        int cap = kExactCap;
        for (int w1 = 0; w1 <= w; ++w1) {
            const int w2 = w - w1;
            cap = std::min(cap, cap_add(a.ucap(w1), lo_b[static_cast<std::size_t>(w2)]));
            cap = std::min(cap, cap_add(b.ucap(w2), lo_a[static_cast<std::size_t>(w1)]));
        }
        r.ucap_[static_cast<std::size_t>(w)] = cap;
    }
    for (const auto& [ma, ca] : a.terms_) {
        if (ma.weight() > W) {
            break;
        }
        for (const auto& [mb, cb] : b.terms_) {
            if (ma.weight() + mb.weight() > W) {
                break;
            }
            const Monomial m = ma * mb;
            UPoly prod = ca * cb;
            auto [it, inserted] = r.terms_.try_emplace(m, prod);
            if (!inserted) {
                it->second += prod;
            }
        }
    }
    r.normalize();
    return r;
}

bool operator==(const TruncatedSeries& a, const TruncatedSeries& b)
{
    return a.family_ == b.family_ && a.W_ == b.W_ && a.ucap_ == b.ucap_ && a.terms_ == b.terms_;
}

std::string TruncatedSeries::to_string() const
{
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) {
            os << " + ";
        }
        first = false;
        os << "(" << c.to_string() << ")";
        if (!m.is_one()) {
            os << "*" << m.to_string();
        }
    }
    if (first) {
        os << "0";
    }
    os << " + O(w>" << W_ << ")";
    return os.str();
}

TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b)
{
    return a + b;
}

TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b)
{
    return a * b;
}

TruncatedSeries partial(int n, const TruncatedSeries& s)
{
    if (n < 1) {
        throw std::invalid_argument("partial derivative index must be >= 1");
    }
    const int W = std::max(s.W() - n, -1);
    TruncatedSeries::TermMap out;
    for (const auto& [m, c] : s.terms()) {
        const int e = m.exponent(n);
        if (e == 0 || m.weight() - n > W) {
            continue;
        }
        auto exps = m.exponents();
        --exps[static_cast<std::size_t>(n)];
        const Monomial dm = Monomial::from_exponents(s.family(), exps);
        auto [it, inserted] = out.try_emplace(dm, c * Coefficient(e));
        if (!inserted) {
            it->second += c * Coefficient(e);
        }
    }
    std::vector<int> cap(static_cast<std::size_t>(W + 1));
    for (int w = 0; w <= W; ++w) {
        cap[static_cast<std::size_t>(w)] = s.ucap(w + n);
    }
    return TruncatedSeries::from_terms(s.family(), W, std::move(out), std::move(cap), s.band());
}

UPoly coefficient_of(const TruncatedSeries& s, const Monomial& m)
{
    return s.coefficient_of(m);
}

TruncatedSeries u_layer(const TruncatedSeries& s, int e)
{
    int W0 = -1;
    while (W0 + 1 <= s.W() && s.ucap(W0 + 1) >= e) {
        ++W0;
    }
    TruncatedSeries::TermMap out;
    for (const auto& [m, c] : s.terms()) {
        if (m.weight() > W0) {
            continue;
        }
        const Coefficient k = c.coefficient(e);
        if (k != 0) {
            out.emplace(m, UPoly(k));
        }
    }
    return TruncatedSeries::from_terms(s.family(), W0, std::move(out), {},
                                       Band::hull(s.band(), {0, 0}));
}

TruncatedSeries substitute_linear(const TruncatedSeries& s, const LinearRule& rule,
                                  std::optional<Band> band)
{
    const int W = s.W();
    // Image term data per source variable: (target weight, u-exponent).
    std::map<int, std::vector<std::pair<int, int>>> shapes;
    for (const auto& [b, img] : rule.images) {
        if (b < 1) {
            throw std::invalid_argument("substitution rule for a variable index < 1");
        }
        if (img.family() != rule.target) {
            throw std::invalid_argument("substitution image is not in the target family");
        }
        if (!img.u_exact()) {
            throw std::invalid_argument("substitution images must be exact in u");
        }
        if (img.W() < W) {
            throw std::invalid_argument("substitution image truncated below the source weight");
        }
        for (const auto& [m, c] : img.terms()) {
            if (m.degree() != 1) {
                throw std::invalid_argument("nonlinear substitution image for variable " +
                                            std::to_string(b));
            }
            if (m.weight() < b) {
                throw std::invalid_argument("weight-incompatible substitution image for variable " +
                                            std::to_string(b));
            }
            for (const auto& [k, coef] : c.terms()) {
                shapes[b].emplace_back(m.weight(), k);
            }
        }
    }

    // minshift[d][w]: lowest u-exponent produced at target weight w by any
    // source monomial of weight d; maxshift likewise for the default band.
    constexpr int kNone = kExactCap;
    const auto Ws = static_cast<std::size_t>(std::max(W, 0) + 1);
    std::vector<std::vector<int>> minshift(Ws, std::vector<int>(Ws, kNone));
    std::vector<std::vector<int>> maxshift(Ws, std::vector<int>(Ws, -kNone));
    if (W >= 0) {
        minshift[0][0] = 0;
        maxshift[0][0] = 0;
    }
    for (int d = 1; d <= W; ++d) {
        for (const auto& [b, terms] : shapes) {
            if (b > d) {
                continue;
            }
            for (int w = 0; w <= W; ++w) {
                if (minshift[static_cast<std::size_t>(d - b)][static_cast<std::size_t>(w)] == kNone) {
                    continue;
                }
                for (const auto& [tw, tu] : terms) {
                    if (w + tw > W) {
                        continue;
                    }
                    auto& lo = minshift[static_cast<std::size_t>(d)][static_cast<std::size_t>(w + tw)];
                    auto& hi = maxshift[static_cast<std::size_t>(d)][static_cast<std::size_t>(w + tw)];
                    lo = std::min(lo, minshift[static_cast<std::size_t>(d - b)][static_cast<std::size_t>(w)] + tu);
                    hi = std::max(hi, maxshift[static_cast<std::size_t>(d - b)][static_cast<std::size_t>(w)] + tu);
                }
            }
        }
    }

    std::vector<int> cap(Ws, kExactCap);
    if (W < 0) {
        cap.clear();
    }
    const bool source_exact = s.u_exact();
    if (!source_exact) {
        for (int b = 1; b <= W; ++b) {
            if (!rule.images.count(b)) {
                throw std::invalid_argument("substitution rule lacks an image for variable " +
                                            std::to_string(b) + " needed for truncation bookkeeping");
            }
        }
    }
    int lo_all = 0;
    int hi_all = 0;
    for (int d = 0; d <= W; ++d) {
        for (int w = 0; w <= W; ++w) {
            const int lo = minshift[static_cast<std::size_t>(d)][static_cast<std::size_t>(w)];
            if (lo == kNone) {
                continue;
            }
            lo_all = std::min(lo_all, lo);
            hi_all = std::max(hi_all, maxshift[static_cast<std::size_t>(d)][static_cast<std::size_t>(w)]);
            if (!source_exact) {
                cap[static_cast<std::size_t>(w)] =
                    std::min(cap[static_cast<std::size_t>(w)], cap_add(s.ucap(d), lo));
            }
        }
    }

    // Power cache for the images.
    std::map<std::pair<int, int>, TruncatedSeries> powers;
    auto power = [&](int b, int e) -> const TruncatedSeries& {
        auto key = std::make_pair(b, e);
        auto it = powers.find(key);
        if (it != powers.end()) {
            return it->second;
        }
        auto img = rule.images.find(b);
        if (img == rule.images.end()) {
            throw std::invalid_argument("substitution rule lacks an image for variable " +
                                        std::to_string(b));
        }
        TruncatedSeries base = img->second.truncated(W).with_band({-kNone, kNone});
        TruncatedSeries acc = base;
        for (int k = 1; k < e; ++k) {
            acc = acc * base;
        }
        return powers.emplace(key, std::move(acc)).first->second;
    };

    TruncatedSeries::TermMap out;
    for (const auto& [m, c] : s.terms()) {
        TruncatedSeries prod = TruncatedSeries::constant(rule.target, W, c).with_band({-kNone, kNone});
        for (const auto& [b, e] : m.pairs()) {
            prod = prod * power(b, e);
        }
        for (const auto& [tm, tc] : prod.terms()) {
            auto [it, inserted] = out.try_emplace(tm, tc);
            if (!inserted) {
                it->second += tc;
            }
        }
    }
    for (auto it = out.begin(); it != out.end();) {
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    }
    const Band default_band{s.band().umin + lo_all, s.band().umax + hi_all};
    return TruncatedSeries::from_terms(rule.target, W, std::move(out), std::move(cap),
                                       band.value_or(Band::hull(s.band(), default_band)));
}

std::optional<std::string> first_term_label(const TruncatedSeries& s)
{
    if (s.is_zero()) {
        return std::nullopt;
    }
    const auto& [m, c] = *s.terms().begin();
    const auto& [k, coef] = c.terms().front();
    return "u^" + std::to_string(k) + "*" + m.to_string() + " (coefficient " + to_string(coef) + ")";
}

} // namespace htau
