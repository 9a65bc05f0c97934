#include "htau/intersections.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>

#include "htau/gjv.hpp"
#include "htau/o_operators.hpp"

namespace htau {

std::optional<int> genus_of(int j, const std::vector<int>& degrees)
{
    const int n = static_cast<int>(degrees.size());
    const int four_g = 2 * j + std::accumulate(degrees.begin(), degrees.end(), 0) + 3 - n;
    if (four_g < 0 || four_g % 4 != 0) {
        return std::nullopt;
    }
    return four_g / 4;
}

IntersectionNumber::IntersectionNumber(int j, std::vector<int> degrees, Coefficient value)
    : j_(j), degrees_(std::move(degrees)), value_(std::move(value))
{
    if (j_ < 0 || degrees_.empty()) {
        throw std::invalid_argument("intersection number needs j >= 0 and n >= 1");
    }
    std::sort(degrees_.begin(), degrees_.end());
    if (degrees_.front() < 0) {
        throw std::invalid_argument("negative tau degree");
    }
    auto g = genus_of(j_, degrees_);
    if (!g) {
        throw std::invalid_argument("dimension constraint has no integral genus for " + label());
    }
    g_ = *g;
}

int IntersectionNumber::tweight() const
{
    return std::accumulate(degrees_.begin(), degrees_.end(), n());
}

std::string IntersectionNumber::label() const
{
    std::string s = "<";
    if (j_ > 0) {
        s += "lambda" + std::to_string(2 * j_) + " ";
    }
    for (std::size_t i = 0; i < degrees_.size(); ++i) {
        s += (i ? " tau" : "tau") + std::to_string(degrees_[i]);
    }
    return s + ">";
}

nlohmann::json IntersectionNumber::to_json() const
{
    return {{"j", j_}, {"degrees", degrees_}, {"g", g_}, {"value", to_string(value_)}};
}

bool operator<(const IntersectionNumber& a, const IntersectionNumber& b)
{
    return std::tie(a.g_, a.j_, a.degrees_) < std::tie(b.g_, b.j_, b.degrees_);
}

TExpansion tbasis_expansion(const TruncatedSeries& G)
{
    const int W = G.W();
    TExpansion ex{W, {}, std::vector<int>(static_cast<std::size_t>(std::max(W + 1, 0)))};
    for (int w = 0; w <= W; ++w) {
        ex.window[static_cast<std::size_t>(w)] = std::min(G.ucap(w), W + 1 - w);
    }
    if (W < 1) {
        return ex;
    }
    const auto T = build_tbasis(W - 1, W);
    const Band wide{G.band().umin - 2 * W - 4, G.band().umax + 2 * W + 4};
    TruncatedSeries R = G.with_band(wide);
    while (true) {
        std::optional<std::pair<Monomial, int>> pick;
        for (auto it = R.terms().rbegin(); it != R.terms().rend() && !pick; ++it) {
            const int w = it->first.weight();
            for (const auto& [e, c] : it->second.terms()) {
                if (e <= ex.window[static_cast<std::size_t>(w)]) {
                    pick.emplace(it->first, e);
                    break;
                }
            }
        }
        if (!pick) {
            break;
        }
        const auto& [m, e] = *pick;
        const Coefficient c = R.coefficient_of(m).coefficient(e);
        Coefficient lead = 1;
        Coefficient auts = 1;
        TruncatedSeries prod = TruncatedSeries::constant(Family::q, W, UPoly::monomial(e)).with_band(wide);
        for (const auto& [i, k] : m.pairs()) {
            for (int r = 0; r < k; ++r) {
                prod = prod * T[static_cast<std::size_t>(i - 1)].with_band(wide);
                lead *= factorial(i - 1);
            }
            auts *= factorial(k);
        }
        R -= prod.scaled(c / lead);
        // coefficient of u^e prod T^a / a! is c * prod a! / lead
        ex.terms.push_back({e, m, c * auts / lead});
    }
    return ex;
}

namespace {

std::vector<int> degrees_of(const Monomial& m)
{
    std::vector<int> d;
    for (const auto& [i, k] : m.pairs()) {
        d.insert(d.end(), static_cast<std::size_t>(k), i - 1);
    }
    return d;
}

} // namespace

std::vector<IntersectionNumber> extract_intersections_tbasis(const TruncatedSeries& G, int K)
{
    const TExpansion ex = tbasis_expansion(G);
    std::vector<IntersectionNumber> out;
    for (const auto& t : ex.terms) {
        if (t.e % 2 == 0) {
            throw std::runtime_error("even u-power u^" + std::to_string(t.e) + " at " + t.tmono.to_string() +
                                     " in the T-expansion of G");
        }
        const int j = (t.e - 1) / 2;
        const auto degs = degrees_of(t.tmono);
        if (!genus_of(j, degs)) {
            throw std::runtime_error("T-expansion term u^" + std::to_string(t.e) + " " + t.tmono.to_string() +
                                     " violates the dimension constraint");
        }
        if (*std::max_element(degs.begin(), degs.end()) > K) {
            continue;
        }
        out.emplace_back(j, degs, j % 2 == 0 ? t.coef : -t.coef);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool tbasis_reaches(const TExpansion& ex, int j, const std::vector<int>& degrees)
{
    const int w = std::accumulate(degrees.begin(), degrees.end(), static_cast<int>(degrees.size()));
    return w <= ex.W && 2 * j + 1 <= ex.window[static_cast<std::size_t>(w)];
}

HurwitzSource cutjoin_source(int dmax, int mmax)
{
    auto series = std::make_shared<TruncatedSeries>(cutjoin_series(dmax, mmax));
    return [series](const HurwitzIndex& idx) { return extract_hurwitz(*series, idx).h; };
}

HurwitzSource bruteforce_source(int dcap)
{
    return [dcap](const HurwitzIndex& idx) { return hurwitz_bruteforce(idx, dcap).h; };
}

namespace {

void compositions(int total, int parts, int minpart, std::vector<int>& cur, std::vector<std::vector<int>>& out)
{
    if (parts == 0) {
        if (total == 0) {
            out.push_back(cur);
        }
        return;
    }
    for (int v = minpart; v <= total - minpart * (parts - 1); ++v) {
        cur.push_back(v);
        compositions(total - v, parts - 1, minpart, cur, out);
        cur.pop_back();
    }
}

struct Unknown {
    int j;
    std::vector<int> degrees; // ordered
};

} // namespace

std::vector<IntersectionNumber> extract_intersections_polyfit(int g, int n, const HurwitzSource& h, int dgrid)
{
    if (g < 0 || n < 1 || 2 * g - 1 + n < 0) {
        throw std::invalid_argument("polyfit needs g >= 0, n >= 1, 2g - 1 + n >= 0");
    }
    const int dim = 4 * g - 3 + n;
    std::vector<Unknown> unknowns;
    for (int j = 0; j <= g; ++j) {
        const int deg = dim - 2 * j;
        if (deg < 0) {
            continue;
        }
        std::vector<std::vector<int>> tuples;
        std::vector<int> cur;
        compositions(deg, n, 0, cur, tuples);
        for (auto& t : tuples) {
            unknowns.push_back({j, std::move(t)});
        }
    }
    const std::size_t N = unknowns.size();
    if (N == 0) {
        return {};
    }
    // Rows: one per ordered b-tuple.
    std::vector<std::vector<Coefficient>> rows;
    const int m = 2 * g - 1 + n;
    for (int d = n; d <= dgrid; ++d) {
        std::vector<std::vector<int>> bs;
        std::vector<int> cur;
        compositions(d, n, 1, cur, bs);
        for (const auto& b : bs) {
            std::vector<Coefficient> row(N + 1);
            for (std::size_t u = 0; u < N; ++u) {
                mpz_class mono = 1;
                for (int i = 0; i < n; ++i) {
                    mpz_class p;
                    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(b[static_cast<std::size_t>(i)]),
                                  static_cast<unsigned long>(unknowns[u].degrees[static_cast<std::size_t>(i)]));
                    mono *= p;
                }
                row[u] = Coefficient(mono);
                if (unknowns[u].j % 2 == 1) {
                    row[u] = -row[u];
                }
            }
            row[N] = h(HurwitzIndex(g, b)) / (Coefficient(d) * factorial(m));
            rows.push_back(std::move(row));
        }
    }
    // Exact Gauss-Jordan elimination.
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t col = 0; col < N && r < rows.size(); ++col) {
        std::size_t p = r;
        while (p < rows.size() && rows[p][col] == 0) {
            ++p;
        }
        if (p == rows.size()) {
            continue;
        }
        std::swap(rows[p], rows[r]);
        const Coefficient inv = 1 / rows[r][col];
        for (auto& x : rows[r]) {
            x *= inv;
        }
        for (std::size_t q = 0; q < rows.size(); ++q) {
            if (q == r || rows[q][col] == 0) {
                continue;
            }
            const Coefficient f = rows[q][col];
            for (std::size_t k = col; k <= N; ++k) {
                rows[q][k] -= f * rows[r][k];
            }
        }
        pivots.push_back(col);
        ++r;
    }
    for (std::size_t q = r; q < rows.size(); ++q) {
        if (rows[q][N] != 0) {
            throw std::runtime_error("inconsistent GJV system for g=" + std::to_string(g) + ", n=" +
                                     std::to_string(n));
        }
    }
    if (pivots.size() < N) {
        throw UnderdeterminedSystem("grid d <= " + std::to_string(dgrid) + " cannot determine g=" +
                                    std::to_string(g) + ", n=" + std::to_string(n));
    }
    std::map<std::pair<int, std::vector<int>>, Coefficient> solved;
    for (std::size_t k = 0; k < N; ++k) {
        const Coefficient& v = rows[k][N];
        auto key = std::make_pair(unknowns[pivots[k]].j, unknowns[pivots[k]].degrees);
        std::sort(key.second.begin(), key.second.end());
        auto [it, inserted] = solved.try_emplace(key, v);
        if (!inserted && it->second != v) {
            throw std::runtime_error("asymmetric GJV solution at j=" + std::to_string(key.first));
        }
    }
    std::vector<IntersectionNumber> out;
    for (const auto& [key, v] : solved) {
        out.emplace_back(key.first, key.second, v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

TruncatedSeries extract_F(const TruncatedSeries& G)
{
    return u_layer(G, 1);
}

TruncatedSeries F_from_intersections(const std::vector<IntersectionNumber>& recs, int W)
{
    TruncatedSeries F(Family::q, W);
    for (const auto& r : recs) {
        if (r.j() != 0 || r.tweight() > W) {
            continue;
        }
        std::map<int, int> mult;
        for (int d : r.degrees()) {
            ++mult[d];
        }
        Coefficient c = r.value();
        std::vector<Monomial::Pair> pairs;
        for (const auto& [d, k] : mult) {
            for (int i = 0; i < k; ++i) {
                c *= factorial(d);
            }
            c /= factorial(k);
            pairs.emplace_back(d + 1, k);
        }
        F += TruncatedSeries::monomial(Monomial::from_pairs(Family::q, pairs), W, UPoly(c));
    }
    return F;
}

CheckReport verify_string(const TruncatedSeries& F)
{
    const int W = F.W();
    const TruncatedSeries q1 = TruncatedSeries::variable(Family::q, W, 1);
    const TruncatedSeries rhs = apply(LinearOperator::lambda(1), F) + (q1 * q1).scaled(Coefficient(1, 2));
    return compare_series("string", W, partial(1, F), rhs, W - 1);
}

CheckReport verify_lambda1(const TruncatedSeries& F)
{
    const int W = F.W();
    const TruncatedSeries q1 = TruncatedSeries::variable(Family::q, W, 1);
    const TruncatedSeries q2 = TruncatedSeries::variable(Family::q, W, 2);
    const LinearOperator L1 = LinearOperator::lambda(1);
    const TruncatedSeries lhs = apply(L1, apply(L1, F)) + q1 + q1 * q2;
    return compare_series("lambda1", W, lhs, exp_M2_q1_power(1, W));
}

CheckReport verify_second_derivative(const TruncatedSeries& F)
{
    const int W = F.W();
    return compare_series("d2F/dq1^2", W, partial(1, partial(1, F)), exp_M2_q1_power(1, W), W - 2);
}

CheckReport verify_proposition(int n, int W)
{
    if (n < 1) {
        throw std::invalid_argument("verify_proposition needs n >= 1");
    }
    const TruncatedSeries E = exp_M2_q1_power(1, W);
    const TruncatedSeries lhs = partial(n, E).scaled(Coefficient(n));
    const TruncatedSeries rhs = apply(LinearOperator::lambda(2 - n), E) + exp_M2_q1_power(n - 1, W);
    return compare_series("dqn_identity(n=" + std::to_string(n) + ")", W, lhs, rhs);
}

} // namespace htau
