#include "htau/operators.hpp"

#include <algorithm>
#include <numeric>

#include "htau/series_json.hpp"

namespace htau {

namespace {

using Emit = std::vector<std::pair<Monomial, Coefficient>>;

Monomial bump(Family f, std::vector<int> exps, std::initializer_list<std::pair<int, int>> deltas)
{
    for (const auto& [i, d] : deltas) {
        if (static_cast<std::size_t>(i) >= exps.size()) {
            exps.resize(static_cast<std::size_t>(i) + 1, 0);
        }
        exps[static_cast<std::size_t>(i)] += d;
    }
    return Monomial::from_exponents(f, exps);
}

void stream_lambda(int a, const Monomial& m, Emit& out)
{
    const auto exps = m.exponents();
    for (const auto& [k, e] : m.pairs()) {
        if (k + a < 1) {
            continue;
        }
        if (a == 0) {
            out.emplace_back(m, Coefficient(k * e));
        } else {
            out.emplace_back(bump(m.family(), exps, {{k, -1}, {k + a, 1}}), Coefficient(k * e));
        }
    }
}

// V(k): each x_s is replaced by sum over i + j = s + k of x_i x_j, with weight
// s * e_s per ordered pair, so s * e_s per unordered pair i < j and half that
// on the diagonal.
void stream_first(int k, const Monomial& m, Emit& out)
{
    const auto exps = m.exponents();
    for (const auto& [s, e] : m.pairs()) {
        const int t = s + k;
        for (int i = 1; 2 * i <= t; ++i) {
            const int j = t - i;
            Coefficient c(s * e);
            if (i == j) {
                c /= 2;
            }
            out.emplace_back(bump(m.family(), exps, {{s, -1}, {i, 1}, {j, 1}}), c);
        }
    }
}

// Q(k): two derivatives d/dx_i d/dx_j merge into x_{i+j+k}.
void stream_second(int k, const Monomial& m, Emit& out)
{
    const auto exps = m.exponents();
    const auto& pr = m.pairs();
    for (std::size_t a = 0; a < pr.size(); ++a) {
        const auto [i, ei] = pr[a];
        if (ei >= 2) {
            Coefficient c(i * i * ei * (ei - 1));
            c /= 2;
            out.emplace_back(bump(m.family(), exps, {{i, -2}, {2 * i + k, 1}}), c);
        }
        for (std::size_t b = a + 1; b < pr.size(); ++b) {
            const auto [j, ej] = pr[b];
            out.emplace_back(bump(m.family(), exps, {{i, -1}, {j, -1}, {i + j + k, 1}}),
                             Coefficient(i * j * ei * ej));
        }
    }
}

void stream_partial(int n, const Monomial& m, Emit& out)
{
    const int e = m.exponent(n);
    if (e > 0) {
        out.emplace_back(bump(m.family(), m.exponents(), {{n, -1}}), Coefficient(e));
    }
}

TruncatedSeries apply_primitive(const LinearOperator& op, const TruncatedSeries& s)
{
    const int delta = *op.weight_shift();
    const int W = std::max(s.W() + std::min(delta, 0), -1);
    TruncatedSeries::TermMap acc;
    Emit emitted;
    for (const auto& [m, c] : s.terms()) {
        if (m.weight() + delta > W) {
            continue;
        }
        emitted.clear();
        switch (op.kind()) {
        case LinearOperator::Kind::Lambda:
            stream_lambda(op.param(), m, emitted);
            break;
        case LinearOperator::Kind::M:
            stream_first(op.param(), m, emitted);
            stream_second(op.param(), m, emitted);
            break;
        case LinearOperator::Kind::MFirst:
            stream_first(op.param(), m, emitted);
            break;
        case LinearOperator::Kind::MSecond:
            stream_second(op.param(), m, emitted);
            break;
        case LinearOperator::Kind::Partial:
            stream_partial(op.param(), m, emitted);
            break;
        default:
            throw std::logic_error("not a primitive operator");
        }
        for (auto& [mm, k] : emitted) {
            UPoly term = c * k;
            auto [it, inserted] = acc.try_emplace(std::move(mm), term);
            if (!inserted) {
                it->second += term;
            }
        }
    }
    for (auto it = acc.begin(); it != acc.end();) {
        it = it->second.is_zero() ? acc.erase(it) : std::next(it);
    }
    std::vector<int> cap(static_cast<std::size_t>(W + 1), kExactCap);
    for (int w = 0; w <= W; ++w) {
        const int src = w - delta;
        if (src >= 0 && src <= s.W()) {
            cap[static_cast<std::size_t>(w)] = s.ucap(src);
        }
    }
    return TruncatedSeries::from_terms(s.family(), W, std::move(acc), std::move(cap), s.band());
}

} // namespace

LinearOperator LinearOperator::lambda(int a)
{
    if (a > 1) {
        throw std::invalid_argument("Lambda(a) is defined for a <= 1");
    }
    return LinearOperator(Kind::Lambda, a);
}

LinearOperator LinearOperator::M(int k)
{
    if (k < 0) {
        throw std::invalid_argument("M(k) needs k >= 0");
    }
    return LinearOperator(Kind::M, k);
}

LinearOperator LinearOperator::M_first(int k)
{
    if (k < 0) {
        throw std::invalid_argument("M(k) needs k >= 0");
    }
    return LinearOperator(Kind::MFirst, k);
}

LinearOperator LinearOperator::M_second(int k)
{
    if (k < 0) {
        throw std::invalid_argument("M(k) needs k >= 0");
    }
    return LinearOperator(Kind::MSecond, k);
}

LinearOperator LinearOperator::partial(int n)
{
    if (n < 1) {
        throw std::invalid_argument("partial derivative index must be >= 1");
    }
    return LinearOperator(Kind::Partial, n);
}

LinearOperator LinearOperator::scalar(const UPoly& c)
{
    LinearOperator op(Kind::Scalar, 0);
    op.scalar_ = c;
    return op;
}

LinearOperator LinearOperator::zero()
{
    return sum({});
}

LinearOperator LinearOperator::sum(std::vector<LinearOperator> ops)
{
    LinearOperator op(Kind::Sum, 0);
    op.children_ = std::make_shared<const std::vector<LinearOperator>>(std::move(ops));
    return op;
}

LinearOperator LinearOperator::compose(std::vector<LinearOperator> ops)
{
    if (ops.empty()) {
        return scalar(UPoly(1));
    }
    if (ops.size() == 1) {
        return ops.front();
    }
    LinearOperator op(Kind::Compose, 0);
    op.children_ = std::make_shared<const std::vector<LinearOperator>>(std::move(ops));
    return op;
}

std::optional<int> LinearOperator::weight_shift() const
{
    switch (kind_) {
    case Kind::Lambda:
    case Kind::M:
    case Kind::MFirst:
    case Kind::MSecond:
        return param_;
    case Kind::Partial:
        return -param_;
    case Kind::Scalar:
        return 0;
    case Kind::Sum: {
        std::optional<int> shift;
        for (const auto& c : children()) {
            auto s = c.weight_shift();
            if (!s || (shift && *shift != *s)) {
                return std::nullopt;
            }
            shift = s;
        }
        return shift.value_or(0);
    }
    case Kind::Compose: {
        int total = 0;
        for (const auto& c : children()) {
            auto s = c.weight_shift();
            if (!s) {
                return std::nullopt;
            }
            total += *s;
        }
        return total;
    }
    }
    return std::nullopt;
}

int LinearOperator::min_weight_shift() const
{
    switch (kind_) {
    case Kind::Sum: {
        int lo = 0;
        bool any = false;
        for (const auto& c : children()) {
            lo = any ? std::min(lo, c.min_weight_shift()) : c.min_weight_shift();
            any = true;
        }
        return lo;
    }
    case Kind::Compose: {
        int total = 0;
        for (const auto& c : children()) {
            total += c.min_weight_shift();
        }
        return total;
    }
    default:
        return *weight_shift();
    }
}

int LinearOperator::span() const
{
    switch (kind_) {
    case Kind::Sum: {
        int hi = 0;
        for (const auto& c : children()) {
            hi = std::max(hi, c.span());
        }
        return hi;
    }
    case Kind::Compose: {
        int total = 0;
        for (const auto& c : children()) {
            total += c.span();
        }
        return total;
    }
    default:
        return std::abs(*weight_shift());
    }
}

bool LinearOperator::family_agnostic() const
{
    switch (kind_) {
    case Kind::Lambda:
        return param_ == 0;
    case Kind::M:
    case Kind::MFirst:
    case Kind::MSecond:
        return param_ == 0;
    case Kind::Partial:
    case Kind::Scalar:
        return true;
    case Kind::Sum:
    case Kind::Compose:
        return std::all_of(children().begin(), children().end(),
                           [](const LinearOperator& c) { return c.family_agnostic(); });
    }
    return false;
}

std::string LinearOperator::name() const
{
    auto join = [this](const char* sep) {
        std::string out;
        for (const auto& c : children()) {
            if (!out.empty()) {
                out += sep;
            }
            out += c.kind() == Kind::Sum ? "(" + c.name() + ")" : c.name();
        }
        return out;
    };
    switch (kind_) {
    case Kind::Lambda:
        return "Lambda(" + std::to_string(param_) + ")";
    case Kind::M:
        return "M" + std::to_string(param_);
    case Kind::MFirst:
        return "M" + std::to_string(param_) + "lin";
    case Kind::MSecond:
        return "M" + std::to_string(param_) + "second";
    case Kind::Partial:
        return "d/dx" + std::to_string(param_);
    case Kind::Scalar:
        return "(" + scalar_.to_string() + ")";
    case Kind::Sum:
        return children().empty() ? "0" : join(" + ");
    case Kind::Compose:
        return join("*");
    }
    return "?";
}

nlohmann::json LinearOperator::to_json() const
{
    auto kids = [this] {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& c : children()) {
            arr.push_back(c.to_json());
        }
        return arr;
    };
    switch (kind_) {
    case Kind::Lambda:
        return {{"kind", "Lambda"}, {"a", param_}};
    case Kind::M:
        if (param_ <= 2) {
            return {{"kind", "M" + std::to_string(param_)}};
        }
        return {{"kind", "M"}, {"k", param_}};
    case Kind::MFirst:
        return {{"kind", "Mlin"}, {"k", param_}};
    case Kind::MSecond:
        return {{"kind", "Msecond"}, {"k", param_}};
    case Kind::Partial:
        return {{"kind", "Partial"}, {"n", param_}};
    case Kind::Scalar:
        return {{"kind", "Scalar"}, {"c", htau::to_json(scalar_)}};
    case Kind::Sum:
        return {{"kind", "Sum"}, {"ops", kids()}};
    case Kind::Compose:
        return {{"kind", "Compose"}, {"ops", kids()}};
    }
    return nullptr;
}

LinearOperator LinearOperator::from_json(const nlohmann::json& j)
{
    try {
        const std::string kind = j.at("kind").get<std::string>();
        auto kids = [&j] {
            std::vector<LinearOperator> ops;
            for (const auto& c : j.at("ops")) {
                ops.push_back(from_json(c));
            }
            return ops;
        };
        if (kind == "Lambda") {
            return lambda(j.at("a").get<int>());
        }
        if (kind == "M0" || kind == "M1" || kind == "M2") {
            return M(kind[1] - '0');
        }
        if (kind == "M") {
            return M(j.at("k").get<int>());
        }
        if (kind == "Mlin") {
            return M_first(j.at("k").get<int>());
        }
        if (kind == "Msecond") {
            return M_second(j.at("k").get<int>());
        }
        if (kind == "Partial") {
            return partial(j.at("n").get<int>());
        }
        if (kind == "Scalar") {
            return scalar(upoly_from_json(j.at("c")));
        }
        if (kind == "Sum") {
            return sum(kids());
        }
        if (kind == "Compose") {
            return compose(kids());
        }
        throw std::invalid_argument("unknown operator kind: " + kind);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed operator JSON: ") + e.what());
    }
}

LinearOperator operator+(const LinearOperator& a, const LinearOperator& b)
{
    return LinearOperator::sum({a, b});
}

LinearOperator operator-(const LinearOperator& a, const LinearOperator& b)
{
    return LinearOperator::sum({a, LinearOperator::compose({LinearOperator::scalar(UPoly(-1)), b})});
}

LinearOperator operator*(const UPoly& c, const LinearOperator& a)
{
    return LinearOperator::compose({LinearOperator::scalar(c), a});
}

LinearOperator operator*(const LinearOperator& a, const LinearOperator& b)
{
    return LinearOperator::compose({a, b});
}

TruncatedSeries apply(const LinearOperator& op, const TruncatedSeries& s)
{
    if (s.family() != Family::q && !op.family_agnostic()) {
        throw std::invalid_argument("operator " + op.name() + " acts on q-variables only");
    }
    switch (op.kind()) {
    case LinearOperator::Kind::Scalar:
        return s.scaled(op.scalar_value());
    case LinearOperator::Kind::Sum: {
        if (op.children().empty()) {
            return TruncatedSeries(s.family(), s.W(), s.band());
        }
        TruncatedSeries acc = apply(op.children().front(), s);
        for (std::size_t i = 1; i < op.children().size(); ++i) {
            acc += apply(op.children()[i], s);
        }
        return acc;
    }
    case LinearOperator::Kind::Compose: {
        TruncatedSeries acc = s;
        for (auto it = op.children().rbegin(); it != op.children().rend(); ++it) {
            acc = apply(*it, acc);
        }
        return acc;
    }
    default:
        return apply_primitive(op, s);
    }
}

LinearOperator commutator(const LinearOperator& a, const LinearOperator& b)
{
    return a * b - b * a;
}

TruncatedSeries exponential_apply(const OperatorExponential& e, const TruncatedSeries& s)
{
    const bool lowers = e.base.min_weight_shift() < 0;
    if (lowers && !e.order_cap) {
        throw std::domain_error("exponential of a weight-lowering operator needs an explicit order cap");
    }
    const int guard = e.order_cap.value_or(4 * (std::max(s.W(), 0) + 2) + 16);
    // Terms beyond the known u-range are transiently allowed outside the band;
    // only what survives into the result is checked against it.
    const Band wide{s.band().umin - 4 * (guard + 2), s.band().umax + 4 * (guard + 2)};
    TruncatedSeries result = s.with_band(wide);
    TruncatedSeries term = result;
    for (int k = 1;; ++k) {
        if (k > guard) {
            if (lowers) {
                break;
            }
            throw std::domain_error("operator exponential did not terminate within " +
                                    std::to_string(guard) + " terms; set a u-precision on the input");
        }
        TruncatedSeries next = apply(e.base, term).scaled(e.scalar).scaled(Coefficient(1, k));
        // Anything beyond the precision already lost in the running sum is noise.
        std::vector<int> clip(result.ucap().begin(), result.ucap().begin() + (next.W() + 1));
        next = next.with_ucap(std::move(clip));
        bool settled = term.is_zero() && next.is_zero() && next.W() == term.W();
        for (int w = 0; settled && w <= next.W(); ++w) {
            settled = next.ucap(w) >= term.ucap(w);
        }
        if (settled) {
            break;
        }
        result += next;
        term = std::move(next);
    }
    return result.with_band(s.band());
}

LinearOperator conjugate(const OperatorExponential& e, const LinearOperator& a, int depth_cap, int probe_weight)
{
    const LinearOperator X = e.scalar * e.base;
    std::vector<LinearOperator> terms{a};
    LinearOperator current = a;
    for (int k = 1; k <= depth_cap; ++k) {
        current = UPoly(Coefficient(1, k)) * commutator(current, X);
        if (!extensional_difference(current, LinearOperator::zero(), probe_weight)) {
            return LinearOperator::sum(std::move(terms));
        }
        terms.push_back(current);
    }
    throw std::domain_error("commutator chain did not vanish within depth " + std::to_string(depth_cap));
}

LinearOperator linear_part(const LinearOperator& a)
{
    if (a.kind() == LinearOperator::Kind::M || a.kind() == LinearOperator::Kind::MFirst) {
        return LinearOperator::M_first(a.param());
    }
    throw std::invalid_argument("linear part is defined for M(k) only, not " + a.name());
}

std::optional<std::string> extensional_difference(const LinearOperator& a, const LinearOperator& b, int W,
                                                  Family family)
{
    const int span = std::max(a.span(), b.span());
    const Band wide{-4 * (W + span + 8), 4 * (W + span + 8)};
    for (const auto& m : monomials_up_to(family, W)) {
        const TruncatedSeries probe =
            TruncatedSeries::monomial(m, m.weight() + span).with_band(wide);
        const TruncatedSeries diff = apply(a, probe) - apply(b, probe);
        if (auto label = first_term_label(diff)) {
            return "on " + m.to_string() + ": " + *label;
        }
    }
    return std::nullopt;
}

} // namespace htau
