#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "htau/series.hpp"

namespace htau {

// Differential operators in the variables x_1, x_2, ... of one family:
//
//   Lambda(a)  sum_k k x_{k+a} d/dx_k                   (a <= 1, weight shift a)
//   M(k)       V(k) + Q(k)                              (k >= 0, weight shift k)
//   V(k)       1/2 sum_{i+j-k >= 1} x_i x_j (i+j-k) d/dx_{i+j-k}
//   Q(k)       1/2 sum_{i,j >= 1} x_{i+j+k} i j d^2/dx_i dx_j
//   Partial(n) d/dx_n                                   (weight shift -n)
//   Scalar(c)  multiplication by a Laurent polynomial in u
//
// plus sums and compositions. Compose({a, b, c}) means a(b(c(s))).
class LinearOperator {
public:
    enum class Kind { Lambda, M, MFirst, MSecond, Partial, Scalar, Sum, Compose };

    static LinearOperator lambda(int a);
    static LinearOperator M(int k);
    static LinearOperator M_first(int k);
    static LinearOperator M_second(int k);
    static LinearOperator partial(int n);
    static LinearOperator scalar(const UPoly& c);
    static LinearOperator zero();
    static LinearOperator sum(std::vector<LinearOperator> ops);
    static LinearOperator compose(std::vector<LinearOperator> ops);

    Kind kind() const { return kind_; }
    int param() const { return param_; }
    const UPoly& scalar_value() const { return scalar_; }
    const std::vector<LinearOperator>& children() const { return *children_; }

    // Homogeneous weight shift, or nullopt when the summands disagree.
    std::optional<int> weight_shift() const;
    // Smallest weight shift among the homogeneous pieces.
    int min_weight_shift() const;
    // Sum of |shift| along the deepest composition chain; a probe of weight w
    // truncated at w + span() is acted on without loss.
    int span() const;
    // True if every primitive is meaningful on power-sum variables.
    bool family_agnostic() const;

    std::string name() const;
    nlohmann::json to_json() const;
    static LinearOperator from_json(const nlohmann::json& j);

    friend LinearOperator operator+(const LinearOperator& a, const LinearOperator& b);
    friend LinearOperator operator-(const LinearOperator& a, const LinearOperator& b);
    friend LinearOperator operator*(const UPoly& c, const LinearOperator& a);
    // Composition a after b.
    friend LinearOperator operator*(const LinearOperator& a, const LinearOperator& b);

private:
    LinearOperator(Kind kind, int param) : kind_(kind), param_(param) {}

    Kind kind_;
    int param_ = 0;
    UPoly scalar_;
    std::shared_ptr<const std::vector<LinearOperator>> children_ =
        std::make_shared<const std::vector<LinearOperator>>();
};

// Exact action. The result is exact to weight W + min(0, shift); u-precision
// is carried through. Only Lambda(0), M(0) and its parts, Partial and Scalar
// may act on the p-family.
TruncatedSeries apply(const LinearOperator& op, const TruncatedSeries& s);

// a o b - b o a.
LinearOperator commutator(const LinearOperator& a, const LinearOperator& b);

// exp(t A) as a formal series sum_k t^k A^k / k!.
struct OperatorExponential {
    LinearOperator base;
    UPoly scalar = UPoly(1);
    // Divergence guard. The sum normally stops once further terms cannot
    // change the result at the series' precision; reaching the guard is an
    // error, except for bases that lower weight, where an explicit cap is
    // required and the sum is cut after that many terms.
    std::optional<int> order_cap;
};

TruncatedSeries exponential_apply(const OperatorExponential& e, const TruncatedSeries& s);

// exp(-X) a exp(X) with X = t A, built as sum_k (1/k!) [..[a, X], .., X] and
// stopped at the first iterated commutator that vanishes on every monomial of
// weight <= probe_weight. Throws std::domain_error past depth_cap.
LinearOperator conjugate(const OperatorExponential& e, const LinearOperator& a, int depth_cap = 6,
                         int probe_weight = 8);

// First-order part V(k) of M(k): the part that is linear in the sense of
// acting as a derivation, which is what the ad-formula for n d/dq_n needs.
LinearOperator linear_part(const LinearOperator& a);

// Compares the actions of a and b on every monomial of weight <= W. Returns
// nullopt when they agree, else a description of the first disagreement.
std::optional<std::string> extensional_difference(const LinearOperator& a, const LinearOperator& b,
                                                  int W, Family family = Family::q);

} // namespace htau
