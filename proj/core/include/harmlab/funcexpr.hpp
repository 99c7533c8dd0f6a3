#pragma once

#include <complex>
#include <memory>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "harmlab/errors.hpp"

namespace harmlab {

using complexd = std::complex<double>;

struct Interval {
  double lo{0.0};
  double hi{0.0};
  double width() const { return hi - lo; }
  bool contains(double t) const { return t >= lo && t <= hi; }
  bool empty() const { return hi <= lo; }
};

/// Sorted, pairwise-disjoint closed intervals.
using Support = std::vector<Interval>;

Support merge_support(Support s);
Support support_union(const Support& a, const Support& b);
Support support_intersection(const Support& a, const Support& b);
double support_min(const Support& s);
double support_max(const Support& s);
double support_length(const Support& s);

enum class DomainTag { Line, HalfLine };

/// Immutable expression tree for smooth compactly supported test functions
/// on the line or the positive half line.  Evaluation, analytic derivatives
/// and support bookkeeping are all computed from the tree.
///
/// The only transcendental leaf is the standard bump
///   b_{c,r}(t) = exp(-1/(1-u^2)),  u = (t-c)/r,  |u| < 1,
/// whose derivatives stay in the family exp(-1/(1-u^2)) N(u)/(1-u^2)^k.
class FuncExpr {
 public:
  FuncExpr() = default;  // the zero function on the line

  static FuncExpr zero(DomainTag tag = DomainTag::Line);
  static FuncExpr bump(double center, double radius,
                       DomainTag tag = DomainTag::Line);
  static FuncExpr poly(std::vector<complexd> coeffs, Interval window,
                       DomainTag tag = DomainTag::Line);
  static FuncExpr sum(std::vector<FuncExpr> terms);
  static FuncExpr product(std::vector<FuncExpr> factors);

  FuncExpr scaled(complexd c) const;
  FuncExpr shifted(double s) const;        // t -> f(t-s)
  FuncExpr dilated(double a) const;        // t -> f(a*t), a > 0
  FuncExpr power_weight(double alpha) const;  // t -> t^alpha f(t)
  FuncExpr modulated(double omega) const;  // t -> e^{2 pi i omega t} f(t)
  FuncExpr conjugated() const;
  FuncExpr derivative() const;
  FuncExpr derivative(int order) const;

  complexd eval(double t) const;
  const Support& support() const;
  DomainTag domain() const;
  bool is_zero() const;  // empty support

  /// Largest |omega| over all Modulate nodes; a cheap oscillation hint
  /// for quadrature.
  double max_modulation() const;

  nlohmann::json to_json() const;
  static FuncExpr from_json(const nlohmann::json& j);

  /// Identity of the underlying shared node; stable across copies, usable as
  /// a cache key.
  const void* node_key() const { return node_.get(); }

  friend FuncExpr operator+(const FuncExpr& a, const FuncExpr& b);
  friend FuncExpr operator*(const FuncExpr& a, const FuncExpr& b);

  struct Node;
  explicit FuncExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

 private:
  std::shared_ptr<const Node> node_;
};

/// Finite sums of tensor products f(x,y) = sum_i fx_i(x) * fy_i(y).
class Func2D {
 public:
  struct Term {
    FuncExpr fx;
    FuncExpr fy;
  };

  Func2D() = default;
  explicit Func2D(std::vector<Term> terms);
  static Func2D tensor(FuncExpr fx, FuncExpr fy);

  complexd eval(double x, double y) const;
  Func2D conjugated() const;
  Func2D scaled(complexd c) const;
  Func2D operator+(const Func2D& other) const;

  const std::vector<Term>& terms() const { return terms_; }
  Support support_x() const;
  Support support_y() const;
  bool is_zero() const { return terms_.empty(); }

  nlohmann::json to_json() const;
  static Func2D from_json(const nlohmann::json& j);

 private:
  std::vector<Term> terms_;
};

enum class Measure { HaarHalfLine, LebesgueLine, LebesguePlane };

/// integral f * conj(g) d(mu); conjugate-linear in g.
complexd inner_product(const FuncExpr& f, const FuncExpr& g, Measure mu);
complexd inner_product(const Func2D& f, const Func2D& g);
double norm(const FuncExpr& f, Measure mu);
double norm(const Func2D& f);

}  // namespace harmlab
