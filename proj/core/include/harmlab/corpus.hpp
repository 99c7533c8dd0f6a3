#pragma once

#include <random>

#include "harmlab/axb.hpp"
#include "harmlab/heis.hpp"
#include "harmlab/su2.hpp"

namespace harmlab {

/// Seeded generator for all random test inputs.  Draw order is fixed, so a
/// seed pins the whole corpus.
class Corpus {
 public:
  explicit Corpus(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi);
  complexd unit_disk(double radius);  // |z| <= radius

  /// 1-3 bump leaves, centers in [0.5, 4], radii in [0.2, 1], complex
  /// coefficients with |c| <= 2; HalfLine supports stay inside [0.1, inf).
  FuncExpr random_func(DomainTag tag);
  Func2D random_func2d();  // 1-2 tensor terms

  AxbElement random_axb(double b_range = 2.0);
  HeisElement random_heis(double pq_range = 1.5);
  SU2Element random_su2();

  CoeffSum random_coeff_sum(int max_terms);
  HrElem random_hr(int max_abs_n, int max_terms, bool allow_lambda0);
  TrigPoly random_trig(int max_n, int max_terms);

  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Canonical digests for input pinning.
std::string digest(const FuncExpr& f);
std::string digest(const Func2D& f);
std::string digest(const CoeffSum& u);
std::string digest(const HrElem& u);
std::string digest(const TrigPoly& u);

}  // namespace harmlab
