#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace ifs {

// Neumaier compensated summation. Sequential by construction; callers that
// need permutation invariance sort the terms first.
class NeumaierSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Sums a multiset of terms independently of their order: canonicalize by
// sorting ascending, then compensated-sum.
inline double sum_order_independent(std::vector<double> terms) {
  std::sort(terms.begin(), terms.end());
  NeumaierSum s;
  for (double t : terms) s.add(t);
  return s.value();
}

// A value with a certified additive error radius: the enclosure
// [value - radius, value + radius]. Radii combine by worst case; quotients
// use interval endpoint analysis. A non-finite enclosure models a series
// whose sum is infinite (or undetermined), with `sign` recording which
// direction it diverged.
struct Enclosure {
  double value = 0.0;
  double radius = 0.0;
  bool finite = true;
  int sign = 0;  // for non-finite: +1 diverged to +inf, -1 to -inf

  double lo() const { return value - radius; }
  double hi() const { return value + radius; }

  static Enclosure exact(double v) { return Enclosure{v, 0.0, true, 0}; }
  static Enclosure infinite(int sign) {
    return Enclosure{sign > 0 ? std::numeric_limits<double>::infinity()
                              : -std::numeric_limits<double>::infinity(),
                     std::numeric_limits<double>::infinity(), false, sign};
  }
};

// Quotient of two enclosures whose denominator is strictly negative
// (hi(b) < 0). Result encloses a/b.
inline Enclosure divide_negative_denominator(const Enclosure& a, const Enclosure& b) {
  double candidates[4] = {a.lo() / b.lo(), a.lo() / b.hi(), a.hi() / b.lo(), a.hi() / b.hi()};
  double lo = *std::min_element(candidates, candidates + 4);
  double hi = *std::max_element(candidates, candidates + 4);
  Enclosure q;
  q.value = 0.5 * (lo + hi);
  q.radius = 0.5 * (hi - lo);
  return q;
}

}  // namespace ifs
