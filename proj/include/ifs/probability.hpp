#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ifs/errors.hpp"
#include "ifs/numerics.hpp"

namespace ifs {

using Symbol = std::uint32_t;  // map indices are 1-based

// A probability vector over the index set {1, 2, ...}, either an explicit
// finite list or a parametric law with closed-form tail control. Immutable
// after construction (cumulative sums are precomputed), so instances can be
// shared read-only across threads.
//
// Sampling uses the inverse-CDF rule: sample(u) is the smallest index i with
// cum_i >= u. Parametric laws may supply a closed-form quantile; it is used
// as a starting guess and then fixed up against the cached cumulative sums,
// so both paths select the identical index for every u.
class ProbabilityVector {
 public:
  static ProbabilityVector finite(std::vector<double> entries);

  // p_i = (1 - ratio) * ratio^(i-1) for i >= 1, ratio in (0,1).
  static ProbabilityVector geometric(double ratio);

  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_parametric() const { return kind_ == Kind::Geometric; }

  // Number of entries for finite vectors; for parametric laws, the largest
  // index the sampler can ever return (the cumulative sum rounds to >= 1
  // beyond it).
  std::size_t index_limit() const { return cum_.size(); }

  double p(Symbol i) const;  // 1-based

  // sum_{i>n} p_i. Closed form for parametric laws; 0 beyond a finite vector.
  double tail_mass(std::uint32_t n) const;

  // sum_{i>n} i * p_i. Parametric laws only (used for series tail bounds).
  double tail_first_moment(std::uint32_t n) const;

  // Smallest i with cum_i >= u, for u in [0,1).
  Symbol sample(double u) const;

  // |sum_{i<=n} p_i + tail_mass(n) - 1|, the normalization defect probed at n.
  double normalization_defect(std::uint32_t n) const;

  // Geometric ratio (parametric only).
  double ratio() const { return ratio_; }

 private:
  enum class Kind { Finite, Geometric };
  Kind kind_ = Kind::Finite;
  std::vector<double> entries_;  // finite only
  std::vector<double> cum_;      // cumulative sums, both kinds
  double ratio_ = 0.0;           // geometric only

  ProbabilityVector() = default;
};

inline ProbabilityVector ProbabilityVector::finite(std::vector<double> entries) {
  if (entries.empty()) throw InvalidArgument("probability vector: empty");
  ProbabilityVector pv;
  pv.kind_ = Kind::Finite;
  pv.entries_ = std::move(entries);
  pv.cum_.reserve(pv.entries_.size());
  double c = 0.0;
  for (double x : pv.entries_) {
    if (!(x > 0.0)) throw InvalidArgument("probability vector: entries must be > 0");
    c += x;
    pv.cum_.push_back(c);
  }
  return pv;
}

inline ProbabilityVector ProbabilityVector::geometric(double ratio) {
  if (!(ratio > 0.0 && ratio < 1.0))
    throw InvalidArgument("geometric probability vector: ratio must be in (0,1)");
  ProbabilityVector pv;
  pv.kind_ = Kind::Geometric;
  pv.ratio_ = ratio;
  // Extend the cumulative cache until it rounds to >= 1, so sampling never
  // has to grow it. Uniform variates carry 53 bits, so this terminates at
  // roughly 53*ln 2 / -ln(ratio) entries; cap defensively.
  double c = 0.0;
  double term = 1.0 - ratio;  // p_1
  const std::size_t cap = 1u << 20;
  while (pv.cum_.size() < cap) {
    c += term;
    pv.cum_.push_back(c);
    if (c >= 1.0) break;
    term *= ratio;
    if (term == 0.0) break;
  }
  if (pv.cum_.back() < 1.0) pv.cum_.back() = 1.0;  // absorb rounding shortfall
  return pv;
}

inline double ProbabilityVector::p(Symbol i) const {
  if (i < 1) throw DomainError("probability index is 1-based");
  if (kind_ == Kind::Finite) {
    if (i > entries_.size()) throw DomainError("probability index out of range");
    return entries_[i - 1];
  }
  // (1-q) q^(i-1) by repeated multiplication, matching the cumulative cache.
  double t = 1.0 - ratio_;
  for (Symbol k = 1; k < i; ++k) t *= ratio_;
  return t;
}

inline double ProbabilityVector::tail_mass(std::uint32_t n) const {
  if (kind_ == Kind::Finite) {
    if (n >= entries_.size()) return 0.0;
    NeumaierSum s;
    for (std::size_t k = n; k < entries_.size(); ++k) s.add(entries_[k]);
    return s.value();
  }
  // sum_{i>n} (1-q) q^(i-1) = q^n
  return std::pow(ratio_, static_cast<double>(n));
}

inline double ProbabilityVector::tail_first_moment(std::uint32_t n) const {
  if (kind_ == Kind::Finite) throw DomainError("tail_first_moment: parametric laws only");
  // sum_{i>n} i (1-q) q^(i-1) = (n+1) q^n + q^(n+1) / (1-q)
  double qn = std::pow(ratio_, static_cast<double>(n));
  return (n + 1.0) * qn + qn * ratio_ / (1.0 - ratio_);
}

inline Symbol ProbabilityVector::sample(double u) const {
  if (!(u >= 0.0 && u < 1.0)) throw DomainError("sample: u must be in [0,1)");
  std::size_t idx;
  if (kind_ == Kind::Geometric) {
    // Closed-form quantile guess, then fix up against the cached sums so the
    // result always obeys the inverse-CDF rule exactly.
    double guess = std::ceil(std::log1p(-u) / std::log(ratio_));
    idx = guess < 1.0 ? 0 : static_cast<std::size_t>(guess) - 1;
    if (idx >= cum_.size()) idx = cum_.size() - 1;
    while (idx > 0 && cum_[idx - 1] >= u) --idx;
    while (cum_[idx] < u && idx + 1 < cum_.size()) ++idx;
  } else {
    idx = static_cast<std::size_t>(
        std::lower_bound(cum_.begin(), cum_.end(), u) - cum_.begin());
    if (idx >= cum_.size()) idx = cum_.size() - 1;  // rounding shortfall at the top
  }
  return static_cast<Symbol>(idx + 1);
}

inline double ProbabilityVector::normalization_defect(std::uint32_t n) const {
  if (kind_ == Kind::Finite) {
    NeumaierSum s;
    for (double x : entries_) s.add(x);
    return std::abs(s.value() - 1.0);
  }
  NeumaierSum s;
  double term = 1.0 - ratio_;
  for (std::uint32_t i = 1; i <= n; ++i) {
    s.add(term);
    term *= ratio_;
  }
  return std::abs(s.value() + tail_mass(n) - 1.0);
}

}  // namespace ifs
