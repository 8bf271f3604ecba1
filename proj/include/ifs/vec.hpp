#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "ifs/errors.hpp"

namespace ifs {

// Points live in R^d with small d (presets use d = 1 or 2).
inline constexpr std::size_t kMaxDim = 8;

// Fixed-capacity euclidean vector. Value type, cheap to copy.
class Vec {
 public:
  Vec() : dim_(0) { c_.fill(0.0); }
  explicit Vec(std::size_t dim) : dim_(dim) {
    if (dim > kMaxDim) throw InvalidArgument("Vec: dimension exceeds kMaxDim");
    c_.fill(0.0);
  }
  Vec(std::initializer_list<double> xs) : dim_(xs.size()) {
    if (dim_ > kMaxDim) throw InvalidArgument("Vec: dimension exceeds kMaxDim");
    c_.fill(0.0);
    std::size_t k = 0;
    for (double x : xs) c_[k++] = x;
  }
  static Vec from(const std::vector<double>& xs) {
    Vec v(xs.size());
    for (std::size_t k = 0; k < xs.size(); ++k) v.c_[k] = xs[k];
    return v;
  }

  std::size_t dim() const { return dim_; }
  double operator[](std::size_t k) const { return c_[k]; }
  double& operator[](std::size_t k) { return c_[k]; }

  std::vector<double> to_vector() const {
    return std::vector<double>(c_.begin(), c_.begin() + dim_);
  }

  friend Vec operator+(const Vec& a, const Vec& b) {
    Vec r(a.dim_);
    for (std::size_t k = 0; k < a.dim_; ++k) r.c_[k] = a.c_[k] + b.c_[k];
    return r;
  }
  friend Vec operator-(const Vec& a, const Vec& b) {
    Vec r(a.dim_);
    for (std::size_t k = 0; k < a.dim_; ++k) r.c_[k] = a.c_[k] - b.c_[k];
    return r;
  }
  friend Vec operator*(double s, const Vec& a) {
    Vec r(a.dim_);
    for (std::size_t k = 0; k < a.dim_; ++k) r.c_[k] = s * a.c_[k];
    return r;
  }
  friend bool operator==(const Vec& a, const Vec& b) {
    if (a.dim_ != b.dim_) return false;
    for (std::size_t k = 0; k < a.dim_; ++k)
      if (a.c_[k] != b.c_[k]) return false;
    return true;
  }

  double norm2() const {
    double s = 0.0;
    for (std::size_t k = 0; k < dim_; ++k) s += c_[k] * c_[k];
    return s;
  }
  double norm() const { return std::sqrt(norm2()); }

 private:
  std::size_t dim_;
  std::array<double, kMaxDim> c_;
};

inline double distance(const Vec& a, const Vec& b) { return (a - b).norm(); }

}  // namespace ifs
