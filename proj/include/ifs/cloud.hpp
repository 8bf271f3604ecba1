#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ifs/errors.hpp"
#include "ifs/vec.hpp"

namespace ifs {

struct CloudProvenance {
  std::string system_name;
  std::uint64_t seed = 0;
  std::uint64_t burn_in = 0;
  std::uint64_t count = 0;
  std::string note;
};

// Flat row-major point store.
class PointCloud {
 public:
  explicit PointCloud(std::size_t dim) : dim_(dim) {
    if (dim < 1 || dim > kMaxDim) throw InvalidArgument("PointCloud: bad dim");
  }

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return data_.size() / dim_; }

  Vec point(std::size_t i) const {
    Vec p(dim_);
    const double* r = data_.data() + i * dim_;
    for (std::size_t a = 0; a < dim_; ++a) p[a] = r[a];
    return p;
  }

  void append(const Vec& p) {
    for (std::size_t a = 0; a < dim_; ++a) data_.push_back(p[a]);
  }

  void resize(std::size_t n) { data_.resize(n * dim_); }
  double* row(std::size_t i) { return data_.data() + i * dim_; }
  const double* row(std::size_t i) const { return data_.data() + i * dim_; }

  std::pair<Vec, Vec> bbox() const {
    if (size() == 0) throw DomainError("bbox: empty cloud");
    Vec lo = point(0), hi = point(0);
    for (std::size_t i = 1; i < size(); ++i) {
      const double* r = row(i);
      for (std::size_t a = 0; a < dim_; ++a) {
        if (r[a] < lo[a]) lo[a] = r[a];
        if (r[a] > hi[a]) hi[a] = r[a];
      }
    }
    return {lo, hi};
  }

  CloudProvenance provenance;

 private:
  std::size_t dim_;
  std::vector<double> data_;
};

}  // namespace ifs
