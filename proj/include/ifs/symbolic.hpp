#pragma once

#include <cstdint>
#include <initializer_list>
#include <memory>
#include <vector>

#include "ifs/probability.hpp"
#include "ifs/rng.hpp"

namespace ifs {

// Finite word over the 1-based index set. Positions are 0-based.
class SymbolWord {
 public:
  SymbolWord() = default;
  explicit SymbolWord(std::vector<Symbol> symbols);
  SymbolWord(std::initializer_list<Symbol> symbols)
      : SymbolWord(std::vector<Symbol>(symbols)) {}

  std::size_t length() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  Symbol at(std::size_t pos) const;
  const std::vector<Symbol>& symbols() const { return symbols_; }

  SymbolWord concat(const SymbolWord& tail) const;
  bool operator==(const SymbolWord& o) const { return symbols_ == o.symbols_; }

 private:
  std::vector<Symbol> symbols_;
};

// Lazily materialized i.i.d. symbol stream. Copies share the underlying
// sampler state; a shifted copy views the same stream at an offset, so
// element j of shift(s, k) is element j + k of s. Instances are not
// synchronized: a stream and its copies belong to one thread at a time.
class SymbolStream {
 public:
  Symbol at(std::size_t pos) const;
  SymbolWord prefix(std::size_t n) const;
  std::uint64_t seed() const;
  std::uint64_t stream_index() const;
  std::size_t offset() const { return offset_; }

 private:
  friend SymbolStream sample_stream(const ProbabilityVector&, std::uint64_t,
                                    std::uint64_t);
  friend SymbolStream shift(const SymbolStream&, std::size_t);

  struct Core;
  std::shared_ptr<Core> core_;
  std::size_t offset_ = 0;
};

// Cylinder set [i_1 ... i_m]: the event that a stream starts with `pattern`.
struct CylinderSpec {
  SymbolWord pattern;

  // Product of the pattern's symbol probabilities.
  double probability(const ProbabilityVector& p) const;
};

// Validates p (all entries positive, normalization defect <= tol) and returns
// a reproducible stream keyed by (seed, stream_index).
SymbolStream sample_stream(const ProbabilityVector& p, std::uint64_t seed,
                           std::uint64_t stream_index = 0);

// Drop the first k symbols. For words, k > length is a domain error.
SymbolWord shift(const SymbolWord& w, std::size_t k);
SymbolStream shift(const SymbolStream& s, std::size_t k);

// Number of positions j in [0, n) where `pattern` occurs in w starting at j.
// Requires w to expose n + pattern.length() - 1 symbols.
std::uint64_t occupation_count(const SymbolWord& w, const SymbolWord& pattern,
                               std::size_t n);

// 0-based position where `pattern` completes its visit_number-th occurrence
// in s (occurrences may overlap). Scans at most `horizon` start positions.
std::size_t hitting_time(const SymbolStream& s, const SymbolWord& pattern,
                         std::uint64_t visit_number,
                         std::size_t horizon = 10'000'000);

}  // namespace ifs
