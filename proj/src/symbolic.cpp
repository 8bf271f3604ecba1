#include "ifs/symbolic.hpp"

#include <cmath>

#include "ifs/errors.hpp"

namespace ifs {

SymbolWord::SymbolWord(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
  for (Symbol s : symbols_)
    if (s < 1) throw InvalidArgument("SymbolWord: symbols are 1-based");
}

Symbol SymbolWord::at(std::size_t pos) const {
  if (pos >= symbols_.size()) throw DomainError("SymbolWord: position out of range");
  return symbols_[pos];
}

SymbolWord SymbolWord::concat(const SymbolWord& tail) const {
  std::vector<Symbol> out = symbols_;
  out.insert(out.end(), tail.symbols_.begin(), tail.symbols_.end());
  return SymbolWord(std::move(out));
}

struct SymbolStream::Core {
  ProbabilityVector dist;
  Pcg32 rng;
  std::uint64_t seed;
  std::uint64_t stream_index;
  std::vector<Symbol> cache;

  Core(ProbabilityVector d, std::uint64_t sd, std::uint64_t si)
      : dist(std::move(d)), rng(sd, si), seed(sd), stream_index(si) {}

  void materialize(std::size_t upto) {
    while (cache.size() < upto) cache.push_back(dist.sample(rng.next_double()));
  }
};

Symbol SymbolStream::at(std::size_t pos) const {
  core_->materialize(offset_ + pos + 1);
  return core_->cache[offset_ + pos];
}

SymbolWord SymbolStream::prefix(std::size_t n) const {
  core_->materialize(offset_ + n);
  return SymbolWord(std::vector<Symbol>(core_->cache.begin() + offset_,
                                        core_->cache.begin() + offset_ + n));
}

std::uint64_t SymbolStream::seed() const { return core_->seed; }
std::uint64_t SymbolStream::stream_index() const { return core_->stream_index; }

double CylinderSpec::probability(const ProbabilityVector& p) const {
  double prod = 1.0;
  for (Symbol s : pattern.symbols()) prod *= p.p(s);
  return prod;
}

SymbolStream sample_stream(const ProbabilityVector& p, std::uint64_t seed,
                           std::uint64_t stream_index) {
  if (p.normalization_defect(1000) > 1e-9)
    throw InvalidArgument("sample_stream: probabilities do not sum to 1");
  SymbolStream s;
  s.core_ = std::make_shared<SymbolStream::Core>(p, seed, stream_index);
  return s;
}

SymbolWord shift(const SymbolWord& w, std::size_t k) {
  if (k > w.length()) throw DomainError("shift: k exceeds word length");
  return SymbolWord(std::vector<Symbol>(w.symbols().begin() + k, w.symbols().end()));
}

SymbolStream shift(const SymbolStream& s, std::size_t k) {
  SymbolStream out = s;
  out.offset_ += k;
  return out;
}

std::uint64_t occupation_count(const SymbolWord& w, const SymbolWord& pattern,
                               std::size_t n) {
  if (pattern.empty()) throw InvalidArgument("occupation_count: empty pattern");
  if (w.length() + 1 < n + pattern.length())
    throw DomainError("occupation_count: word too short for window");
  const auto& ws = w.symbols();
  const auto& ps = pattern.symbols();
  std::uint64_t count = 0;
  for (std::size_t j = 0; j < n; ++j) {
    bool hit = true;
    for (std::size_t k = 0; k < ps.size(); ++k)
      if (ws[j + k] != ps[k]) {
        hit = false;
        break;
      }
    if (hit) ++count;
  }
  return count;
}

std::size_t hitting_time(const SymbolStream& s, const SymbolWord& pattern,
                         std::uint64_t visit_number, std::size_t horizon) {
  if (pattern.empty()) throw InvalidArgument("hitting_time: empty pattern");
  if (visit_number < 1) throw InvalidArgument("hitting_time: visit_number is 1-based");
  const auto& ps = pattern.symbols();
  std::uint64_t seen = 0;
  for (std::size_t j = 0; j < horizon; ++j) {
    bool hit = true;
    for (std::size_t k = 0; k < ps.size(); ++k)
      if (s.at(j + k) != ps[k]) {
        hit = false;
        break;
      }
    if (hit && ++seen == visit_number) return j;
  }
  throw SearchExhausted("hitting_time: visit not found within horizon");
}

}  // namespace ifs
