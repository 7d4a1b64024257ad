// Domains restrict types to finite or interval-bounded value sets and
// drive deterministic enumeration for the bounded solver.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pickles/value.hpp"

namespace pickles {

enum class DomainKind { Booleans, Strings, IntInterval, DecInterval, Array, Struct };

// Finite sample sets for decimal interval domains, keyed by variable path.
// A path names a variable and descends through struct attributes with '/'
// (array levels add no segment), e.g. "faulty detectors/length position".
struct SamplingPlan {
  std::map<std::string, std::vector<Decimal>> samples;

  const std::vector<Decimal>* find(const std::string& path) const {
    auto it = samples.find(path);
    return it == samples.end() ? nullptr : &it->second;
  }
  // Entries from `other` replace entries with the same path.
  void merge_overrides(const SamplingPlan& other) {
    for (const auto& [path, values] : other.samples) samples[path] = values;
  }
};

// A domain pairs a structural type with its admissible values: explicit
// sets for booleans and strings, closed integer intervals, open or closed
// decimal intervals, cardinality-bounded arrays (never empty), and
// per-attribute struct domains.
class Domain {
 public:
  struct Attr;

  static Domain booleans(std::vector<bool> values);
  static Domain strings(std::vector<std::string> values);
  static Domain int_interval(std::int64_t lo, std::int64_t hi);
  static Domain dec_interval(Decimal lo, Decimal hi, bool lo_open, bool hi_open);
  // Cardinality bounds must satisfy 1 <= min <= max.
  static Domain array(Domain element, std::size_t min_card, std::size_t max_card);
  static Domain structure(std::vector<Attr> attrs);

  DomainKind kind() const { return kind_; }
  Type type() const;

  const std::vector<bool>& bool_values() const;
  const std::vector<std::string>& string_values() const;
  std::int64_t int_lo() const { return int_lo_; }
  std::int64_t int_hi() const { return int_hi_; }
  const Decimal& dec_lo() const { return dec_lo_; }
  const Decimal& dec_hi() const { return dec_hi_; }
  bool lo_open() const { return lo_open_; }
  bool hi_open() const { return hi_open_; }
  const Domain& element() const;
  std::size_t min_card() const { return min_card_; }
  std::size_t max_card() const { return max_card_; }
  const std::vector<Attr>& attrs() const;

  bool operator==(const Domain& other) const;
  std::string str() const;

 private:
  explicit Domain(DomainKind k) : kind_(k) {}

  DomainKind kind_;
  std::vector<bool> bools_;
  std::vector<std::string> strings_;
  std::int64_t int_lo_ = 0, int_hi_ = 0;
  Decimal dec_lo_, dec_hi_;
  bool lo_open_ = false, hi_open_ = false;
  std::vector<Domain> element_;  // 0 or 1 entries
  std::size_t min_card_ = 1, max_card_ = 1;
  std::vector<Attr> attrs_;
};

struct Domain::Attr {
  std::string key;
  Domain domain;
  bool operator==(const Attr& other) const {
    return key == other.key && domain == other.domain;
  }
};

// Membership: type-compatible and within every range and cardinality bound.
// Array elements may repeat; only enumeration restricts to distinct elements.
bool domain_contains(const Domain& d, const Value& v);

// Deterministic finite enumeration of a domain under a sampling plan.
//  - explicit sets in declaration order, integer intervals ascending,
//  - decimal intervals enumerate their sample set in ascending order,
//  - structs as the cartesian product, last attribute varying fastest,
//  - arrays as sets of distinct elements (order-irrelevant, duplicates
//    excluded), cardinality ascending, element combinations in
//    lexicographic index order.
// Throws if a decimal domain at `path` has no samples, a sample falls
// outside the interval, or an array's minimum cardinality exceeds the
// element count.
std::vector<Value> enumerate_domain(const Domain& d, const SamplingPlan& plan,
                                    const std::string& path = "");

// Number of values enumerate_domain would yield, without materializing.
std::uint64_t domain_size(const Domain& d, const SamplingPlan& plan,
                          const std::string& path = "");

}  // namespace pickles
