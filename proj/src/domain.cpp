#include "pickles/domain.hpp"

#include <algorithm>

namespace pickles {

Domain Domain::booleans(std::vector<bool> values) {
  Domain d(DomainKind::Booleans);
  if (values.empty()) throw Error("boolean domain must list at least one value");
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t j = i + 1; j < values.size(); ++j)
      if (values[i] == values[j]) throw Error("duplicate value in boolean domain");
  d.bools_ = std::move(values);
  return d;
}

Domain Domain::strings(std::vector<std::string> values) {
  Domain d(DomainKind::Strings);
  if (values.empty()) throw Error("string domain must list at least one value");
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t j = i + 1; j < values.size(); ++j)
      if (values[i] == values[j])
        throw Error("duplicate value '" + values[i] + "' in string domain");
  d.strings_ = std::move(values);
  return d;
}

Domain Domain::int_interval(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw Error("integer interval has lo > hi");
  Domain d(DomainKind::IntInterval);
  d.int_lo_ = lo;
  d.int_hi_ = hi;
  return d;
}

Domain Domain::dec_interval(Decimal lo, Decimal hi, bool lo_open, bool hi_open) {
  // Emptiness in representable values: openness excludes an endpoint, and
  // the representation is a 10^-kFracDigits grid.
  std::int64_t first = lo.units() + (lo_open ? 1 : 0);
  std::int64_t last = hi.units() - (hi_open ? 1 : 0);
  if (first > last) throw Error("decimal interval is empty");
  Domain d(DomainKind::DecInterval);
  d.dec_lo_ = lo;
  d.dec_hi_ = hi;
  d.lo_open_ = lo_open;
  d.hi_open_ = hi_open;
  return d;
}

Domain Domain::array(Domain element, std::size_t min_card, std::size_t max_card) {
  if (min_card < 1 || min_card > max_card)
    throw Error("array cardinality must satisfy 1 <= min <= max");
  Domain d(DomainKind::Array);
  d.element_.push_back(std::move(element));
  d.min_card_ = min_card;
  d.max_card_ = max_card;
  return d;
}

Domain Domain::structure(std::vector<Attr> attrs) {
  if (attrs.empty()) throw Error("structure domain must declare at least one attribute");
  Domain d(DomainKind::Struct);
  d.attrs_ = std::move(attrs);
  return d;
}

const std::vector<bool>& Domain::bool_values() const {
  if (kind_ != DomainKind::Booleans) throw InternalError("bool_values() on non-boolean domain");
  return bools_;
}

const std::vector<std::string>& Domain::string_values() const {
  if (kind_ != DomainKind::Strings) throw InternalError("string_values() on non-string domain");
  return strings_;
}

const Domain& Domain::element() const {
  if (kind_ != DomainKind::Array) throw InternalError("element() on non-array domain");
  return element_.front();
}

const std::vector<Domain::Attr>& Domain::attrs() const {
  if (kind_ != DomainKind::Struct) throw InternalError("attrs() on non-struct domain");
  return attrs_;
}

Type Domain::type() const {
  switch (kind_) {
    case DomainKind::Booleans: return Type::boolean();
    case DomainKind::Strings: return Type::string();
    case DomainKind::IntInterval: return Type::integer();
    case DomainKind::DecInterval: return Type::decimal();
    case DomainKind::Array: return Type::array(element_.front().type());
    case DomainKind::Struct: {
      std::vector<Type::Attr> attrs;
      attrs.reserve(attrs_.size());
      for (const auto& a : attrs_) attrs.push_back({a.key, a.domain.type()});
      return Type::structure(std::move(attrs));
    }
  }
  throw InternalError("unreachable domain kind");
}

bool Domain::operator==(const Domain& other) const {
  if (kind_ != other.kind_) return false;
  switch (kind_) {
    case DomainKind::Booleans: return bools_ == other.bools_;
    case DomainKind::Strings: return strings_ == other.strings_;
    case DomainKind::IntInterval:
      return int_lo_ == other.int_lo_ && int_hi_ == other.int_hi_;
    case DomainKind::DecInterval:
      return dec_lo_ == other.dec_lo_ && dec_hi_ == other.dec_hi_ &&
             lo_open_ == other.lo_open_ && hi_open_ == other.hi_open_;
    case DomainKind::Array:
      return element_.front() == other.element_.front() &&
             min_card_ == other.min_card_ && max_card_ == other.max_card_;
    case DomainKind::Struct: return attrs_ == other.attrs_;
  }
  return false;
}

std::string Domain::str() const {
  switch (kind_) {
    case DomainKind::Booleans: {
      std::string s = "{";
      for (std::size_t i = 0; i < bools_.size(); ++i) {
        if (i) s += ", ";
        s += bools_[i] ? "true" : "false";
      }
      return s + "}";
    }
    case DomainKind::Strings: {
      std::string s = "{";
      for (std::size_t i = 0; i < strings_.size(); ++i) {
        if (i) s += ", ";
        s += strings_[i];
      }
      return s + "}";
    }
    case DomainKind::IntInterval:
      return "[" + std::to_string(int_lo_) + ", " + std::to_string(int_hi_) + "]";
    case DomainKind::DecInterval:
      return std::string(lo_open_ ? "(" : "[") + dec_lo_.str() + ", " + dec_hi_.str() +
             (hi_open_ ? ")" : "]");
    case DomainKind::Array:
      return "array " + std::to_string(min_card_) + ".." + std::to_string(max_card_) +
             " of " + element_.front().str();
    case DomainKind::Struct: {
      std::string s = "structure {";
      for (std::size_t i = 0; i < attrs_.size(); ++i) {
        if (i) s += ", ";
        s += attrs_[i].key + ": " + attrs_[i].domain.str();
      }
      return s + "}";
    }
  }
  return "?";
}

bool domain_contains(const Domain& d, const Value& v) {
  switch (d.kind()) {
    case DomainKind::Booleans:
      if (v.kind() != ValueKind::Boolean) return false;
      return std::find(d.bool_values().begin(), d.bool_values().end(), v.as_bool()) !=
             d.bool_values().end();
    case DomainKind::Strings:
      if (v.kind() != ValueKind::String) return false;
      return std::find(d.string_values().begin(), d.string_values().end(), v.as_string()) !=
             d.string_values().end();
    case DomainKind::IntInterval:
      if (v.kind() != ValueKind::Integer) return false;
      return v.as_int() >= d.int_lo() && v.as_int() <= d.int_hi();
    case DomainKind::DecInterval: {
      if (v.kind() != ValueKind::Decimal) return false;
      const Decimal& x = v.as_decimal();
      if (d.lo_open() ? !(x > d.dec_lo()) : !(x >= d.dec_lo())) return false;
      if (d.hi_open() ? !(x < d.dec_hi()) : !(x <= d.dec_hi())) return false;
      return true;
    }
    case DomainKind::Array: {
      if (v.kind() != ValueKind::Array) return false;
      if (v.elems().size() < d.min_card() || v.elems().size() > d.max_card()) return false;
      for (const auto& e : v.elems())
        if (!domain_contains(d.element(), e)) return false;
      return true;
    }
    case DomainKind::Struct: {
      if (v.kind() != ValueKind::Struct) return false;
      if (v.fields().size() != d.attrs().size()) return false;
      for (std::size_t i = 0; i < d.attrs().size(); ++i) {
        if (v.fields()[i].key != d.attrs()[i].key) return false;
        if (!domain_contains(d.attrs()[i].domain, v.fields()[i].value)) return false;
      }
      return true;
    }
  }
  return false;
}

namespace {

const std::vector<Decimal>& samples_for(const Domain& d, const SamplingPlan& plan,
                                        const std::string& path) {
  const std::vector<Decimal>* s = plan.find(path);
  if (!s || s->empty())
    throw Error("no sample set for decimal domain at '" + path + "'");
  for (const Decimal& x : *s) {
    if (!domain_contains(d, Value::decimal(x)))
      throw Error("sample " + x.str() + " for '" + path + "' lies outside " + d.str());
  }
  return *s;
}

// Distinct-element combinations: C(n, k) index subsets in lexicographic
// order, k running from min to max cardinality.
void append_combinations(const std::vector<Value>& pool, std::size_t k,
                         std::size_t start, std::vector<Value>& current,
                         std::vector<Value>& out) {
  if (current.size() == k) {
    out.push_back(Value::array(current));
    return;
  }
  for (std::size_t i = start; i + (k - current.size()) <= pool.size(); ++i) {
    current.push_back(pool[i]);
    append_combinations(pool, k, i + 1, current, out);
    current.pop_back();
  }
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

}  // namespace

std::vector<Value> enumerate_domain(const Domain& d, const SamplingPlan& plan,
                                    const std::string& path) {
  std::vector<Value> out;
  switch (d.kind()) {
    case DomainKind::Booleans:
      for (bool b : d.bool_values()) out.push_back(Value::boolean(b));
      return out;
    case DomainKind::Strings:
      for (const auto& s : d.string_values()) out.push_back(Value::string(s));
      return out;
    case DomainKind::IntInterval:
      for (std::int64_t i = d.int_lo(); i <= d.int_hi(); ++i)
        out.push_back(Value::integer(i));
      return out;
    case DomainKind::DecInterval: {
      std::vector<Decimal> s = samples_for(d, plan, path);
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
      for (const Decimal& x : s) out.push_back(Value::decimal(x));
      return out;
    }
    case DomainKind::Struct: {
      std::vector<std::vector<Value>> per_attr;
      for (const auto& a : d.attrs())
        per_attr.push_back(enumerate_domain(a.domain, plan, path + "/" + a.key));
      std::vector<std::size_t> idx(per_attr.size(), 0);
      while (true) {
        std::vector<Value::Field> fields;
        for (std::size_t i = 0; i < per_attr.size(); ++i)
          fields.push_back({d.attrs()[i].key, per_attr[i][idx[i]]});
        out.push_back(Value::structure(std::move(fields)));
        std::size_t i = per_attr.size();
        while (i > 0) {
          --i;
          if (++idx[i] < per_attr[i].size()) break;
          idx[i] = 0;
          if (i == 0) return out;
        }
      }
    }
    case DomainKind::Array: {
      std::vector<Value> pool = enumerate_domain(d.element(), plan, path);
      if (pool.size() < d.min_card())
        throw Error("element domain at '" + path + "' yields " +
                    std::to_string(pool.size()) +
                    " values, fewer than the minimum cardinality " +
                    std::to_string(d.min_card()));
      std::size_t max_k = std::min(d.max_card(), pool.size());
      for (std::size_t k = d.min_card(); k <= max_k; ++k) {
        std::vector<Value> current;
        append_combinations(pool, k, 0, current, out);
      }
      return out;
    }
  }
  throw InternalError("unreachable domain kind");
}

std::uint64_t domain_size(const Domain& d, const SamplingPlan& plan,
                          const std::string& path) {
  switch (d.kind()) {
    case DomainKind::Booleans: return d.bool_values().size();
    case DomainKind::Strings: return d.string_values().size();
    case DomainKind::IntInterval:
      return static_cast<std::uint64_t>(d.int_hi() - d.int_lo() + 1);
    case DomainKind::DecInterval: {
      std::vector<Decimal> s = samples_for(d, plan, path);
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
      return s.size();
    }
    case DomainKind::Struct: {
      std::uint64_t n = 1;
      for (const auto& a : d.attrs()) n *= domain_size(a.domain, plan, path + "/" + a.key);
      return n;
    }
    case DomainKind::Array: {
      std::uint64_t n = domain_size(d.element(), plan, path);
      if (n < d.min_card())
        throw Error("element domain at '" + path + "' yields fewer values than min cardinality");
      std::uint64_t total = 0;
      for (std::size_t k = d.min_card(); k <= d.max_card() && k <= n; ++k)
        total += binomial(n, k);
      return total;
    }
  }
  throw InternalError("unreachable domain kind");
}

}  // namespace pickles
