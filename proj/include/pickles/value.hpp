// Concrete values and their types: booleans, integers, fixed-point
// decimals, enumerated strings, arrays, and keyed structures.
#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "pickles/diagnostics.hpp"

namespace pickles {

// Exact decimal with a fixed number of fractional digits. Stored as an
// integer count of thousandths; arithmetic never touches binary floating
// point, so equality and ordering are exact.
class Decimal {
 public:
  static constexpr int kFracDigits = 3;
  static constexpr std::int64_t kScale = 1000;  // 10^kFracDigits

  Decimal() = default;
  static Decimal from_units(std::int64_t units);
  // Accepts [-]digits[.digits] with at most kFracDigits fractional digits.
  static Decimal parse(const std::string& text);

  std::int64_t units() const { return units_; }

  // Canonical text: fractional digits with trailing zeros trimmed but at
  // least one kept, so 2 reads back as "2.0" and 1.001 as "1.001".
  std::string str() const;

  auto operator<=>(const Decimal&) const = default;

 private:
  std::int64_t units_ = 0;
};

enum class TypeKind { Boolean, Integer, Decimal, String, Array, Struct };

// Structural type of a value. Array and struct types nest.
class Type {
 public:
  struct Attr;

  static Type boolean();
  static Type integer();
  static Type decimal();
  static Type string();
  static Type array(Type element);
  static Type structure(std::vector<Attr> attrs);

  TypeKind kind() const { return kind_; }
  const Type& element() const;              // Array only
  const std::vector<Attr>& attrs() const;   // Struct only
  bool is_primitive() const {
    return kind_ != TypeKind::Array && kind_ != TypeKind::Struct;
  }

  bool operator==(const Type& other) const;
  std::string str() const;

 private:
  explicit Type(TypeKind k) : kind_(k) {}

  TypeKind kind_;
  std::vector<Type> element_;  // 0 or 1 entries; avoids a separate box
  std::vector<Attr> attrs_;
};

struct Type::Attr {
  std::string key;
  Type type;
  bool operator==(const Attr& other) const {
    return key == other.key && type == other.type;
  }
};

enum class ValueKind { Boolean, Integer, Decimal, String, Array, Struct };

// A concrete value. Struct fields keep their declaration order; two struct
// values are equal only if keys appear in the same order, so producers must
// emit fields canonically (parsers and importers reorder to the declared
// attribute order before comparing).
class Value {
 public:
  struct Field;

  Value() : kind_(ValueKind::Boolean), bool_(false) {}
  static Value boolean(bool b);
  static Value integer(std::int64_t i);
  static Value decimal(Decimal d);
  static Value string(std::string s);
  static Value array(std::vector<Value> elems);
  static Value structure(std::vector<Field> fields);

  ValueKind kind() const { return kind_; }
  bool as_bool() const;
  std::int64_t as_int() const;
  const Decimal& as_decimal() const;
  const std::string& as_string() const;
  const std::vector<Value>& elems() const;
  const std::vector<Field>& fields() const;
  const Value* field(const std::string& key) const;  // nullptr if absent

  bool operator==(const Value& other) const;
  bool operator<(const Value& other) const;  // total order within one kind tree

  // Debug text, e.g. {lane: 1, length position: 1.5} or [1, 2].
  std::string str() const;

 private:
  ValueKind kind_;
  bool bool_ = false;
  std::int64_t int_ = 0;
  Decimal dec_;
  std::string str_;
  std::vector<Value> elems_;
  std::vector<Field> fields_;
};

struct Value::Field {
  std::string key;
  Value value;
  bool operator==(const Field& other) const {
    return key == other.key && value == other.value;
  }
};

// Derives the unique structural type of a value. Array element types must
// agree across elements; empty arrays carry no element type and are rejected.
Type type_of(const Value& v);

}  // namespace pickles
