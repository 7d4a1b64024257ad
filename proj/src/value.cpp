#include "pickles/value.hpp"

#include <cstdlib>

namespace pickles {

Decimal Decimal::from_units(std::int64_t units) {
  Decimal d;
  d.units_ = units;
  return d;
}

Decimal Decimal::parse(const std::string& text) {
  if (text.empty()) throw Error("empty decimal literal");
  std::size_t i = 0;
  bool neg = false;
  if (text[i] == '-') {
    neg = true;
    ++i;
  }
  if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
    throw Error("malformed decimal literal '" + text + "'");
  std::int64_t whole = 0;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    whole = whole * 10 + (text[i] - '0');
    ++i;
  }
  std::int64_t frac = 0;
  int frac_digits = 0;
  if (i < text.size() && text[i] == '.') {
    ++i;
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
      throw Error("malformed decimal literal '" + text + "'");
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      if (frac_digits == kFracDigits)
        throw Error("decimal literal '" + text + "' exceeds " +
                    std::to_string(kFracDigits) + " fractional digits");
      frac = frac * 10 + (text[i] - '0');
      ++frac_digits;
      ++i;
    }
  }
  if (i != text.size()) throw Error("malformed decimal literal '" + text + "'");
  while (frac_digits < kFracDigits) {
    frac *= 10;
    ++frac_digits;
  }
  std::int64_t units = whole * kScale + frac;
  return from_units(neg ? -units : units);
}

std::string Decimal::str() const {
  std::int64_t u = units_;
  std::string sign;
  if (u < 0) {
    sign = "-";
    u = -u;
  }
  std::string frac = std::to_string(u % kScale);
  frac.insert(frac.begin(), kFracDigits - frac.size(), '0');
  while (frac.size() > 1 && frac.back() == '0') frac.pop_back();
  return sign + std::to_string(u / kScale) + "." + frac;
}

Type Type::boolean() { return Type(TypeKind::Boolean); }
Type Type::integer() { return Type(TypeKind::Integer); }
Type Type::decimal() { return Type(TypeKind::Decimal); }
Type Type::string() { return Type(TypeKind::String); }

Type Type::array(Type element) {
  Type t(TypeKind::Array);
  t.element_.push_back(std::move(element));
  return t;
}

Type Type::structure(std::vector<Attr> attrs) {
  Type t(TypeKind::Struct);
  t.attrs_ = std::move(attrs);
  return t;
}

const Type& Type::element() const {
  if (kind_ != TypeKind::Array) throw InternalError("element() on non-array type");
  return element_.front();
}

const std::vector<Type::Attr>& Type::attrs() const {
  if (kind_ != TypeKind::Struct) throw InternalError("attrs() on non-struct type");
  return attrs_;
}

bool Type::operator==(const Type& other) const {
  if (kind_ != other.kind_) return false;
  switch (kind_) {
    case TypeKind::Array:
      return element_.front() == other.element_.front();
    case TypeKind::Struct:
      return attrs_ == other.attrs_;
    default:
      return true;
  }
}

std::string Type::str() const {
  switch (kind_) {
    case TypeKind::Boolean: return "boolean";
    case TypeKind::Integer: return "integer";
    case TypeKind::Decimal: return "decimal";
    case TypeKind::String: return "string";
    case TypeKind::Array: return "array of " + element_.front().str();
    case TypeKind::Struct: {
      std::string s = "structure {";
      for (std::size_t i = 0; i < attrs_.size(); ++i) {
        if (i) s += ", ";
        s += attrs_[i].key + ": " + attrs_[i].type.str();
      }
      return s + "}";
    }
  }
  return "?";
}

Value Value::boolean(bool b) {
  Value v;
  v.kind_ = ValueKind::Boolean;
  v.bool_ = b;
  return v;
}

Value Value::integer(std::int64_t i) {
  Value v;
  v.kind_ = ValueKind::Integer;
  v.int_ = i;
  return v;
}

Value Value::decimal(Decimal d) {
  Value v;
  v.kind_ = ValueKind::Decimal;
  v.dec_ = d;
  return v;
}

Value Value::string(std::string s) {
  Value v;
  v.kind_ = ValueKind::String;
  v.str_ = std::move(s);
  return v;
}

Value Value::array(std::vector<Value> elems) {
  Value v;
  v.kind_ = ValueKind::Array;
  v.elems_ = std::move(elems);
  return v;
}

Value Value::structure(std::vector<Field> fields) {
  Value v;
  v.kind_ = ValueKind::Struct;
  v.fields_ = std::move(fields);
  return v;
}

bool Value::as_bool() const {
  if (kind_ != ValueKind::Boolean) throw EvalError("expected a boolean, got " + str());
  return bool_;
}

std::int64_t Value::as_int() const {
  if (kind_ != ValueKind::Integer) throw EvalError("expected an integer, got " + str());
  return int_;
}

const Decimal& Value::as_decimal() const {
  if (kind_ != ValueKind::Decimal) throw EvalError("expected a decimal, got " + str());
  return dec_;
}

const std::string& Value::as_string() const {
  if (kind_ != ValueKind::String) throw EvalError("expected a string, got " + str());
  return str_;
}

const std::vector<Value>& Value::elems() const {
  if (kind_ != ValueKind::Array) throw EvalError("expected an array, got " + str());
  return elems_;
}

const std::vector<Value::Field>& Value::fields() const {
  if (kind_ != ValueKind::Struct) throw EvalError("expected a structure, got " + str());
  return fields_;
}

const Value* Value::field(const std::string& key) const {
  for (const auto& f : fields()) {
    if (f.key == key) return &f.value;
  }
  return nullptr;
}

bool Value::operator==(const Value& other) const {
  if (kind_ != other.kind_) return false;
  switch (kind_) {
    case ValueKind::Boolean: return bool_ == other.bool_;
    case ValueKind::Integer: return int_ == other.int_;
    case ValueKind::Decimal: return dec_ == other.dec_;
    case ValueKind::String: return str_ == other.str_;
    case ValueKind::Array: return elems_ == other.elems_;
    case ValueKind::Struct: return fields_ == other.fields_;
  }
  return false;
}

bool Value::operator<(const Value& other) const {
  if (kind_ != other.kind_) return kind_ < other.kind_;
  switch (kind_) {
    case ValueKind::Boolean: return bool_ < other.bool_;
    case ValueKind::Integer: return int_ < other.int_;
    case ValueKind::Decimal: return dec_ < other.dec_;
    case ValueKind::String: return str_ < other.str_;
    case ValueKind::Array: return elems_ < other.elems_;
    case ValueKind::Struct: {
      for (std::size_t i = 0; i < fields_.size() && i < other.fields_.size(); ++i) {
        if (fields_[i].key != other.fields_[i].key) return fields_[i].key < other.fields_[i].key;
        if (!(fields_[i].value == other.fields_[i].value))
          return fields_[i].value < other.fields_[i].value;
      }
      return fields_.size() < other.fields_.size();
    }
  }
  return false;
}

std::string Value::str() const {
  switch (kind_) {
    case ValueKind::Boolean: return bool_ ? "true" : "false";
    case ValueKind::Integer: return std::to_string(int_);
    case ValueKind::Decimal: return dec_.str();
    case ValueKind::String: return str_;
    case ValueKind::Array: {
      std::string s = "[";
      for (std::size_t i = 0; i < elems_.size(); ++i) {
        if (i) s += ", ";
        s += elems_[i].str();
      }
      return s + "]";
    }
    case ValueKind::Struct: {
      std::string s = "{";
      for (std::size_t i = 0; i < fields_.size(); ++i) {
        if (i) s += ", ";
        s += fields_[i].key + ": " + fields_[i].value.str();
      }
      return s + "}";
    }
  }
  return "?";
}

Type type_of(const Value& v) {
  switch (v.kind()) {
    case ValueKind::Boolean: return Type::boolean();
    case ValueKind::Integer: return Type::integer();
    case ValueKind::Decimal: return Type::decimal();
    case ValueKind::String: return Type::string();
    case ValueKind::Array: {
      if (v.elems().empty()) throw Error("type of an empty array is undefined");
      Type elem = type_of(v.elems().front());
      for (std::size_t i = 1; i < v.elems().size(); ++i) {
        if (!(type_of(v.elems()[i]) == elem))
          throw Error("array elements have mixed types: " + v.str());
      }
      return Type::array(std::move(elem));
    }
    case ValueKind::Struct: {
      std::vector<Type::Attr> attrs;
      attrs.reserve(v.fields().size());
      for (const auto& f : v.fields()) attrs.push_back({f.key, type_of(f.value)});
      return Type::structure(std::move(attrs));
    }
  }
  throw InternalError("unreachable value kind");
}

}  // namespace pickles
