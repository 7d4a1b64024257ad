#include "pickles/value.hpp"

#include <vector>

#include "doctest.h"
#include "pickles/diagnostics.hpp"

using namespace pickles;

TEST_CASE("decimal text is canonical: trimmed but never digitless") {
  CHECK(Decimal::parse("2").str() == "2.0");
  CHECK(Decimal::parse("2.0").str() == "2.0");
  CHECK(Decimal::parse("2.500").str() == "2.5");
  CHECK(Decimal::parse("1.001").str() == "1.001");
  CHECK(Decimal::parse("-0.5").str() == "-0.5");
  CHECK(Decimal::parse("-2").str() == "-2.0");
  CHECK(Decimal::parse("0.000").str() == "0.0");
}

TEST_CASE("decimal parsing rejects malformed and over-precise literals") {
  CHECK_THROWS_AS(Decimal::parse(""), Error);
  CHECK_THROWS_AS(Decimal::parse("1."), Error);
  CHECK_THROWS_AS(Decimal::parse(".5"), Error);
  CHECK_THROWS_AS(Decimal::parse("1.0001"), Error);
  CHECK_THROWS_AS(Decimal::parse("one"), Error);
  CHECK_THROWS_AS(Decimal::parse("1.5x"), Error);
}

TEST_CASE("decimal ordering is exact") {
  CHECK(Decimal::parse("1.001") < Decimal::parse("1.01"));
  CHECK(Decimal::parse("2.999") < Decimal::parse("3.0"));
  CHECK(Decimal::parse("2.0") == Decimal::from_units(2000));
  CHECK(Decimal::parse("-1.5") < Decimal::parse("-1.001"));
}

TEST_CASE("types compare structurally") {
  Type det = Type::structure({{"lane", Type::integer()}, {"length position", Type::decimal()}});
  CHECK(Type::array(det) == Type::array(det));
  CHECK(Type::array(det) != Type::array(Type::integer()));
  CHECK(det != Type::structure({{"lane", Type::integer()}}));
  CHECK(Type::boolean().is_primitive());
  CHECK_FALSE(Type::array(Type::boolean()).is_primitive());
}

TEST_CASE("type_of reconstructs nested types and rejects empty arrays") {
  Value det = Value::structure(
      {{"lane", Value::integer(1)}, {"length position", Value::decimal(Decimal::parse("1.5"))}});
  Type t = type_of(Value::array({det, det}));
  REQUIRE(t.kind() == TypeKind::Array);
  REQUIRE(t.element().kind() == TypeKind::Struct);
  CHECK(t.element().attrs().size() == 2);
  CHECK_THROWS_AS(type_of(Value::array({})), Error);
  CHECK_THROWS_AS(type_of(Value::array({Value::integer(1), Value::boolean(true)})), Error);
}

TEST_CASE("values order totally within a type") {
  Value a = Value::integer(1), b = Value::integer(2);
  CHECK(a < b);
  CHECK_FALSE(b < a);
  CHECK_FALSE(a < a);
  Value s1 = Value::string("AV"), s2 = Value::string("NOT AV");
  CHECK((s1 < s2 || s2 < s1));
  Value arr1 = Value::array({a}), arr2 = Value::array({a, b});
  CHECK(arr1 < arr2);
}

TEST_CASE("struct field lookup") {
  Value det = Value::structure(
      {{"lane", Value::integer(2)}, {"length position", Value::decimal(Decimal::parse("2.5"))}});
  REQUIRE(det.field("lane") != nullptr);
  CHECK(*det.field("lane") == Value::integer(2));
  CHECK(det.field("nope") == nullptr);
}
