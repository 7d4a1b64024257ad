#include "pickles/json_io.hpp"

#include <cstdint>
#include <set>
#include <utility>

#include "json.hpp"
#include "pickles/diagnostics.hpp"

namespace pickles {

namespace {

using json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw SchemaError(path.empty() ? "/" : path, msg);
}

const json& field(const json& j, const std::string& path, const char* key) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path + "/" + key, "missing field");
  return *it;
}

std::string get_string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

std::int64_t get_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<std::int64_t>();
}

std::uint64_t get_uint(const json& j, const std::string& path) {
  std::int64_t n = get_int(j, path);
  if (n < 0) fail(path, "expected a non-negative integer");
  return static_cast<std::uint64_t>(n);
}

bool get_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) fail(path, "expected a boolean");
  return j.get<bool>();
}

const json& get_array(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

Decimal parse_decimal(const json& j, const std::string& path) {
  std::string text = get_string(j, path);
  try {
    return Decimal::parse(text);
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

json parse_document(const std::string& bytes) {
  try {
    return json::parse(bytes);
  } catch (const json::parse_error& e) {
    fail("", e.what());
  }
}

void check_header(const json& doc, const char* kind) {
  if (get_int(field(doc, "", "pickles-schema"), "/pickles-schema") != kSchemaVersion)
    fail("/pickles-schema", "unsupported schema version");
  if (get_string(field(doc, "", "kind"), "/kind") != kind)
    fail("/kind", std::string("expected a \"") + kind + "\" document");
}

// --- values ---

json value_to_json(const Value& v) {
  switch (v.kind()) {
    case ValueKind::Boolean: return json{{"bool", v.as_bool()}};
    case ValueKind::Integer: return json{{"int", v.as_int()}};
    case ValueKind::Decimal: return json{{"dec", v.as_decimal().str()}};
    case ValueKind::String: return json{{"str", v.as_string()}};
    case ValueKind::Array: {
      json items = json::array();
      for (const Value& e : v.elems()) items.push_back(value_to_json(e));
      return json{{"arr", std::move(items)}};
    }
    case ValueKind::Struct: {
      json fields = json::object();
      for (const Value::Field& f : v.fields()) fields[f.key] = value_to_json(f.value);
      return json{{"obj", std::move(fields)}};
    }
  }
  throw InternalError("unhandled value kind");
}

Value value_from_json(const json& j, const std::string& path) {
  if (!j.is_object() || j.size() != 1) fail(path, "expected a single-key value object");
  auto it = j.begin();
  const std::string& tag = it.key();
  const json& body = it.value();
  if (tag == "bool") return Value::boolean(get_bool(body, path + "/bool"));
  if (tag == "int") return Value::integer(get_int(body, path + "/int"));
  if (tag == "dec") return Value::decimal(parse_decimal(body, path + "/dec"));
  if (tag == "str") return Value::string(get_string(body, path + "/str"));
  if (tag == "arr") {
    std::vector<Value> elems;
    const json& items = get_array(body, path + "/arr");
    for (std::size_t i = 0; i < items.size(); ++i)
      elems.push_back(value_from_json(items[i], path + "/arr/" + std::to_string(i)));
    return Value::array(std::move(elems));
  }
  if (tag == "obj") {
    if (!body.is_object()) fail(path + "/obj", "expected an object");
    std::vector<Value::Field> fields;
    for (auto f = body.begin(); f != body.end(); ++f)
      fields.push_back({f.key(), value_from_json(f.value(), path + "/obj/" + f.key())});
    return Value::structure(std::move(fields));
  }
  fail(path, "unknown value tag \"" + tag + "\"");
}

// --- domains ---

json domain_to_json(const Domain& d) {
  switch (d.kind()) {
    case DomainKind::Booleans: {
      json values = json::array();
      for (bool b : d.bool_values()) values.push_back(b);
      return json{{"kind", "booleans"}, {"values", std::move(values)}};
    }
    case DomainKind::Strings:
      return json{{"kind", "strings"}, {"values", d.string_values()}};
    case DomainKind::IntInterval:
      return json{{"kind", "int-interval"}, {"lo", d.int_lo()}, {"hi", d.int_hi()}};
    case DomainKind::DecInterval:
      return json{{"kind", "dec-interval"},
                  {"lo", d.dec_lo().str()},
                  {"hi", d.dec_hi().str()},
                  {"lo-open", d.lo_open()},
                  {"hi-open", d.hi_open()}};
    case DomainKind::Array:
      return json{{"kind", "array"},
                  {"element", domain_to_json(d.element())},
                  {"min-card", d.min_card()},
                  {"max-card", d.max_card()}};
    case DomainKind::Struct: {
      json attrs = json::array();
      for (const Domain::Attr& a : d.attrs())
        attrs.push_back(json{{"key", a.key}, {"domain", domain_to_json(a.domain)}});
      return json{{"kind", "struct"}, {"attrs", std::move(attrs)}};
    }
  }
  throw InternalError("unhandled domain kind");
}

Domain domain_from_json(const json& j, const std::string& path) {
  std::string kind = get_string(field(j, path, "kind"), path + "/kind");
  if (kind == "booleans") {
    const json& items = get_array(field(j, path, "values"), path + "/values");
    std::vector<bool> values;
    for (std::size_t i = 0; i < items.size(); ++i)
      values.push_back(get_bool(items[i], path + "/values/" + std::to_string(i)));
    return Domain::booleans(std::move(values));
  }
  if (kind == "strings") {
    const json& items = get_array(field(j, path, "values"), path + "/values");
    std::vector<std::string> values;
    for (std::size_t i = 0; i < items.size(); ++i)
      values.push_back(get_string(items[i], path + "/values/" + std::to_string(i)));
    return Domain::strings(std::move(values));
  }
  if (kind == "int-interval")
    return Domain::int_interval(get_int(field(j, path, "lo"), path + "/lo"),
                                get_int(field(j, path, "hi"), path + "/hi"));
  if (kind == "dec-interval")
    return Domain::dec_interval(parse_decimal(field(j, path, "lo"), path + "/lo"),
                                parse_decimal(field(j, path, "hi"), path + "/hi"),
                                get_bool(field(j, path, "lo-open"), path + "/lo-open"),
                                get_bool(field(j, path, "hi-open"), path + "/hi-open"));
  if (kind == "array")
    return Domain::array(domain_from_json(field(j, path, "element"), path + "/element"),
                         get_uint(field(j, path, "min-card"), path + "/min-card"),
                         get_uint(field(j, path, "max-card"), path + "/max-card"));
  if (kind == "struct") {
    const json& items = get_array(field(j, path, "attrs"), path + "/attrs");
    std::vector<Domain::Attr> attrs;
    for (std::size_t i = 0; i < items.size(); ++i) {
      std::string apath = path + "/attrs/" + std::to_string(i);
      attrs.push_back(
          {get_string(field(items[i], apath, "key"), apath + "/key"),
           domain_from_json(field(items[i], apath, "domain"), apath + "/domain")});
    }
    return Domain::structure(std::move(attrs));
  }
  fail(path + "/kind", "unknown domain kind \"" + kind + "\"");
}

// --- terms ---

std::string cmp_tag(CmpOp op) {
  switch (op) {
    case CmpOp::Eq: return "eq";
    case CmpOp::Ne: return "ne";
    case CmpOp::Lt: return "lt";
    case CmpOp::Le: return "le";
    case CmpOp::Gt: return "gt";
    case CmpOp::Ge: return "ge";
  }
  throw InternalError("unhandled comparison");
}

CmpOp cmp_from_tag(const std::string& tag, const std::string& path) {
  if (tag == "eq") return CmpOp::Eq;
  if (tag == "ne") return CmpOp::Ne;
  if (tag == "lt") return CmpOp::Lt;
  if (tag == "le") return CmpOp::Le;
  if (tag == "gt") return CmpOp::Gt;
  if (tag == "ge") return CmpOp::Ge;
  fail(path, "unknown comparison \"" + tag + "\"");
}

std::string count_tag(CountCmp cmp) {
  switch (cmp) {
    case CountCmp::AtLeast: return "at_least";
    case CountCmp::AtMost: return "at_most";
    case CountCmp::Exactly: return "exactly";
    case CountCmp::AllElements: return "all";
  }
  throw InternalError("unhandled count comparison");
}

CountCmp count_from_tag(const std::string& tag, const std::string& path) {
  if (tag == "at_least") return CountCmp::AtLeast;
  if (tag == "at_most") return CountCmp::AtMost;
  if (tag == "exactly") return CountCmp::Exactly;
  if (tag == "all") return CountCmp::AllElements;
  fail(path, "unknown count comparison \"" + tag + "\"");
}

json term_to_json(const TermPtr& t) {
  switch (t->kind()) {
    case TermKind::Const:
      return json{{"t", "const"}, {"value", value_to_json(t->value())}};
    case TermKind::LocVar: return json{{"t", "loc"}, {"var", t->name()}};
    case TermKind::Param:
      return json{{"t", "param"}, {"var", t->name()}, {"step", t->step()}};
    case TermKind::Elem: return json{{"t", "elem"}, {"binder", t->binder()}};
    case TermKind::AttrGet:
      return json{{"t", "attr"}, {"of", term_to_json(t->lhs())}, {"key", t->key()}};
    case TermKind::Compare:
      return json{{"t", "cmp"},
                  {"op", cmp_tag(t->cmp_op())},
                  {"lhs", term_to_json(t->lhs())},
                  {"rhs", term_to_json(t->rhs())}};
    case TermKind::Connective:
      return json{{"t", "conn"},
                  {"op", t->conn_op() == ConnOp::And ? "and" : "or"},
                  {"lhs", term_to_json(t->lhs())},
                  {"rhs", term_to_json(t->rhs())}};
    case TermKind::CountWhere:
      return json{{"t", "count"},
                  {"array", term_to_json(t->lhs())},
                  {"pred", term_to_json(t->rhs())},
                  {"cmp", count_tag(t->count_cmp())},
                  {"count", t->count()}};
    case TermKind::BoolConst: return json{{"t", "bool"}, {"value", t->bool_value()}};
  }
  throw InternalError("unhandled term kind");
}

TermPtr term_from_json(const json& j, const std::string& path) {
  std::string t = get_string(field(j, path, "t"), path + "/t");
  if (t == "const") return Term::constant(value_from_json(field(j, path, "value"), path + "/value"));
  if (t == "loc") return Term::loc_var(get_string(field(j, path, "var"), path + "/var"));
  if (t == "param")
    return Term::param(get_string(field(j, path, "var"), path + "/var"),
                       static_cast<int>(get_int(field(j, path, "step"), path + "/step")));
  if (t == "elem")
    return Term::elem(static_cast<int>(get_uint(field(j, path, "binder"), path + "/binder")));
  if (t == "attr")
    return Term::attr_get(term_from_json(field(j, path, "of"), path + "/of"),
                          get_string(field(j, path, "key"), path + "/key"));
  if (t == "cmp")
    return Term::compare(
        cmp_from_tag(get_string(field(j, path, "op"), path + "/op"), path + "/op"),
        term_from_json(field(j, path, "lhs"), path + "/lhs"),
        term_from_json(field(j, path, "rhs"), path + "/rhs"));
  if (t == "conn") {
    std::string op = get_string(field(j, path, "op"), path + "/op");
    if (op != "and" && op != "or") fail(path + "/op", "unknown connective \"" + op + "\"");
    return Term::connective(op == "and" ? ConnOp::And : ConnOp::Or,
                            term_from_json(field(j, path, "lhs"), path + "/lhs"),
                            term_from_json(field(j, path, "rhs"), path + "/rhs"));
  }
  if (t == "count")
    return Term::count_where(
        term_from_json(field(j, path, "array"), path + "/array"),
        term_from_json(field(j, path, "pred"), path + "/pred"),
        count_from_tag(get_string(field(j, path, "cmp"), path + "/cmp"), path + "/cmp"),
        get_uint(field(j, path, "count"), path + "/count"));
  if (t == "bool") return Term::boolean(get_bool(field(j, path, "value"), path + "/value"));
  fail(path + "/t", "unknown term tag \"" + t + "\"");
}

// Schema-directed decoding for hand-written value files: primitives appear
// bare, decimals as strings, structs as objects keyed by attribute.
Value plain_value_from_json(const json& j, const Domain& d, const std::string& path) {
  Value v;
  switch (d.kind()) {
    case DomainKind::Booleans: v = Value::boolean(get_bool(j, path)); break;
    case DomainKind::Strings: v = Value::string(get_string(j, path)); break;
    case DomainKind::IntInterval: v = Value::integer(get_int(j, path)); break;
    case DomainKind::DecInterval: v = Value::decimal(parse_decimal(j, path)); break;
    case DomainKind::Array: {
      const json& items = get_array(j, path);
      std::vector<Value> elems;
      for (std::size_t i = 0; i < items.size(); ++i)
        elems.push_back(
            plain_value_from_json(items[i], d.element(), path + "/" + std::to_string(i)));
      v = Value::array(std::move(elems));
      break;
    }
    case DomainKind::Struct: {
      if (!j.is_object()) fail(path, "expected an object");
      std::vector<Value::Field> fields;
      for (const Domain::Attr& a : d.attrs())
        fields.push_back(
            {a.key, plain_value_from_json(field(j, path, a.key.c_str()), a.domain,
                                          path + "/" + a.key)});
      if (j.size() != d.attrs().size()) fail(path, "unexpected extra attribute");
      v = Value::structure(std::move(fields));
      break;
    }
  }
  if (!domain_contains(d, v)) fail(path, "value " + v.str() + " is outside the declared domain");
  return v;
}

}  // namespace

std::string export_sts(const Sts& s) {
  json doc = json::object();
  doc["pickles-schema"] = kSchemaVersion;
  doc["kind"] = "sts";
  doc["name"] = s.name;
  doc["ordinal"] = s.ordinal;
  doc["initial"] = s.initial;
  doc["locations"] = s.locations;

  json variables = json::array();
  for (const VarBinding& v : s.variables)
    variables.push_back(json{{"id", v.id}, {"domain", domain_to_json(v.domain)}});
  doc["variables"] = std::move(variables);

  json gates = json::array();
  for (const Gate& g : s.gates)
    gates.push_back(json{{"name", g.name},
                         {"direction", to_string(g.direction)},
                         {"params", g.params}});
  doc["gates"] = std::move(gates);

  json switches = json::array();
  for (const Switch& sw : s.switches) {
    json assignment = json::array();
    for (const Assign& a : sw.assignment)
      assignment.push_back(json{{"var", a.var}, {"term", term_to_json(a.term)}});
    switches.push_back(json{{"source", sw.source},
                            {"gate", sw.gate},
                            {"params", sw.params},
                            {"guard", term_to_json(sw.guard)},
                            {"assignment", std::move(assignment)},
                            {"target", sw.target},
                            {"direction", to_string(sw.direction)},
                            {"scenario", sw.scenario},
                            {"step-text", sw.step_text}});
  }
  doc["switches"] = std::move(switches);
  return doc.dump(2) + "\n";
}

Sts import_sts(const std::string& bytes) {
  json doc = parse_document(bytes);
  check_header(doc, "sts");

  Sts s;
  s.name = get_string(field(doc, "", "name"), "/name");
  s.ordinal = static_cast<int>(get_int(field(doc, "", "ordinal"), "/ordinal"));

  const json& locations = get_array(field(doc, "", "locations"), "/locations");
  std::set<std::string> seen_locations;
  for (std::size_t i = 0; i < locations.size(); ++i) {
    std::string path = "/locations/" + std::to_string(i);
    std::string id = get_string(locations[i], path);
    if (!seen_locations.insert(id).second) fail(path, "duplicate location \"" + id + "\"");
    s.locations.push_back(std::move(id));
  }

  s.initial = get_string(field(doc, "", "initial"), "/initial");
  if (!s.has_location(s.initial))
    fail("/initial", "unknown location \"" + s.initial + "\"");

  const json& variables = get_array(field(doc, "", "variables"), "/variables");
  for (std::size_t i = 0; i < variables.size(); ++i) {
    std::string path = "/variables/" + std::to_string(i);
    std::string id = get_string(field(variables[i], path, "id"), path + "/id");
    if (s.find_variable(id) != nullptr) fail(path + "/id", "duplicate variable \"" + id + "\"");
    Domain domain = domain_from_json(field(variables[i], path, "domain"), path + "/domain");
    s.variables.push_back(VarBinding{std::move(id), std::move(domain)});
  }

  const json& gates = get_array(field(doc, "", "gates"), "/gates");
  for (std::size_t i = 0; i < gates.size(); ++i) {
    std::string path = "/gates/" + std::to_string(i);
    Gate g;
    g.name = get_string(field(gates[i], path, "name"), path + "/name");
    if (s.find_gate(g.name) != nullptr) fail(path + "/name", "duplicate gate \"" + g.name + "\"");
    std::string dir = get_string(field(gates[i], path, "direction"), path + "/direction");
    if (dir != "input" && dir != "output")
      fail(path + "/direction", "unknown direction \"" + dir + "\"");
    g.direction = dir == "input" ? Direction::Input : Direction::Output;
    const json& params = get_array(field(gates[i], path, "params"), path + "/params");
    for (std::size_t k = 0; k < params.size(); ++k)
      g.params.push_back(get_string(params[k], path + "/params/" + std::to_string(k)));
    s.gates.push_back(std::move(g));
  }

  const json& switches = get_array(field(doc, "", "switches"), "/switches");
  for (std::size_t i = 0; i < switches.size(); ++i) {
    std::string path = "/switches/" + std::to_string(i);
    const json& j = switches[i];
    Switch sw;
    sw.source = get_string(field(j, path, "source"), path + "/source");
    if (!s.has_location(sw.source))
      fail(path + "/source", "unknown location \"" + sw.source + "\"");
    sw.target = get_string(field(j, path, "target"), path + "/target");
    if (!s.has_location(sw.target))
      fail(path + "/target", "unknown location \"" + sw.target + "\"");
    sw.gate = get_string(field(j, path, "gate"), path + "/gate");
    const Gate* gate = s.find_gate(sw.gate);
    if (gate == nullptr) fail(path + "/gate", "unknown gate \"" + sw.gate + "\"");
    std::string dir = get_string(field(j, path, "direction"), path + "/direction");
    if (dir != "input" && dir != "output")
      fail(path + "/direction", "unknown direction \"" + dir + "\"");
    sw.direction = dir == "input" ? Direction::Input : Direction::Output;
    if (sw.direction != gate->direction)
      fail(path + "/direction", "direction disagrees with gate \"" + sw.gate + "\"");
    const json& params = get_array(field(j, path, "params"), path + "/params");
    for (std::size_t k = 0; k < params.size(); ++k)
      sw.params.push_back(get_string(params[k], path + "/params/" + std::to_string(k)));
    if (sw.params != gate->params)
      fail(path + "/params", "parameters disagree with gate \"" + sw.gate + "\"");
    sw.guard = term_from_json(field(j, path, "guard"), path + "/guard");
    const json& assignment = get_array(field(j, path, "assignment"), path + "/assignment");
    for (std::size_t k = 0; k < assignment.size(); ++k) {
      std::string apath = path + "/assignment/" + std::to_string(k);
      Assign a;
      a.var = get_string(field(assignment[k], apath, "var"), apath + "/var");
      if (s.find_variable(a.var) == nullptr)
        fail(apath + "/var", "unknown variable \"" + a.var + "\"");
      a.term = term_from_json(field(assignment[k], apath, "term"), apath + "/term");
      sw.assignment.push_back(std::move(a));
    }
    sw.scenario = get_string(field(j, path, "scenario"), path + "/scenario");
    sw.step_text = get_string(field(j, path, "step-text"), path + "/step-text");
    s.switches.push_back(std::move(sw));
  }

  std::vector<std::string> violations = validate(s);
  if (!violations.empty()) fail("", violations.front());
  return s;
}

std::string export_tests(const std::vector<FormalTestCase>& tests, const Sts& s) {
  json doc = json::object();
  doc["pickles-schema"] = kSchemaVersion;
  doc["kind"] = "tests";
  doc["system"] = s.name;
  json items = json::array();
  for (const FormalTestCase& tc : tests) {
    json t = json::object();
    t["switches"] = tc.switches;
    json ini = json::array();
    for (const Value& v : tc.ini) ini.push_back(value_to_json(v));
    t["ini"] = std::move(ini);
    json values = json::array();
    for (const std::vector<Value>& step : tc.values) {
      json tuple = json::array();
      for (const Value& v : step) tuple.push_back(value_to_json(v));
      values.push_back(std::move(tuple));
    }
    t["values"] = std::move(values);
    items.push_back(std::move(t));
  }
  doc["tests"] = std::move(items);
  return doc.dump(2) + "\n";
}

std::vector<FormalTestCase> import_tests(const std::string& bytes, const Sts& s) {
  json doc = parse_document(bytes);
  check_header(doc, "tests");
  if (get_string(field(doc, "", "system"), "/system") != s.name)
    fail("/system", "tests were generated for a different system");

  std::vector<FormalTestCase> tests;
  const json& items = get_array(field(doc, "", "tests"), "/tests");
  for (std::size_t i = 0; i < items.size(); ++i) {
    std::string path = "/tests/" + std::to_string(i);
    const json& j = items[i];
    FormalTestCase tc;

    const json& switches = get_array(field(j, path, "switches"), path + "/switches");
    for (std::size_t k = 0; k < switches.size(); ++k) {
      std::string spath = path + "/switches/" + std::to_string(k);
      std::uint64_t idx = get_uint(switches[k], spath);
      if (idx >= s.switches.size()) fail(spath, "unknown switch id");
      tc.switches.push_back(static_cast<std::size_t>(idx));
    }

    const json& ini = get_array(field(j, path, "ini"), path + "/ini");
    if (ini.size() != s.variables.size())
      fail(path + "/ini", "expected one value per declared variable");
    for (std::size_t v = 0; v < ini.size(); ++v) {
      std::string vpath = path + "/ini/" + std::to_string(v);
      Value value = value_from_json(ini[v], vpath);
      if (!domain_contains(s.variables[v].domain, value))
        fail(vpath, "value " + value.str() + " is outside the domain of \"" +
                        s.variables[v].id + "\"");
      tc.ini.push_back(std::move(value));
    }

    const json& values = get_array(field(j, path, "values"), path + "/values");
    if (values.size() != tc.switches.size())
      fail(path + "/values", "expected one value tuple per step");
    for (std::size_t k = 0; k < values.size(); ++k) {
      std::string vpath = path + "/values/" + std::to_string(k);
      const Switch& sw = s.switches[tc.switches[k]];
      const json& tuple = get_array(values[k], vpath);
      if (tuple.size() != sw.params.size())
        fail(vpath, "expected one value per parameter of gate \"" + sw.gate + "\"");
      std::vector<Value> step;
      for (std::size_t p = 0; p < tuple.size(); ++p) {
        std::string ppath = vpath + "/" + std::to_string(p);
        Value value = value_from_json(tuple[p], ppath);
        const VarBinding* binding = s.find_variable(sw.params[p]);
        if (binding == nullptr) fail(ppath, "unknown parameter \"" + sw.params[p] + "\"");
        if (!domain_contains(binding->domain, value))
          fail(ppath, "value " + value.str() + " is outside the domain of \"" +
                          sw.params[p] + "\"");
        step.push_back(std::move(value));
      }
      tc.values.push_back(std::move(step));
    }
    tests.push_back(std::move(tc));
  }
  return tests;
}

SamplingPlan parse_samples(const std::string& bytes) {
  json doc = parse_document(bytes);
  if (!doc.is_object()) fail("", "expected an object mapping variable paths to samples");
  SamplingPlan plan;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    std::string path = "/" + it.key();
    const json& items = get_array(it.value(), path);
    std::vector<Decimal> samples;
    for (std::size_t i = 0; i < items.size(); ++i)
      samples.push_back(parse_decimal(items[i], path + "/" + std::to_string(i)));
    plan.samples[it.key()] = std::move(samples);
  }
  return plan;
}

std::map<std::string, Value> parse_fixed_values(const std::string& bytes, const Sts& s) {
  json doc = parse_document(bytes);
  if (!doc.is_object()) fail("", "expected an object mapping variable ids to values");
  std::map<std::string, Value> fixed;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    std::string path = "/" + it.key();
    const VarBinding* binding = s.find_variable(it.key());
    if (binding == nullptr) fail(path, "unknown variable \"" + it.key() + "\"");
    fixed.emplace(it.key(), plain_value_from_json(it.value(), binding->domain, path));
  }
  return fixed;
}

std::string prune_report_json(const PruneReport& report) {
  json doc = json::object();
  doc["pickles-schema"] = kSchemaVersion;
  doc["kind"] = "prune-report";
  doc["kept-switches"] = report.kept_switches;
  json removed = json::array();
  for (const PruneReport::RemovedSwitch& r : report.removed_switches)
    removed.push_back(json{{"index", r.index},
                           {"scenario", r.scenario},
                           {"switch", r.brief},
                           {"sampling-sensitive", r.sampling_sensitive}});
  doc["removed-switches"] = std::move(removed);
  doc["removed-locations"] = report.removed_locations;
  doc["unreachable-scenarios"] = report.unreachable_scenarios;
  return doc.dump(2) + "\n";
}

}  // namespace pickles
