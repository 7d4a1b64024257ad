#include "pickles/translate.hpp"

#include <algorithm>
#include <string>

#include "pickles/diagnostics.hpp"
#include "pickles/printer.hpp"

namespace pickles {
namespace {

[[noreturn]] void fail(const SourcePos& pos, const std::string& msg) {
  throw SemanticError(msg, pos);
}

bool is_int_literal(const std::string& s) {
  return s.find('.') == std::string::npos;
}

std::int64_t parse_int(const std::string& s, const SourcePos& pos) {
  if (!is_int_literal(s)) fail(pos, "expected an integer, got '" + s + "'");
  try {
    return std::stoll(s);
  } catch (const std::exception&) {
    fail(pos, "integer literal '" + s + "' out of range");
  }
}

Decimal parse_dec(const std::string& s, const SourcePos& pos) {
  try {
    return Decimal::parse(s);
  } catch (const Error& e) {
    fail(pos, e.what());
  }
}

Domain domain_from_desc(const TypeDescAst& t, const std::string& where,
                        std::set<std::string>& attr_keys) {
  switch (t.kind) {
    case TypeDescAst::Kind::Boolean: {
      if (t.range.kind != RangeAst::Kind::Set)
        fail(t.pos, "'" + where + "': a boolean range is a value set");
      std::vector<bool> vals;
      for (const std::string& item : t.range.items) {
        if (item == "true") {
          vals.push_back(true);
        } else if (item == "false") {
          vals.push_back(false);
        } else {
          fail(t.range.pos, "'" + where + "': '" + item + "' is not a boolean value");
        }
      }
      try {
        return Domain::booleans(vals);
      } catch (const Error& e) {
        fail(t.range.pos, "'" + where + "': " + e.what());
      }
    }
    case TypeDescAst::Kind::String: {
      if (t.range.kind != RangeAst::Kind::Set)
        fail(t.pos, "'" + where + "': a string range is a value set");
      try {
        return Domain::strings(t.range.items);
      } catch (const Error& e) {
        fail(t.range.pos, "'" + where + "': " + e.what());
      }
    }
    case TypeDescAst::Kind::Integer: {
      if (t.range.kind != RangeAst::Kind::Interval)
        fail(t.pos, "'" + where + "': an integer range is an interval, not a value set");
      if (t.range.lo_open || t.range.hi_open)
        fail(t.range.pos, "'" + where + "': integer intervals are closed");
      std::int64_t lo = parse_int(t.range.lo, t.range.pos);
      std::int64_t hi = parse_int(t.range.hi, t.range.pos);
      try {
        return Domain::int_interval(lo, hi);
      } catch (const Error& e) {
        fail(t.range.pos, "'" + where + "': " + e.what());
      }
    }
    case TypeDescAst::Kind::Decimal: {
      if (t.range.kind != RangeAst::Kind::Interval)
        fail(t.pos, "'" + where + "': a decimal range is an interval, not a value set");
      Decimal lo = parse_dec(t.range.lo, t.range.pos);
      Decimal hi = parse_dec(t.range.hi, t.range.pos);
      try {
        return Domain::dec_interval(lo, hi, t.range.lo_open, t.range.hi_open);
      } catch (const Error& e) {
        fail(t.range.pos, "'" + where + "': " + e.what());
      }
    }
    case TypeDescAst::Kind::Array: {
      Domain elem = domain_from_desc(t.element.at(0), where, attr_keys);
      try {
        return Domain::array(std::move(elem), t.card_lo, t.card_hi);
      } catch (const Error& e) {
        fail(t.pos, "'" + where + "': " + e.what());
      }
    }
    case TypeDescAst::Kind::Struct: {
      std::vector<Domain::Attr> attrs;
      for (const TypeDescAst::AttrDesc& a : t.attrs) {
        attr_keys.insert(a.id);
        attrs.push_back({a.id, domain_from_desc(a.desc, where + "/" + a.id, attr_keys)});
      }
      try {
        return Domain::structure(std::move(attrs));
      } catch (const Error& e) {
        fail(t.pos, "'" + where + "': " + e.what());
      }
    }
  }
  throw InternalError("unreachable type description kind");
}

// Gate parameters keep the settings-block declaration order, whatever
// order the step lists them in.
std::vector<std::string> canonical_params(const std::vector<std::string>& params,
                                          const SuiteContext& ctx, const SourcePos& pos) {
  std::vector<std::string> sorted = params;
  for (const std::string& p : sorted)
    if (!ctx.find_binding(p)) fail(pos, "unknown variable \"" + p + "\"");
  std::sort(sorted.begin(), sorted.end(),
            [&](const std::string& a, const std::string& b) {
              return ctx.binding_index(a) < ctx.binding_index(b);
            });
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i] == sorted[i - 1]) fail(pos, "parameter \"" + sorted[i] + "\" repeats");
  return sorted;
}

void register_gate(const StepAst& step, const SuiteContext& ctx, std::vector<Gate>& gates) {
  Direction dir = step.dir == StepDir::In ? Direction::Input : Direction::Output;
  std::vector<std::string> params = canonical_params(step.params, ctx, step.pos);
  for (Gate& g : gates) {
    if (g.name != step.action) continue;
    if (g.direction != dir)
      fail(step.pos, "action '" + step.action + "' is used as both input and output");
    if (g.params != params)
      fail(step.pos, "action '" + step.action + "' is used with a different parameter list");
    return;
  }
  gates.push_back({step.action, dir, std::move(params)});
}

struct GuardCtx {
  const SuiteContext& ctx;
  GuardPosition position;
  const std::vector<std::string>& step_params;
};

// A guard's subject: the term it constrains plus that term's domain,
// which types bare literals on the right-hand side.
struct Subject {
  TermPtr term;
  const Domain* domain;
};

Subject resolve_ref(const std::string& name, bool stored, const GuardCtx& g,
                    const SourcePos& pos) {
  const VarBinding* b = g.ctx.find_binding(name);
  if (!b) fail(pos, "unknown variable \"" + name + "\"");
  bool as_param = g.position == GuardPosition::Step && !stored &&
                  std::find(g.step_params.begin(), g.step_params.end(), name) !=
                      g.step_params.end();
  return {as_param ? Term::param(name) : Term::loc_var(name), &b->domain};
}

TermPtr const_from_text(const std::string& text, const Domain* d, const SourcePos& pos) {
  if (d) {
    switch (d->kind()) {
      case DomainKind::Booleans:
        if (text == "true") return Term::constant(Value::boolean(true));
        if (text == "false") return Term::constant(Value::boolean(false));
        fail(pos, "'" + text + "' is not a boolean value");
      case DomainKind::Strings:
        return Term::constant(Value::string(text));
      default:
        fail(pos, "'" + text + "' does not fit a numeric comparison");
    }
  }
  if (text == "true") return Term::constant(Value::boolean(true));
  if (text == "false") return Term::constant(Value::boolean(false));
  return Term::constant(Value::string(text));
}

TermPtr const_from_number(const std::string& number, const Domain* d, const SourcePos& pos) {
  DomainKind kind = d           ? d->kind()
                    : is_int_literal(number) ? DomainKind::IntInterval
                                             : DomainKind::DecInterval;
  switch (kind) {
    case DomainKind::IntInterval:
      return Term::constant(Value::integer(parse_int(number, pos)));
    case DomainKind::DecInterval:
      return Term::constant(Value::decimal(parse_dec(number, pos)));
    default:
      fail(pos, "a number cannot compare against this variable's type");
  }
}

TermPtr rhs_to_term(const GuardAst::Rhs& rhs, const Subject& subj, const GuardCtx& g,
                    const SourcePos& pos) {
  switch (rhs.kind) {
    case GuardAst::Rhs::Kind::Number: return const_from_number(rhs.number, subj.domain, pos);
    case GuardAst::Rhs::Kind::Text: return const_from_text(rhs.text, subj.domain, pos);
    case GuardAst::Rhs::Kind::VarRef: return resolve_ref(rhs.var, rhs.stored, g, pos).term;
    case GuardAst::Rhs::Kind::Range:
      throw InternalError("range right-hand side handled by the caller");
  }
  throw InternalError("unreachable rhs kind");
}

CmpOp cmp_of(GuardAst::Op op) {
  switch (op) {
    case GuardAst::Op::Eq: return CmpOp::Eq;
    case GuardAst::Op::Ne: return CmpOp::Ne;
    case GuardAst::Op::Gt: return CmpOp::Gt;
    case GuardAst::Op::Lt: return CmpOp::Lt;
    case GuardAst::Op::Ge: return CmpOp::Ge;
    case GuardAst::Op::Le: return CmpOp::Le;
    case GuardAst::Op::Between: break;
  }
  throw InternalError("no direct comparison for this operator");
}

// Membership in a range: a disjunction over a value set, a bounds
// conjunction over an interval.
TermPtr membership(const RangeAst& r, const Subject& subj, const SourcePos& pos) {
  if (r.kind == RangeAst::Kind::Set) {
    TermPtr out;
    for (const std::string& item : r.items) {
      DomainKind kind = subj.domain ? subj.domain->kind() : DomainKind::Strings;
      TermPtr c = (kind == DomainKind::IntInterval || kind == DomainKind::DecInterval)
                      ? const_from_number(item, subj.domain, pos)
                      : const_from_text(item, subj.domain, pos);
      TermPtr eq = Term::compare(CmpOp::Eq, subj.term, c);
      out = out ? Term::connective(ConnOp::Or, out, eq) : eq;
    }
    return out;
  }
  TermPtr lo = const_from_number(r.lo, subj.domain, pos);
  TermPtr hi = const_from_number(r.hi, subj.domain, pos);
  return Term::connective(ConnOp::And,
                          Term::compare(r.lo_open ? CmpOp::Gt : CmpOp::Ge, subj.term, lo),
                          Term::compare(r.hi_open ? CmpOp::Lt : CmpOp::Le, subj.term, hi));
}

TermPtr map_guard(const GuardAst& guard, const Subject& subj, const GuardCtx& g);

TermPtr map_prim(const GuardAst& guard, const Subject& subj, const GuardCtx& g) {
  if (guard.op == GuardAst::Op::Between) {
    TermPtr lo = rhs_to_term(guard.rhs, subj, g, guard.pos);
    TermPtr hi = rhs_to_term(guard.rhs2, subj, g, guard.pos);
    return Term::connective(ConnOp::And, Term::compare(CmpOp::Ge, subj.term, lo),
                            Term::compare(CmpOp::Le, subj.term, hi));
  }
  if (guard.rhs.kind == GuardAst::Rhs::Kind::Range) {
    if (guard.op != GuardAst::Op::Eq && guard.op != GuardAst::Op::Ne)
      fail(guard.pos, "a range admits only equality comparisons");
    TermPtr in = membership(guard.rhs.range, subj, guard.pos);
    return guard.op == GuardAst::Op::Eq ? in : negate(in);
  }
  return Term::compare(cmp_of(guard.op), subj.term,
                       rhs_to_term(guard.rhs, subj, g, guard.pos));
}

// AND binds tighter than OR; runs of one connective associate left.
TermPtr fold_connectives(const std::vector<TermPtr>& terms, const std::vector<ConnAst>& conns) {
  std::vector<TermPtr> groups;
  TermPtr run = terms.at(0);
  for (std::size_t i = 0; i < conns.size(); ++i) {
    if (conns[i] == ConnAst::And) {
      run = Term::connective(ConnOp::And, run, terms[i + 1]);
    } else {
      groups.push_back(run);
      run = terms[i + 1];
    }
  }
  groups.push_back(run);
  TermPtr out = groups[0];
  for (std::size_t i = 1; i < groups.size(); ++i)
    out = Term::connective(ConnOp::Or, out, groups[i]);
  return out;
}

TermPtr map_guard(const GuardAst& guard, const Subject& subj, const GuardCtx& g) {
  switch (guard.kind) {
    case GuardAst::Kind::Prim: return map_prim(guard, subj, g);
    case GuardAst::Kind::Array: {
      if (subj.domain && subj.domain->kind() != DomainKind::Array)
        fail(guard.pos, "element quantification needs an array variable");
      const Domain* elem_domain = subj.domain ? &subj.domain->element() : nullptr;
      TermPtr pred = map_guard(guard.element.at(0), {Term::elem(0), elem_domain}, g);
      CountCmp cmp = CountCmp::AllElements;
      switch (guard.quant) {
        case GuardAst::Quant::All: cmp = CountCmp::AllElements; break;
        case GuardAst::Quant::AtLeast: cmp = CountCmp::AtLeast; break;
        case GuardAst::Quant::AtMost: cmp = CountCmp::AtMost; break;
        case GuardAst::Quant::Exactly: cmp = CountCmp::Exactly; break;
      }
      return Term::count_where(subj.term, pred, cmp,
                               guard.quant == GuardAst::Quant::All ? 0 : guard.count);
    }
    case GuardAst::Kind::Struct: {
      if (subj.domain && subj.domain->kind() != DomainKind::Struct)
        fail(guard.pos, "attribute conditions need a structure");
      std::vector<TermPtr> terms;
      for (const GuardAst::AttrGuard& ag : guard.attr_guards) {
        const Domain* attr_domain = nullptr;
        if (subj.domain) {
          for (const Domain::Attr& a : subj.domain->attrs())
            if (a.key == ag.attr) attr_domain = &a.domain;
          if (!attr_domain) fail(guard.pos, "unknown attribute \"" + ag.attr + "\"");
        }
        terms.push_back(
            map_guard(ag.guard, {Term::attr_get(subj.term, ag.attr), attr_domain}, g));
      }
      return fold_connectives(terms, guard.attr_conns);
    }
  }
  throw InternalError("unreachable guard kind");
}

Type binding_type(const SuiteContext& ctx, VarKey::Kind, const std::string& name) {
  const VarBinding* b = ctx.find_binding(name);
  if (!b) throw SemanticError("unknown variable \"" + name + "\"");
  return b->type();
}

}  // namespace

const VarBinding* SuiteContext::find_binding(const std::string& id) const {
  for (const VarBinding& b : bindings)
    if (b.id == id) return &b;
  return nullptr;
}

const Gate* SuiteContext::find_gate(const std::string& name) const {
  for (const Gate& g : gates)
    if (g.name == name) return &g;
  return nullptr;
}

std::size_t SuiteContext::binding_index(const std::string& id) const {
  for (std::size_t i = 0; i < bindings.size(); ++i)
    if (bindings[i].id == id) return i;
  throw InternalError("no binding for \"" + id + "\"");
}

SuiteContext build_context(const SpecSuiteAst& suite) {
  SuiteContext ctx;
  for (const VarDeclAst& decl : suite.vars) {
    if (ctx.find_binding(decl.id))
      fail(decl.pos, "variable \"" + decl.id + "\" declared twice");
    ctx.bindings.push_back({decl.id, domain_from_desc(decl.desc, decl.id, ctx.attr_keys)});
  }
  for (const std::string& key : ctx.attr_keys)
    if (ctx.find_binding(key))
      throw SemanticError("attribute key \"" + key + "\" collides with a variable name");
  for (const ScenarioAst& sc : suite.scenarios) {
    for (const StepAst& s : sc.when) register_gate(s, ctx, ctx.gates);
    for (const StepAst& s : sc.then) register_gate(s, ctx, ctx.gates);
  }
  return ctx;
}

TermPtr map_guard_block(const GuardBlockAst& block, const SuiteContext& ctx,
                        GuardPosition position,
                        const std::vector<std::string>& step_params) {
  GuardCtx g{ctx, position, step_params};
  std::vector<TermPtr> terms;
  for (const GuardClauseAst& clause : block.clauses) {
    Subject subj = resolve_ref(clause.var, clause.stored, g, clause.pos);
    terms.push_back(map_guard(clause.guard, subj, g));
  }
  return fold_connectives(terms, block.conns);
}

Sts translate_scenario(const ScenarioAst& sc, int ordinal, const SuiteContext& ctx) {
  std::vector<const StepAst*> steps;
  for (const StepAst& s : sc.when) steps.push_back(&s);
  for (const StepAst& s : sc.then) steps.push_back(&s);

  Sts sts;
  sts.name = "s" + std::to_string(ordinal);
  sts.ordinal = ordinal;
  sts.variables = ctx.bindings;
  sts.gates = ctx.gates;
  for (std::size_t j = 0; j <= steps.size(); ++j)
    sts.locations.push_back("s" + std::to_string(ordinal) + ".l" + std::to_string(j + 1));
  sts.initial = sts.locations.front();

  TermPtr ig;
  if (sc.given && sc.given->guard)
    ig = map_guard_block(*sc.given->guard, ctx, GuardPosition::Given);

  auto lookup = [&ctx](VarKey::Kind k, const std::string& name) {
    return binding_type(ctx, k, name);
  };

  for (std::size_t j = 0; j < steps.size(); ++j) {
    const StepAst& step = *steps[j];
    const Gate* gate = ctx.find_gate(step.action);
    if (!gate) throw InternalError("gate '" + step.action + "' not registered");

    Switch sw;
    sw.source = sts.locations[j];
    sw.target = sts.locations[j + 1];
    sw.gate = gate->name;
    sw.params = gate->params;
    sw.direction = gate->direction;
    sw.guard = step.guard ? map_guard_block(*step.guard, ctx, GuardPosition::Step, gate->params)
                          : Term::boolean(true);
    if (j == 0 && ig) sw.guard = Term::connective(ConnOp::And, sw.guard, ig);
    for (const std::string& p : gate->params) sw.assignment.push_back({p, Term::param(p)});
    sw.scenario = sc.title;
    std::string text = print_step_body(step);
    while (!text.empty() && text.back() == '\n') text.pop_back();
    sw.step_text = text;

    if (term_type(sw.guard, lookup) != Type::boolean())
      throw SemanticError("guard of step '" + step.action + "' is not a condition", step.pos);
    sts.switches.push_back(std::move(sw));
  }
  return sts;
}

TranslationResult translate_suite(const SpecSuiteAst& suite) {
  TranslationResult out;
  out.context = build_context(suite);
  for (std::size_t i = 0; i < suite.scenarios.size(); ++i) {
    const ScenarioAst& sc = suite.scenarios[i];
    Sts sts = translate_scenario(sc, static_cast<int>(i) + 1, out.context);
    (sc.primary() ? out.primary : out.secondary).push_back(std::move(sts));
  }
  return out;
}

namespace {

void collect_attr_keys(const Domain& d, std::set<std::string>& keys) {
  if (d.kind() == DomainKind::Array) collect_attr_keys(d.element(), keys);
  if (d.kind() == DomainKind::Struct) {
    for (const Domain::Attr& a : d.attrs()) {
      keys.insert(a.key);
      collect_attr_keys(a.domain, keys);
    }
  }
}

}  // namespace

SuiteContext context_of(const Sts& s) {
  SuiteContext ctx;
  ctx.bindings = s.variables;
  ctx.gates = s.gates;
  for (const VarBinding& b : s.variables) collect_attr_keys(b.domain, ctx.attr_keys);
  return ctx;
}

Value value_from_ast(const ValueAst& v, const Domain& d) {
  Value out;
  switch (d.kind()) {
    case DomainKind::Booleans: {
      if (v.kind != ValueAst::Kind::Text || (v.text != "true" && v.text != "false"))
        fail(v.pos, "expected a boolean value");
      out = Value::boolean(v.text == "true");
      break;
    }
    case DomainKind::Strings: {
      if (v.kind != ValueAst::Kind::Text) fail(v.pos, "expected a text value");
      out = Value::string(v.text);
      break;
    }
    case DomainKind::IntInterval: {
      if (v.kind != ValueAst::Kind::Number) fail(v.pos, "expected a number");
      out = Value::integer(parse_int(v.number, v.pos));
      break;
    }
    case DomainKind::DecInterval: {
      if (v.kind != ValueAst::Kind::Number) fail(v.pos, "expected a number");
      out = Value::decimal(parse_dec(v.number, v.pos));
      break;
    }
    case DomainKind::Array: {
      if (v.kind != ValueAst::Kind::Array) fail(v.pos, "expected indexed array entries");
      std::vector<Value> elems;
      for (const ValueAst& item : v.items) elems.push_back(value_from_ast(item, d.element()));
      out = Value::array(std::move(elems));
      break;
    }
    case DomainKind::Struct: {
      if (v.kind != ValueAst::Kind::Struct) fail(v.pos, "expected attribute values in braces");
      std::vector<Value::Field> fields;
      for (const Domain::Attr& attr : d.attrs()) {
        const ValueAst* found = nullptr;
        for (const ValueAst::KeyVal& kv : v.fields)
          if (kv.key == attr.key) {
            if (found) fail(v.pos, "attribute \"" + attr.key + "\" appears twice");
            found = &kv.value;
          }
        if (!found) fail(v.pos, "missing attribute \"" + attr.key + "\"");
        fields.push_back({attr.key, value_from_ast(*found, attr.domain)});
      }
      if (v.fields.size() != d.attrs().size()) fail(v.pos, "unknown attribute in value");
      out = Value::structure(std::move(fields));
      break;
    }
  }
  if (!domain_contains(d, out))
    fail(v.pos, "value " + out.str() + " lies outside the declared range");
  return out;
}

void check_testcase(const TestCaseAst& tc, const SuiteContext& ctx) {
  std::set<std::string> defined;
  for (const ValueDefAst& def : tc.init) {
    const VarBinding* b = ctx.find_binding(def.var);
    if (!b) fail(def.pos, "unknown variable \"" + def.var + "\"");
    if (!defined.insert(def.var).second)
      fail(def.pos, "variable \"" + def.var + "\" initialized twice");
    value_from_ast(def.value, b->domain);
  }
  for (const VarBinding& b : ctx.bindings)
    if (!defined.count(b.id))
      throw SemanticError("initialization misses variable \"" + b.id + "\"");

  auto lookup = [&ctx](VarKey::Kind k, const std::string& name) {
    return binding_type(ctx, k, name);
  };
  for (const StepAst& step : tc.steps) {
    const Gate* gate = ctx.find_gate(step.action);
    if (!gate) fail(step.pos, "unknown action '" + step.action + "'");
    Direction dir = step.dir == StepDir::In ? Direction::Input : Direction::Output;
    if (gate->direction != dir)
      fail(step.pos, "action '" + step.action + "' has the opposite direction");
    std::vector<std::string> params = canonical_params(step.params, ctx, step.pos);
    if (params != gate->params)
      fail(step.pos, "action '" + step.action + "' expects a different parameter list");

    if (step.dir == StepDir::In) {
      if (gate->params.empty() != !step.has_values)
        fail(step.pos, gate->params.empty() ? "this input carries no values"
                                            : "this input needs a value block");
      std::set<std::string> given;
      for (const ValueDefAst& def : step.values) {
        const VarBinding* b = ctx.find_binding(def.var);
        if (!b || std::find(gate->params.begin(), gate->params.end(), def.var) ==
                      gate->params.end())
          fail(def.pos, "\"" + def.var + "\" is not a parameter of this input");
        if (!given.insert(def.var).second)
          fail(def.pos, "parameter \"" + def.var + "\" valued twice");
        value_from_ast(def.value, b->domain);
      }
      for (const std::string& p : gate->params)
        if (!given.count(p)) fail(step.pos, "missing value for parameter \"" + p + "\"");
    } else if (step.guard) {
      TermPtr g = map_guard_block(*step.guard, ctx, GuardPosition::Step, gate->params);
      if (term_type(g, lookup) != Type::boolean())
        fail(step.pos, "output condition is not a condition");
    }
  }
}

}  // namespace pickles
