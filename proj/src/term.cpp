#include "pickles/term.hpp"

#include <algorithm>

namespace pickles {

namespace {
TermPtr wrap(Term&& t) { return TermPtr(new Term(std::move(t))); }
}  // namespace

// The private constructor keeps nodes immutable; factories are the only
// producers, so structural sharing after substitution is safe.
TermPtr Term::constant(Value v) {
  Term t;
  t.kind_ = TermKind::Const;
  t.value_ = std::move(v);
  return wrap(std::move(t));
}

TermPtr Term::loc_var(std::string name) {
  Term t;
  t.kind_ = TermKind::LocVar;
  t.name_ = std::move(name);
  return wrap(std::move(t));
}

TermPtr Term::param(std::string name, int step) {
  Term t;
  t.kind_ = TermKind::Param;
  t.name_ = std::move(name);
  t.step_ = step;
  return wrap(std::move(t));
}

TermPtr Term::elem(int binder) {
  Term t;
  t.kind_ = TermKind::Elem;
  t.binder_ = binder;
  return wrap(std::move(t));
}

TermPtr Term::attr_get(TermPtr of, std::string key) {
  Term t;
  t.kind_ = TermKind::AttrGet;
  t.lhs_ = std::move(of);
  t.name_ = std::move(key);
  return wrap(std::move(t));
}

TermPtr Term::compare(CmpOp op, TermPtr lhs, TermPtr rhs) {
  Term t;
  t.kind_ = TermKind::Compare;
  t.cmp_ = op;
  t.lhs_ = std::move(lhs);
  t.rhs_ = std::move(rhs);
  return wrap(std::move(t));
}

TermPtr Term::connective(ConnOp op, TermPtr lhs, TermPtr rhs) {
  Term t;
  t.kind_ = TermKind::Connective;
  t.conn_ = op;
  t.lhs_ = std::move(lhs);
  t.rhs_ = std::move(rhs);
  return wrap(std::move(t));
}

TermPtr Term::count_where(TermPtr array, TermPtr pred, CountCmp cmp, std::uint64_t count) {
  Term t;
  t.kind_ = TermKind::CountWhere;
  t.lhs_ = std::move(array);
  t.rhs_ = std::move(pred);
  t.count_cmp_ = cmp;
  t.count_ = count;
  return wrap(std::move(t));
}

TermPtr Term::boolean(bool b) {
  Term t;
  t.kind_ = TermKind::BoolConst;
  t.bool_ = b;
  return wrap(std::move(t));
}

std::string to_string(CmpOp op) {
  switch (op) {
    case CmpOp::Eq: return "=";
    case CmpOp::Ne: return "!=";
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Gt: return ">";
    case CmpOp::Ge: return ">=";
  }
  return "?";
}

std::string to_string(ConnOp op) { return op == ConnOp::And ? "AND" : "OR"; }

std::string to_string(CountCmp cmp) {
  switch (cmp) {
    case CountCmp::AtLeast: return ">=";
    case CountCmp::AtMost: return "<=";
    case CountCmp::Exactly: return "=";
    case CountCmp::AllElements: return "= len";
  }
  return "?";
}

std::string Term::str() const {
  switch (kind_) {
    case TermKind::Const: return value_.str();
    case TermKind::LocVar: return name_;
    case TermKind::Param: return step_ >= 0 ? name_ + "@" + std::to_string(step_) : name_;
    case TermKind::Elem: return binder_ == 0 ? "elem" : "elem^" + std::to_string(binder_);
    case TermKind::AttrGet: return lhs_->str() + "." + name_;
    case TermKind::Compare:
      return "(" + lhs_->str() + " " + to_string(cmp_) + " " + rhs_->str() + ")";
    case TermKind::Connective:
      return "(" + lhs_->str() + " " + to_string(conn_) + " " + rhs_->str() + ")";
    case TermKind::CountWhere: {
      std::string bound = count_cmp_ == CountCmp::AllElements
                              ? "= len"
                              : to_string(count_cmp_) + " " + std::to_string(count_);
      return "count(" + lhs_->str() + " : " + rhs_->str() + ") " + bound;
    }
    case TermKind::BoolConst: return bool_ ? "true" : "false";
  }
  return "?";
}

std::string VarKey::str() const {
  std::string s = name;
  if (kind == Kind::Parameter && instance >= 0) s += "@" + std::to_string(instance);
  if (kind == Kind::LocationVar && instance >= 0) s += "@ini";
  return s;
}

int term_compare(const TermPtr& a, const TermPtr& b) {
  if (a->kind() != b->kind())
    return static_cast<int>(a->kind()) < static_cast<int>(b->kind()) ? -1 : 1;
  auto cmp_int = [](auto x, auto y) { return x < y ? -1 : (x > y ? 1 : 0); };
  switch (a->kind()) {
    case TermKind::Const: {
      if (a->value() == b->value()) return 0;
      return a->value() < b->value() ? -1 : 1;
    }
    case TermKind::LocVar: return a->name().compare(b->name()) < 0 ? -1
                                  : a->name() == b->name() ? 0 : 1;
    case TermKind::Param: {
      if (int c = cmp_int(a->name().compare(b->name()), 0)) return c;
      return cmp_int(a->step(), b->step());
    }
    case TermKind::Elem: return cmp_int(a->binder(), b->binder());
    case TermKind::AttrGet: {
      if (int c = cmp_int(a->key().compare(b->key()), 0)) return c;
      return term_compare(a->lhs(), b->lhs());
    }
    case TermKind::Compare: {
      if (int c = cmp_int(static_cast<int>(a->cmp_op()), static_cast<int>(b->cmp_op()))) return c;
      if (int c = term_compare(a->lhs(), b->lhs())) return c;
      return term_compare(a->rhs(), b->rhs());
    }
    case TermKind::Connective: {
      if (int c = cmp_int(static_cast<int>(a->conn_op()), static_cast<int>(b->conn_op()))) return c;
      if (int c = term_compare(a->lhs(), b->lhs())) return c;
      return term_compare(a->rhs(), b->rhs());
    }
    case TermKind::CountWhere: {
      if (int c = cmp_int(static_cast<int>(a->count_cmp()), static_cast<int>(b->count_cmp())))
        return c;
      if (int c = cmp_int(a->count(), b->count())) return c;
      if (int c = term_compare(a->lhs(), b->lhs())) return c;
      return term_compare(a->rhs(), b->rhs());
    }
    case TermKind::BoolConst: return cmp_int(a->bool_value(), b->bool_value());
  }
  return 0;
}

bool term_equal(const TermPtr& a, const TermPtr& b) { return term_compare(a, b) == 0; }

namespace {

const Value& lookup_var(const Valuation& val, VarKey::Kind kind, const std::string& name,
                        int instance) {
  auto it = val.find(VarKey{kind, name, instance});
  if (it == val.end())
    throw EvalError("no value bound for " + VarKey{kind, name, instance}.str());
  return it->second;
}

bool cmp_values(CmpOp op, const Value& a, const Value& b) {
  if (a.kind() != b.kind())
    throw EvalError("comparing values of different kinds: " + a.str() + " vs " + b.str());
  switch (op) {
    case CmpOp::Eq: return a == b;
    case CmpOp::Ne: return !(a == b);
    default: break;
  }
  if (a.kind() == ValueKind::Integer) {
    switch (op) {
      case CmpOp::Lt: return a.as_int() < b.as_int();
      case CmpOp::Le: return a.as_int() <= b.as_int();
      case CmpOp::Gt: return a.as_int() > b.as_int();
      case CmpOp::Ge: return a.as_int() >= b.as_int();
      default: break;
    }
  }
  if (a.kind() == ValueKind::Decimal) {
    switch (op) {
      case CmpOp::Lt: return a.as_decimal() < b.as_decimal();
      case CmpOp::Le: return a.as_decimal() <= b.as_decimal();
      case CmpOp::Gt: return a.as_decimal() > b.as_decimal();
      case CmpOp::Ge: return a.as_decimal() >= b.as_decimal();
      default: break;
    }
  }
  throw EvalError("ordering requires numeric operands: " + a.str() + " vs " + b.str());
}

bool count_holds(CountCmp cmp, std::uint64_t matches, std::uint64_t bound, std::uint64_t len) {
  switch (cmp) {
    case CountCmp::AtLeast: return matches >= bound;
    case CountCmp::AtMost: return matches <= bound;
    case CountCmp::Exactly: return matches == bound;
    case CountCmp::AllElements: return matches == len;
  }
  return false;
}

Value eval_impl(const TermPtr& t, const Valuation& val, std::vector<const Value*>& elems) {
  switch (t->kind()) {
    case TermKind::Const: return t->value();
    case TermKind::BoolConst: return Value::boolean(t->bool_value());
    case TermKind::LocVar:
      return lookup_var(val, VarKey::Kind::LocationVar, t->name(), -1);
    case TermKind::Param:
      return lookup_var(val, VarKey::Kind::Parameter, t->name(), t->step());
    case TermKind::Elem: {
      int depth = static_cast<int>(elems.size()) - 1 - t->binder();
      if (depth < 0) throw EvalError("element reference outside a count predicate");
      return *elems[depth];
    }
    case TermKind::AttrGet: {
      Value base = eval_impl(t->lhs(), val, elems);
      const Value* f = base.field(t->key());
      if (!f) throw EvalError("no attribute '" + t->key() + "' in " + base.str());
      return *f;
    }
    case TermKind::Compare: {
      Value a = eval_impl(t->lhs(), val, elems);
      Value b = eval_impl(t->rhs(), val, elems);
      return Value::boolean(cmp_values(t->cmp_op(), a, b));
    }
    case TermKind::Connective: {
      bool a = eval_impl(t->lhs(), val, elems).as_bool();
      if (t->conn_op() == ConnOp::And && !a) return Value::boolean(false);
      if (t->conn_op() == ConnOp::Or && a) return Value::boolean(true);
      return Value::boolean(eval_impl(t->rhs(), val, elems).as_bool());
    }
    case TermKind::CountWhere: {
      Value arr = eval_impl(t->lhs(), val, elems);
      std::uint64_t matches = 0;
      for (const Value& e : arr.elems()) {
        elems.push_back(&e);
        bool hit = eval_impl(t->rhs(), val, elems).as_bool();
        elems.pop_back();
        if (hit) ++matches;
      }
      return Value::boolean(
          count_holds(t->count_cmp(), matches, t->count(), arr.elems().size()));
    }
  }
  throw EvalError("unreachable term kind");
}

std::optional<Value> partial_impl(const TermPtr& t, const Valuation& val,
                                  std::vector<const Value*>& elems) {
  switch (t->kind()) {
    case TermKind::Const: return t->value();
    case TermKind::BoolConst: return Value::boolean(t->bool_value());
    case TermKind::LocVar: {
      auto it = val.find(VarKey{VarKey::Kind::LocationVar, t->name(), -1});
      if (it == val.end()) return std::nullopt;
      return it->second;
    }
    case TermKind::Param: {
      auto it = val.find(VarKey{VarKey::Kind::Parameter, t->name(), t->step()});
      if (it == val.end()) return std::nullopt;
      return it->second;
    }
    case TermKind::Elem: {
      int depth = static_cast<int>(elems.size()) - 1 - t->binder();
      if (depth < 0) throw EvalError("element reference outside a count predicate");
      return *elems[depth];
    }
    case TermKind::AttrGet: {
      auto base = partial_impl(t->lhs(), val, elems);
      if (!base) return std::nullopt;
      const Value* f = base->field(t->key());
      if (!f) throw EvalError("no attribute '" + t->key() + "' in " + base->str());
      return *f;
    }
    case TermKind::Compare: {
      auto a = partial_impl(t->lhs(), val, elems);
      auto b = partial_impl(t->rhs(), val, elems);
      if (!a || !b) return std::nullopt;
      return Value::boolean(cmp_values(t->cmp_op(), *a, *b));
    }
    case TermKind::Connective: {
      auto a = partial_impl(t->lhs(), val, elems);
      auto b = partial_impl(t->rhs(), val, elems);
      bool is_and = t->conn_op() == ConnOp::And;
      // A decided operand can settle the connective on its own.
      if (a && a->as_bool() == !is_and) return Value::boolean(!is_and);
      if (b && b->as_bool() == !is_and) return Value::boolean(!is_and);
      if (a && b) return Value::boolean(is_and ? b->as_bool() : a->as_bool() || b->as_bool());
      return std::nullopt;
    }
    case TermKind::CountWhere: {
      auto arr = partial_impl(t->lhs(), val, elems);
      if (!arr) return std::nullopt;
      std::uint64_t matches = 0;
      for (const Value& e : arr->elems()) {
        elems.push_back(&e);
        auto hit = partial_impl(t->rhs(), val, elems);
        elems.pop_back();
        if (!hit) return std::nullopt;
        if (hit->as_bool()) ++matches;
      }
      return Value::boolean(
          count_holds(t->count_cmp(), matches, t->count(), arr->elems().size()));
    }
  }
  throw EvalError("unreachable term kind");
}

void collect_free(const TermPtr& t, std::set<VarKey>& out) {
  switch (t->kind()) {
    case TermKind::LocVar:
      out.insert(VarKey{VarKey::Kind::LocationVar, t->name(), -1});
      return;
    case TermKind::Param:
      out.insert(VarKey{VarKey::Kind::Parameter, t->name(), t->step()});
      return;
    default:
      if (t->lhs()) collect_free(t->lhs(), out);
      if (t->rhs()) collect_free(t->rhs(), out);
  }
}

}  // namespace

Value evaluate(const TermPtr& t, const Valuation& val) {
  std::vector<const Value*> elems;
  return eval_impl(t, val, elems);
}

bool evaluate_bool(const TermPtr& t, const Valuation& val) {
  return evaluate(t, val).as_bool();
}

std::optional<Value> evaluate_partial(const TermPtr& t, const Valuation& val) {
  std::vector<const Value*> elems;
  return partial_impl(t, val, elems);
}

std::set<VarKey> free_vars(const TermPtr& t) {
  std::set<VarKey> out;
  collect_free(t, out);
  return out;
}

TermPtr substitute(const TermPtr& t, const std::map<std::string, TermPtr>& loc_state,
                   int step) {
  switch (t->kind()) {
    case TermKind::Const:
    case TermKind::BoolConst:
    case TermKind::Elem:
      return t;
    case TermKind::LocVar: {
      auto it = loc_state.find(t->name());
      if (it == loc_state.end())
        throw InternalError("no symbolic state for location variable '" + t->name() + "'");
      return it->second;
    }
    case TermKind::Param:
      return t->step() >= 0 ? t : Term::param(t->name(), step);
    case TermKind::AttrGet:
      return Term::attr_get(substitute(t->lhs(), loc_state, step), t->key());
    case TermKind::Compare:
      return Term::compare(t->cmp_op(), substitute(t->lhs(), loc_state, step),
                           substitute(t->rhs(), loc_state, step));
    case TermKind::Connective:
      return Term::connective(t->conn_op(), substitute(t->lhs(), loc_state, step),
                              substitute(t->rhs(), loc_state, step));
    case TermKind::CountWhere:
      return Term::count_where(substitute(t->lhs(), loc_state, step),
                               substitute(t->rhs(), loc_state, step), t->count_cmp(),
                               t->count());
  }
  throw InternalError("unreachable term kind");
}

TermPtr negate(const TermPtr& t) {
  switch (t->kind()) {
    case TermKind::BoolConst:
      return Term::boolean(!t->bool_value());
    case TermKind::Const:
      if (t->value().kind() == ValueKind::Boolean)
        return Term::boolean(!t->value().as_bool());
      throw SemanticError("cannot negate non-boolean constant " + t->value().str());
    case TermKind::LocVar:
    case TermKind::Param:
    case TermKind::Elem:
    case TermKind::AttrGet:
      return Term::compare(CmpOp::Eq, t, Term::constant(Value::boolean(false)));
    case TermKind::Compare: {
      CmpOp flipped;
      switch (t->cmp_op()) {
        case CmpOp::Eq: flipped = CmpOp::Ne; break;
        case CmpOp::Ne: flipped = CmpOp::Eq; break;
        case CmpOp::Lt: flipped = CmpOp::Ge; break;
        case CmpOp::Le: flipped = CmpOp::Gt; break;
        case CmpOp::Gt: flipped = CmpOp::Le; break;
        case CmpOp::Ge: flipped = CmpOp::Lt; break;
        default: throw InternalError("unreachable comparison op");
      }
      return Term::compare(flipped, t->lhs(), t->rhs());
    }
    case TermKind::Connective:
      return Term::connective(t->conn_op() == ConnOp::And ? ConnOp::Or : ConnOp::And,
                              negate(t->lhs()), negate(t->rhs()));
    case TermKind::CountWhere:
      switch (t->count_cmp()) {
        case CountCmp::AtLeast:
          if (t->count() == 0) return Term::boolean(false);
          return Term::count_where(t->lhs(), t->rhs(), CountCmp::AtMost, t->count() - 1);
        case CountCmp::AtMost:
          return Term::count_where(t->lhs(), t->rhs(), CountCmp::AtLeast, t->count() + 1);
        case CountCmp::Exactly:
          if (t->count() == 0)
            return Term::count_where(t->lhs(), t->rhs(), CountCmp::AtLeast, 1);
          return Term::connective(
              ConnOp::Or,
              Term::count_where(t->lhs(), t->rhs(), CountCmp::AtMost, t->count() - 1),
              Term::count_where(t->lhs(), t->rhs(), CountCmp::AtLeast, t->count() + 1));
        case CountCmp::AllElements:
          return Term::count_where(t->lhs(), negate(t->rhs()), CountCmp::AtLeast, 1);
      }
      throw InternalError("unreachable count comparator");
  }
  throw InternalError("unreachable term kind");
}

namespace {

void flatten(const TermPtr& t, ConnOp op, std::vector<TermPtr>& leaves) {
  if (t->kind() == TermKind::Connective && t->conn_op() == op) {
    flatten(t->lhs(), op, leaves);
    flatten(t->rhs(), op, leaves);
  } else {
    leaves.push_back(t);
  }
}

}  // namespace

TermPtr normalize(const TermPtr& t) {
  switch (t->kind()) {
    case TermKind::Const:
    case TermKind::BoolConst:
    case TermKind::LocVar:
    case TermKind::Param:
    case TermKind::Elem:
      return t;
    case TermKind::AttrGet:
      return Term::attr_get(normalize(t->lhs()), t->key());
    case TermKind::Compare: {
      TermPtr lhs = normalize(t->lhs());
      TermPtr rhs = normalize(t->rhs());
      CmpOp op = t->cmp_op();
      if (op == CmpOp::Gt || op == CmpOp::Ge) {
        std::swap(lhs, rhs);
        op = op == CmpOp::Gt ? CmpOp::Lt : CmpOp::Le;
      }
      auto is_true_const = [](const TermPtr& x) {
        return (x->kind() == TermKind::BoolConst && x->bool_value()) ||
               (x->kind() == TermKind::Const && x->value().kind() == ValueKind::Boolean &&
                x->value().as_bool());
      };
      if (op == CmpOp::Eq) {
        if (is_true_const(rhs)) return lhs;
        if (is_true_const(lhs)) return rhs;
      }
      return Term::compare(op, lhs, rhs);
    }
    case TermKind::CountWhere: {
      if (t->count_cmp() == CountCmp::AllElements) {
        // "every element matches" and "no element fails" are the same test;
        // the zero-count form is the canonical one.
        return normalize(Term::count_where(t->lhs(), negate(t->rhs()), CountCmp::Exactly, 0));
      }
      return Term::count_where(normalize(t->lhs()), normalize(t->rhs()), t->count_cmp(),
                               t->count());
    }
    case TermKind::Connective: {
      std::vector<TermPtr> raw;
      flatten(t, t->conn_op(), raw);
      bool is_and = t->conn_op() == ConnOp::And;
      std::vector<TermPtr> leaves;
      for (const TermPtr& leaf : raw) {
        TermPtr n = normalize(leaf);
        if (n->kind() == TermKind::Connective && n->conn_op() == t->conn_op()) {
          flatten(n, t->conn_op(), leaves);
          continue;
        }
        if (n->kind() == TermKind::BoolConst) {
          if (n->bool_value() == is_and) continue;        // neutral element
          return Term::boolean(!is_and);                  // absorbing element
        }
        leaves.push_back(n);
      }
      if (leaves.empty()) return Term::boolean(is_and);
      std::sort(leaves.begin(), leaves.end(),
                [](const TermPtr& a, const TermPtr& b) { return term_compare(a, b) < 0; });
      leaves.erase(std::unique(leaves.begin(), leaves.end(),
                               [](const TermPtr& a, const TermPtr& b) {
                                 return term_equal(a, b);
                               }),
                   leaves.end());
      TermPtr acc = leaves.front();
      for (std::size_t i = 1; i < leaves.size(); ++i)
        acc = Term::connective(t->conn_op(), acc, leaves[i]);
      return acc;
    }
  }
  throw InternalError("unreachable term kind");
}

Type term_type(const TermPtr& t,
               const std::function<Type(VarKey::Kind, const std::string&)>& lookup,
               std::vector<Type>* elem_types) {
  std::vector<Type> local;
  std::vector<Type>* stack = elem_types ? elem_types : &local;
  switch (t->kind()) {
    case TermKind::Const: return type_of(t->value());
    case TermKind::BoolConst: return Type::boolean();
    case TermKind::LocVar: return lookup(VarKey::Kind::LocationVar, t->name());
    case TermKind::Param: return lookup(VarKey::Kind::Parameter, t->name());
    case TermKind::Elem: {
      int depth = static_cast<int>(stack->size()) - 1 - t->binder();
      if (depth < 0)
        throw SemanticError("element reference outside a count predicate");
      return (*stack)[depth];
    }
    case TermKind::AttrGet: {
      Type base = term_type(t->lhs(), lookup, stack);
      if (base.kind() != TypeKind::Struct)
        throw SemanticError("attribute access on non-structure type " + base.str());
      for (const auto& a : base.attrs())
        if (a.key == t->key()) return a.type;
      throw SemanticError("no attribute '" + t->key() + "' in " + base.str());
    }
    case TermKind::Compare: {
      Type a = term_type(t->lhs(), lookup, stack);
      Type b = term_type(t->rhs(), lookup, stack);
      if (!(a == b))
        throw SemanticError("comparison between incompatible types " + a.str() + " and " +
                            b.str());
      if (!a.is_primitive())
        throw SemanticError("comparison requires primitive operands, got " + a.str());
      if (t->cmp_op() != CmpOp::Eq && t->cmp_op() != CmpOp::Ne &&
          a.kind() != TypeKind::Integer && a.kind() != TypeKind::Decimal)
        throw SemanticError("ordering comparison requires numeric operands, got " + a.str());
      return Type::boolean();
    }
    case TermKind::Connective: {
      Type a = term_type(t->lhs(), lookup, stack);
      Type b = term_type(t->rhs(), lookup, stack);
      if (a.kind() != TypeKind::Boolean || b.kind() != TypeKind::Boolean)
        throw SemanticError("connective requires boolean operands");
      return Type::boolean();
    }
    case TermKind::CountWhere: {
      Type arr = term_type(t->lhs(), lookup, stack);
      if (arr.kind() != TypeKind::Array)
        throw SemanticError("count requires an array operand, got " + arr.str());
      stack->push_back(arr.element());
      Type pred = term_type(t->rhs(), lookup, stack);
      stack->pop_back();
      if (pred.kind() != TypeKind::Boolean)
        throw SemanticError("count predicate must be boolean");
      return Type::boolean();
    }
  }
  throw InternalError("unreachable term kind");
}

}  // namespace pickles
