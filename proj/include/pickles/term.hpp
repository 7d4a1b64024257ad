// Guard and assignment terms: an immutable expression tree over location
// variables, switch parameters, and bound array elements.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pickles/value.hpp"

namespace pickles {

enum class TermKind {
  Const,      // literal value
  LocVar,     // location variable; in a path condition, its initial copy
  Param,      // switch parameter; `step` >= 0 names a per-step instance
  Elem,       // array element bound by the enclosing CountWhere predicate
  AttrGet,    // structure attribute access
  Compare,    // binary comparison over primitives
  Connective, // binary conjunction or disjunction
  CountWhere, // cardinality test over an array's matching elements
  BoolConst,  // literal truth value used as a guard
};

enum class CmpOp { Eq, Ne, Lt, Le, Gt, Ge };
enum class ConnOp { And, Or };
// How a CountWhere compares the number of matching elements against its
// bound: at least / at most / exactly `count`, or equal to the array length.
enum class CountCmp { AtLeast, AtMost, Exactly, AllElements };

class Term;
using TermPtr = std::shared_ptr<const Term>;

class Term {
 public:
  static TermPtr constant(Value v);
  static TermPtr loc_var(std::string name);
  static TermPtr param(std::string name, int step = -1);
  static TermPtr elem(int binder = 0);
  static TermPtr attr_get(TermPtr of, std::string key);
  static TermPtr compare(CmpOp op, TermPtr lhs, TermPtr rhs);
  static TermPtr connective(ConnOp op, TermPtr lhs, TermPtr rhs);
  static TermPtr count_where(TermPtr array, TermPtr pred, CountCmp cmp,
                             std::uint64_t count);
  static TermPtr boolean(bool b);

  TermKind kind() const { return kind_; }
  const Value& value() const { return value_; }           // Const
  const std::string& name() const { return name_; }       // LocVar, Param
  int step() const { return step_; }                      // Param
  int binder() const { return binder_; }                  // Elem
  const std::string& key() const { return name_; }        // AttrGet
  CmpOp cmp_op() const { return cmp_; }                   // Compare
  ConnOp conn_op() const { return conn_; }                // Connective
  CountCmp count_cmp() const { return count_cmp_; }       // CountWhere
  std::uint64_t count() const { return count_; }          // CountWhere
  bool bool_value() const { return bool_; }               // BoolConst
  const TermPtr& lhs() const { return lhs_; }   // AttrGet base / Compare / Connective / CountWhere array
  const TermPtr& rhs() const { return rhs_; }   // Compare / Connective / CountWhere predicate

  std::string str() const;

 private:
  Term() = default;

  TermKind kind_ = TermKind::BoolConst;
  Value value_;
  std::string name_;
  int step_ = -1;
  int binder_ = 0;
  CmpOp cmp_ = CmpOp::Eq;
  ConnOp conn_ = ConnOp::And;
  CountCmp count_cmp_ = CountCmp::Exactly;
  std::uint64_t count_ = 0;
  bool bool_ = false;
  TermPtr lhs_, rhs_;
};

bool term_equal(const TermPtr& a, const TermPtr& b);
// Total order used for canonical sorting; 0 iff term_equal.
int term_compare(const TermPtr& a, const TermPtr& b);

// Identifies a variable in a valuation. `instance` is -1 for the plain
// model variable, the step index for parameter instances, and ignored for
// location variables (a path condition's LocVar refs mean initial copies).
struct VarKey {
  enum class Kind { LocationVar, Parameter };
  Kind kind;
  std::string name;
  int instance = -1;

  auto operator<=>(const VarKey&) const = default;
  std::string str() const;
};

using Valuation = std::map<VarKey, Value>;

// Evaluates a closed term under a total valuation. Throws EvalError on a
// missing variable, kind mismatch, ordering over non-numeric operands, or
// an Elem reference outside any CountWhere predicate.
Value evaluate(const TermPtr& t, const Valuation& val);
bool evaluate_bool(const TermPtr& t, const Valuation& val);

// Three-valued evaluation under a partial valuation: nullopt means the
// result still depends on unassigned variables. Conjunction and disjunction
// short-circuit, so one decided operand can settle the result.
std::optional<Value> evaluate_partial(const TermPtr& t, const Valuation& val);

// Free variables of a term (Elem references are bound, never reported).
std::set<VarKey> free_vars(const TermPtr& t);

// Rewrites `t` for use at step `step` of a symbolic run: plain parameter
// references become step instances and location-variable references are
// replaced by their current symbolic state.
TermPtr substitute(const TermPtr& t, const std::map<std::string, TermPtr>& loc_state,
                   int step);

// Equivalence-preserving canonical form used when comparing guards:
// connective chains are flattened, sorted, and deduplicated with neutral
// and absorbing constants folded; `x = true` collapses to `x`; `>`/`>=`
// flip into `<`/`<=`; an all-elements count becomes a zero count of the
// negated predicate. Left-associative rebuild keeps the result a Term.
TermPtr normalize(const TermPtr& t);

// Negation without a dedicated node: comparisons flip, connectives
// dualize, counts invert, booleans toggle, bare refs compare to false.
TermPtr negate(const TermPtr& t);

// Infers the term's type. `lookup` resolves variable names to types;
// `elem_types` is the stack of element types bound by enclosing
// CountWhere predicates (innermost last). Throws SemanticError on misuse.
Type term_type(const TermPtr& t,
               const std::function<Type(VarKey::Kind, const std::string&)>& lookup,
               std::vector<Type>* elem_types = nullptr);

std::string to_string(CmpOp op);
std::string to_string(ConnOp op);
std::string to_string(CountCmp cmp);

}  // namespace pickles
