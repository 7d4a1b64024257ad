#include "pickles/symbolic.hpp"

#include <algorithm>
#include <set>

#include "pickles/diagnostics.hpp"

namespace pickles {

SymbolicPath path_condition(const Sts& s, const std::vector<std::size_t>& path) {
  std::map<std::string, TermPtr> state;
  for (const VarBinding& b : s.variables) state[b.id] = Term::loc_var(b.id);

  SymbolicPath sp;
  sp.switches = path;
  std::string at = s.initial;
  for (std::size_t j = 0; j < path.size(); ++j) {
    if (path[j] >= s.switches.size())
      throw InternalError("switch index " + std::to_string(path[j]) + " out of range");
    const Switch& sw = s.switches[path[j]];
    if (sw.source != at)
      throw InternalError("path disconnected at step " + std::to_string(j) + ": " +
                          sw.brief() + " does not leave '" + at + "'");
    TermPtr g = substitute(sw.guard, state, static_cast<int>(j));
    sp.condition = sp.condition ? Term::connective(ConnOp::And, sp.condition, g) : g;

    // Assignment right-hand sides read the pre-state.
    std::vector<std::pair<std::string, TermPtr>> updates;
    for (const Assign& a : sw.assignment)
      updates.emplace_back(a.var, substitute(a.term, state, static_cast<int>(j)));
    for (auto& [var, term] : updates) state[var] = std::move(term);
    at = sw.target;
  }
  if (!sp.condition) sp.condition = Term::boolean(true);
  return sp;
}

namespace {

void flatten_and(const TermPtr& t, std::vector<TermPtr>& out) {
  if (t->kind() == TermKind::Connective && t->conn_op() == ConnOp::And) {
    flatten_and(t->lhs(), out);
    flatten_and(t->rhs(), out);
    return;
  }
  out.push_back(t);
}

// Backtracking search with conflict-directed backjumping: when a variable
// runs out of values, the search resumes at the deepest assignment that
// contributed to one of its conflicts, skipping assignments that provably
// cannot help.
class Search {
 public:
  Search(std::vector<VarKey> keys, std::vector<std::vector<Value>> cand,
         std::vector<TermPtr> conjuncts, std::vector<std::vector<int>> fv)
      : keys_(std::move(keys)),
        cand_(std::move(cand)),
        conjuncts_(std::move(conjuncts)),
        fv_(std::move(fv)),
        support_(keys_.size()),
        assigned_(keys_.size(), false),
        conf_(keys_.size()) {
    for (std::size_t c = 0; c < fv_.size(); ++c)
      for (int v : fv_[c]) support_[v].push_back(static_cast<int>(c));
  }

  bool run() { return step() == kSuccess; }
  const Valuation& valuation() const { return val_; }

 private:
  static constexpr int kSuccess = -1;
  static constexpr int kUnsat = -2;

  int pick() const {
    int best = -1;
    std::size_t best_size = 0;
    for (std::size_t v = 0; v < keys_.size(); ++v) {
      if (assigned_[v]) continue;
      if (best < 0 || cand_[v].size() < best_size) {
        best = static_cast<int>(v);
        best_size = cand_[v].size();
      }
    }
    return best;
  }

  // Returns kSuccess, kUnsat, or the stack depth to resume at.
  int step() {
    int v = pick();
    if (v < 0) return kSuccess;
    int depth = static_cast<int>(stack_.size());
    stack_.push_back(v);
    conf_[v].clear();

    for (const Value& a : cand_[v]) {
      val_[keys_[v]] = a;
      assigned_[v] = true;
      bool ok = true;
      for (int c : support_[v]) {
        std::optional<Value> r = evaluate_partial(conjuncts_[c], val_);
        if (r && !r->as_bool()) {
          ok = false;
          for (int u : fv_[c])
            if (u != v && assigned_[u]) conf_[v].insert(u);
          break;
        }
      }
      if (ok) {
        int jump = step();
        if (jump == kSuccess) return kSuccess;
        if (jump == kUnsat || jump < depth) {
          assigned_[v] = false;
          val_.erase(keys_[v]);
          stack_.pop_back();
          return jump;
        }
        // jump == depth: retry this variable with its next value.
      }
      assigned_[v] = false;
      val_.erase(keys_[v]);
    }

    stack_.pop_back();
    if (conf_[v].empty()) return kUnsat;
    for (int d = static_cast<int>(stack_.size()) - 1; d >= 0; --d) {
      int t = stack_[d];
      if (!conf_[v].count(t)) continue;
      for (int u : conf_[v])
        if (u != t) conf_[t].insert(u);
      return d;
    }
    return kUnsat;
  }

  std::vector<VarKey> keys_;
  std::vector<std::vector<Value>> cand_;
  std::vector<TermPtr> conjuncts_;
  std::vector<std::vector<int>> fv_;
  std::vector<std::vector<int>> support_;
  std::vector<bool> assigned_;
  std::vector<std::set<int>> conf_;
  std::vector<int> stack_;
  Valuation val_;
};

}  // namespace

std::optional<Solution> BoundedSolver::solve(const Sts& s, const SymbolicPath& sp) {
  std::vector<VarKey> keys;
  std::vector<std::vector<Value>> cand;
  std::map<VarKey, int> index;

  auto add_var = [&](VarKey key, const Domain& d, const std::string& path) {
    index[key] = static_cast<int>(keys.size());
    keys.push_back(std::move(key));
    cand.push_back(enumerate_domain(d, plan_, path));
  };
  for (const VarBinding& b : s.variables)
    add_var({VarKey::Kind::LocationVar, b.id, -1}, b.domain, b.id);
  for (std::size_t j = 0; j < sp.switches.size(); ++j) {
    const Switch& sw = s.switches[sp.switches[j]];
    for (const std::string& p : sw.params) {
      const VarBinding* b = s.find_variable(p);
      if (!b) throw InternalError("switch parameter '" + p + "' is not declared");
      add_var({VarKey::Kind::Parameter, p, static_cast<int>(j)}, b->domain, p);
    }
  }

  std::vector<TermPtr> all;
  flatten_and(sp.condition, all);
  std::vector<TermPtr> conjuncts;
  std::vector<std::vector<int>> fv;
  for (const TermPtr& c : all) {
    std::set<VarKey> vars = free_vars(c);
    if (vars.empty()) {
      if (!evaluate_bool(c, {})) return std::nullopt;
      continue;
    }
    std::vector<int> ids;
    for (const VarKey& k : vars) {
      auto it = index.find(k);
      if (it == index.end())
        throw InternalError("path condition references unknown variable " + k.str());
      ids.push_back(it->second);
    }
    conjuncts.push_back(c);
    fv.push_back(std::move(ids));
  }

  // Single-variable conjuncts filter their variable's candidates up front;
  // the equality atoms of typical guards collapse those domains to one value.
  for (std::size_t c = 0; c < conjuncts.size(); ++c) {
    if (fv[c].size() != 1) continue;
    int v = fv[c][0];
    std::vector<Value> kept;
    for (const Value& a : cand[v]) {
      Valuation one{{keys[v], a}};
      if (evaluate_bool(conjuncts[c], one)) kept.push_back(a);
    }
    if (kept.empty()) return std::nullopt;
    cand[v] = std::move(kept);
  }

  Search search(keys, cand, std::move(conjuncts), std::move(fv));
  if (!search.run()) return std::nullopt;

  const Valuation& val = search.valuation();
  Solution sol;
  for (const VarBinding& b : s.variables)
    sol.ini.push_back(val.at({VarKey::Kind::LocationVar, b.id, -1}));
  for (std::size_t j = 0; j < sp.switches.size(); ++j) {
    const Switch& sw = s.switches[sp.switches[j]];
    std::vector<Value> step;
    for (const std::string& p : sw.params)
      step.push_back(val.at({VarKey::Kind::Parameter, p, static_cast<int>(j)}));
    sol.step_values.push_back(std::move(step));
  }
  return sol;
}

std::uint64_t count_satisfying_inputs(const Sts& s, const Switch& sw,
                                      const std::map<std::string, Value>& fixed,
                                      const SamplingPlan& plan) {
  if (sw.direction != Direction::Input)
    throw SemanticError("input counting applies to input switches only");

  Valuation base;
  for (const VarKey& k : free_vars(sw.guard)) {
    if (k.kind != VarKey::Kind::LocationVar) continue;
    auto it = fixed.find(k.name);
    if (it == fixed.end())
      throw SemanticError("location variable \"" + k.name + "\" is not fixed");
    base[k] = it->second;
  }

  std::vector<std::vector<Value>> axes;
  for (const std::string& p : sw.params) {
    const VarBinding* b = s.find_variable(p);
    if (!b) throw InternalError("switch parameter '" + p + "' is not declared");
    axes.push_back(enumerate_domain(b->domain, plan, p));
  }

  std::uint64_t hits = 0;
  std::vector<std::size_t> at(axes.size(), 0);
  while (true) {
    Valuation val = base;
    for (std::size_t i = 0; i < axes.size(); ++i)
      val[{VarKey::Kind::Parameter, sw.params[i], -1}] = axes[i][at[i]];
    if (evaluate_bool(sw.guard, val)) ++hits;

    std::size_t i = axes.size();
    while (i > 0 && ++at[i - 1] == axes[i - 1].size()) at[--i] = 0;
    if (i == 0) break;
  }
  return hits;
}

namespace {

struct DecimalPath {
  Decimal lo, hi;
  bool lo_open = false, hi_open = false;
  std::set<Decimal> constants;

  bool inside(const Decimal& x) const {
    if (lo_open ? !(lo < x) : x < lo) return false;
    if (hi_open ? !(x < hi) : hi < x) return false;
    return true;
  }
};

void collect_decimal_paths(const Domain& d, const std::string& path,
                           std::map<std::string, DecimalPath>& out) {
  switch (d.kind()) {
    case DomainKind::DecInterval:
      out[path] = {d.dec_lo(), d.dec_hi(), d.lo_open(), d.hi_open(), {}};
      return;
    case DomainKind::Array:
      collect_decimal_paths(d.element(), path, out);
      return;
    case DomainKind::Struct:
      for (const Domain::Attr& a : d.attrs())
        collect_decimal_paths(a.domain, path + "/" + a.key, out);
      return;
    default:
      return;
  }
}

// The path a term reads from, or empty when it is not a variable access.
std::string term_path(const TermPtr& t, const std::vector<std::string>& binders) {
  switch (t->kind()) {
    case TermKind::LocVar:
    case TermKind::Param:
      return t->name();
    case TermKind::Elem: {
      int depth = static_cast<int>(binders.size()) - 1 - t->binder();
      if (depth < 0 || depth >= static_cast<int>(binders.size())) return "";
      return binders[depth];
    }
    case TermKind::AttrGet: {
      std::string base = term_path(t->lhs(), binders);
      return base.empty() ? base : base + "/" + t->key();
    }
    default:
      return "";
  }
}

void collect_guard_constants(const TermPtr& t, std::vector<std::string>& binders,
                             std::map<std::string, DecimalPath>& paths) {
  switch (t->kind()) {
    case TermKind::Compare: {
      auto note = [&](const TermPtr& var_side, const TermPtr& const_side) {
        if (const_side->kind() != TermKind::Const) return;
        if (const_side->value().kind() != ValueKind::Decimal) return;
        auto it = paths.find(term_path(var_side, binders));
        if (it == paths.end()) return;
        const Decimal& c = const_side->value().as_decimal();
        if (it->second.lo < c && c < it->second.hi) it->second.constants.insert(c);
      };
      note(t->lhs(), t->rhs());
      note(t->rhs(), t->lhs());
      return;
    }
    case TermKind::Connective:
      collect_guard_constants(t->lhs(), binders, paths);
      collect_guard_constants(t->rhs(), binders, paths);
      return;
    case TermKind::CountWhere:
      binders.push_back(term_path(t->lhs(), binders));
      collect_guard_constants(t->rhs(), binders, paths);
      binders.pop_back();
      return;
    default:
      return;
  }
}

}  // namespace

SamplingPlan default_sampling_plan(const Sts& s) {
  std::map<std::string, DecimalPath> paths;
  for (const VarBinding& b : s.variables) collect_decimal_paths(b.domain, b.id, paths);
  std::vector<std::string> binders;
  for (const Switch& sw : s.switches) collect_guard_constants(sw.guard, binders, paths);

  SamplingPlan plan;
  for (const auto& [path, p] : paths) {
    std::set<Decimal> samples;
    auto add = [&](Decimal x) {
      if (p.inside(x)) samples.insert(x);
    };
    add(Decimal::from_units(p.lo.units() + 1));
    add(Decimal::from_units(p.hi.units() - 1));
    for (const Decimal& c : p.constants) samples.insert(c);
    if (!p.constants.empty()) {
      std::vector<Decimal> boundary;
      boundary.push_back(p.lo);
      boundary.insert(boundary.end(), p.constants.begin(), p.constants.end());
      boundary.push_back(p.hi);
      for (std::size_t i = 1; i < boundary.size(); ++i) {
        Decimal mid =
            Decimal::from_units((boundary[i - 1].units() + boundary[i].units()) / 2);
        if (boundary[i - 1] < mid && mid < boundary[i]) samples.insert(mid);
      }
    }
    // A point interval offers no off-end values; use the point itself.
    if (samples.empty()) add(p.lo);
    plan.samples[path].assign(samples.begin(), samples.end());
  }
  return plan;
}

}  // namespace pickles
