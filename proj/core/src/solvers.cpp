#include "maxones/solvers.hpp"

#include <algorithm>
#include <sstream>

namespace maxones {

namespace {

// Constraints indexed for partial checking: a constraint is checked as soon
// as its last scope variable is assigned.
struct ConstraintView {
  const Relation* rel;
  const std::vector<int>* scope;
  int last_var;
};

}  // namespace

std::optional<Solution> solve_exact(const Instance& inst, const ConstraintLanguage& env,
                                    int max_vars) {
  inst.validate(env);
  int n = inst.variable_count();
  if (n > max_vars)
    throw capacity_error("solve_exact limited to " + std::to_string(max_vars) + " variables");

  std::vector<ConstraintView> views;
  for (const Instance::Constraint& c : inst.constraints()) {
    ConstraintView v{env.resolve(c.relation), &c.scope, 0};
    v.last_var = *std::max_element(c.scope.begin(), c.scope.end());
    views.push_back(v);
  }
  std::vector<std::vector<const ConstraintView*>> byLast(n);
  for (const ConstraintView& v : views) byLast[v.last_var].push_back(&v);

  // Suffix sums of positive weights for the bound.
  std::vector<Rational> suffixPos(n + 1);
  for (int i = n - 1; i >= 0; --i) {
    suffixPos[i] = suffixPos[i + 1];
    if (inst.weight(i).positive()) suffixPos[i] += inst.weight(i);
  }

  std::vector<bool> cur(n, false);
  std::optional<Solution> best;

  auto rec = [&](auto&& self, int idx, Rational value) -> void {
    if (best && !(value + suffixPos[idx] > best->measure)) return;  // ties keep first found
    if (idx == n) {
      if (!best || value > best->measure) best = Solution{cur, value};
      return;
    }
    for (bool bit : {true, false}) {
      cur[idx] = bit;
      bool ok = true;
      for (const ConstraintView* v : byLast[idx]) {
        std::uint32_t code = 0;
        for (int var : *v->scope) code = (code << 1) | (cur[var] ? 1u : 0u);
        if (!v->rel->contains(code)) { ok = false; break; }
      }
      if (ok) self(self, idx + 1, bit ? value + inst.weight(idx) : value);
    }
  };
  rec(rec, 0, Rational());
  return best;
}

Solution greedy_apx(const Instance& inst, const ConstraintLanguage& env) {
  inst.validate(env);
  int n = inst.variable_count();

  // Accept only NAND^m clauses and the constant relations.
  enum class Decided { No, Zero, One };
  std::vector<Decided> state(n, Decided::No);
  struct Clause {
    std::vector<int> vars;  // undecided members (with multiplicity)
    bool alive = true;
  };
  std::vector<Clause> clauses;
  std::vector<std::vector<int>> clausesOf(n);

  std::vector<int> forceQueue;
  auto force_zero = [&](int v) {
    if (state[v] == Decided::One) throw std::domain_error("greedy_apx: contradictory constants");
    if (state[v] == Decided::No) { state[v] = Decided::Zero; forceQueue.push_back(v); }
  };

  for (const Instance::Constraint& c : inst.constraints()) {
    const Relation* r = env.resolve(c.relation);
    if (*r == Relation::c0()) { force_zero(c.scope[0]); continue; }
    if (*r == Relation::c1()) {
      int v = c.scope[0];
      if (state[v] == Decided::Zero) throw std::domain_error("greedy_apx: contradictory constants");
      state[v] = Decided::One;
      continue;
    }
    if (*r != Relation::nand_rel(r->arity()))
      throw std::domain_error("greedy_apx accepts only NAND^m and constant constraints (got " +
                              c.relation + ")");
    // A repeated scope variable collapses: the clause forbids all distinct
    // members being one.
    Clause cl;
    for (int v : c.scope)
      if (std::find(cl.vars.begin(), cl.vars.end(), v) == cl.vars.end()) cl.vars.push_back(v);
    int id = static_cast<int>(clauses.size());
    clauses.push_back(cl);
    for (int v : cl.vars) clausesOf[v].push_back(id);
  }

  // A zeroed variable satisfies its NAND clauses; a one shrinks them.  A
  // clause of width one forces its survivor to zero, width zero means the
  // constants were contradictory.
  auto settle = [&]() {
    while (true) {
      bool changed = false;
      for (Clause& cl : clauses) {
        if (!cl.alive) continue;
        std::vector<int> undecided;
        bool satisfied = false;
        for (int v : cl.vars) {
          if (state[v] == Decided::Zero) { satisfied = true; break; }
          if (state[v] == Decided::No) undecided.push_back(v);
        }
        if (satisfied) { cl.alive = false; changed = true; continue; }
        if (undecided.empty()) throw std::domain_error("greedy_apx: instance is infeasible");
        if (undecided.size() == 1) {
          force_zero(undecided[0]);
          cl.alive = false;
          changed = true;
        }
      }
      if (!changed) break;
    }
  };
  settle();

  while (true) {
    int pick = -1;
    for (int v = 0; v < n; ++v)
      if (state[v] == Decided::No && (pick < 0 || inst.weight(v) > inst.weight(pick))) pick = v;
    if (pick < 0) break;
    state[pick] = Decided::One;
    // Shrink the clauses containing the pick; width-two clauses hand their
    // partner a zero.
    for (int id : clausesOf[pick]) {
      Clause& cl = clauses[id];
      if (!cl.alive) continue;
      std::vector<int> undecided;
      bool satisfied = false;
      for (int v : cl.vars) {
        if (state[v] == Decided::Zero) { satisfied = true; break; }
        if (state[v] == Decided::No) undecided.push_back(v);
      }
      if (satisfied) { cl.alive = false; continue; }
      if (undecided.empty()) throw std::domain_error("greedy_apx: clause fully assigned to ones");
      if (undecided.size() == 1) { force_zero(undecided[0]); cl.alive = false; }
    }
    settle();
  }

  std::vector<bool> assignment(n, false);
  for (int v = 0; v < n; ++v) assignment[v] = state[v] == Decided::One;
  return make_solution(inst, env, assignment);
}

int Ilp2Model::column_abs_sum(int var) const {
  int sum = 0;
  for (const Row& row : rows)
    for (const Term& t : row.terms)
      if (t.var == var) sum += t.coef < 0 ? -t.coef : t.coef;
  return sum;
}

bool Ilp2Model::column_property_holds() const {
  for (std::size_t v = 0; v < var_names.size(); ++v)
    if (column_abs_sum(static_cast<int>(v)) > 2) return false;
  return true;
}

std::string Ilp2Model::str() const {
  std::ostringstream os;
  for (const Row& row : rows) {
    os << row.lower << " <= ";
    bool first = true;
    for (const Term& t : row.terms) {
      if (t.coef >= 0 && !first) os << "+ ";
      if (t.coef == -1) os << "- ";
      else if (t.coef != 1) os << t.coef << "*";
      os << var_names[t.var] << " ";
      first = false;
    }
    if (first) os << "0 ";
    os << "<= " << row.upper << "\n";
  }
  return os.str();
}

Ilp2Model to_ilp2(const Instance& inst, const ConstraintLanguage& env) {
  inst.validate(env);
  for (int o : inst.occurrence_table())
    if (o > 2) throw std::domain_error("to_ilp2 requires at most two occurrences per variable");

  Ilp2Model model;
  for (int i = 0; i < inst.variable_count(); ++i) {
    model.var_names.push_back(inst.variable_name(i));
    model.weights.push_back(inst.weight(i));
  }

  auto add_row = [&](std::vector<Ilp2Model::Term> terms, int lo, int hi) {
    // Merge repeated variables by summing coefficients.
    std::vector<Ilp2Model::Term> merged;
    for (const auto& t : terms) {
      bool found = false;
      for (auto& m : merged)
        if (m.var == t.var) { m.coef += t.coef; found = true; }
      if (!found) merged.push_back(t);
    }
    model.rows.push_back({std::move(merged), lo, hi});
  };

  for (const Instance::Constraint& c : inst.constraints()) {
    const Relation* r = env.resolve(c.relation);
    auto q = in_q(*r);
    if (!q) throw std::domain_error("to_ilp2: relation " + c.relation + " is not in Q");
    for (const QFactor& f : q->factors) {
      std::vector<int> coords = f.coords.sorted();
      switch (f.kind) {
        case QFactorKind::Empty:
          add_row({}, 1, 1);  // 0 in [1,1]: infeasible marker
          break;
        case QFactorKind::C0:
          add_row({{c.scope[coords[0] - 1], 1}}, 0, 0);
          break;
        case QFactorKind::C1:
          add_row({{c.scope[coords[0] - 1], 1}}, 1, 1);
          break;
        case QFactorKind::Eq2:
          add_row({{c.scope[coords[0] - 1], 1}, {c.scope[coords[1] - 1], -1}}, 0, 0);
          break;
        case QFactorKind::Neq2:
          add_row({{c.scope[coords[0] - 1], 1}, {c.scope[coords[1] - 1], 1}}, 1, 1);
          break;
        case QFactorKind::AtMostOneFlipped: {
          if (coords.size() == 1) break;  // full unary factor: no constraint
          std::vector<Ilp2Model::Term> terms;
          int negs = 0;
          for (int coord : coords) {
            bool neg = f.negated.contains(coord);
            negs += neg;
            terms.push_back({c.scope[coord - 1], neg ? -1 : 1});
          }
          add_row(std::move(terms), -negs, 1 - negs);
          break;
        }
      }
    }
  }

  if (!model.column_property_holds())
    throw std::logic_error("to_ilp2 emitted a model violating the column property (bug)");
  return model;
}

std::optional<Solution> solve_ilp2(const Ilp2Model& model) {
  int n = static_cast<int>(model.var_names.size());
  if (n > 30) throw capacity_error("solve_ilp2 limited to 30 variables");
  for (const Ilp2Model::Row& row : model.rows)
    if (row.terms.empty() && (row.lower > 0 || row.upper < 0)) return std::nullopt;

  // Per-row bookkeeping: current sum plus min/max of the unassigned part.
  std::vector<std::vector<std::pair<int, int>>> rowTerms(n);  // var -> (row, coef)
  std::vector<int> sum(model.rows.size(), 0);
  std::vector<int> minRest(model.rows.size(), 0), maxRest(model.rows.size(), 0);
  for (std::size_t ri = 0; ri < model.rows.size(); ++ri) {
    for (const auto& t : model.rows[ri].terms) {
      rowTerms[t.var].push_back({static_cast<int>(ri), t.coef});
      if (t.coef < 0) minRest[ri] += t.coef;
      else maxRest[ri] += t.coef;
    }
  }

  std::vector<Rational> suffixPos(n + 1);
  for (int i = n - 1; i >= 0; --i) {
    suffixPos[i] = suffixPos[i + 1];
    if (model.weights[i].positive()) suffixPos[i] += model.weights[i];
  }

  std::vector<bool> cur(n, false);
  std::optional<Solution> best;

  auto feasibleSoFar = [&]() {
    for (std::size_t ri = 0; ri < model.rows.size(); ++ri)
      if (sum[ri] + maxRest[ri] < model.rows[ri].lower ||
          sum[ri] + minRest[ri] > model.rows[ri].upper)
        return false;
    return true;
  };

  auto rec = [&](auto&& self, int idx, Rational value) -> void {
    if (best && !(value + suffixPos[idx] > best->measure)) return;
    if (!feasibleSoFar()) return;
    if (idx == n) {
      best = Solution{cur, value};
      return;
    }
    for (bool bit : {true, false}) {
      cur[idx] = bit;
      for (auto [ri, coef] : rowTerms[idx]) {
        if (bit) sum[ri] += coef;
        if (coef < 0) minRest[ri] -= coef;
        else maxRest[ri] -= coef;
      }
      self(self, idx + 1, bit ? value + model.weights[idx] : value);
      for (auto [ri, coef] : rowTerms[idx]) {
        if (bit) sum[ri] -= coef;
        if (coef < 0) minRest[ri] += coef;
        else maxRest[ri] += coef;
      }
    }
  };
  rec(rec, 0, Rational());
  return best;
}

}  // namespace maxones
