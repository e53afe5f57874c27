#include "maxones/instance.hpp"

#include <algorithm>
#include <istream>
#include <sstream>

namespace maxones {

int Instance::add_variable(const std::string& name, Rational weight) {
  if (weight.negative()) throw std::invalid_argument("negative weight for variable " + name);
  if (variable_index(name) >= 0) throw std::invalid_argument("duplicate variable " + name);
  names_.push_back(name);
  weights_.push_back(std::move(weight));
  return static_cast<int>(names_.size()) - 1;
}

void Instance::add_constraint(const std::string& relation, const std::vector<int>& scope) {
  for (int v : scope)
    if (v < 0 || v >= variable_count())
      throw std::invalid_argument("constraint scope references undeclared variable");
  constraints_.push_back({relation, scope});
}

void Instance::add_constraint_named(const std::string& relation,
                                    const std::vector<std::string>& vars) {
  std::vector<int> scope;
  for (const std::string& v : vars) {
    int idx = variable_index(v);
    if (idx < 0) throw std::invalid_argument("constraint references undeclared variable " + v);
    scope.push_back(idx);
  }
  add_constraint(relation, scope);
}

int Instance::variable_index(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<int>(i);
  return -1;
}

std::vector<int> Instance::occurrence_table() const {
  std::vector<int> occ(variable_count(), 0);
  for (const Constraint& c : constraints_)
    for (int v : c.scope) ++occ[v];
  return occ;
}

int Instance::max_occurrences() const {
  int m = 0;
  for (int o : occurrence_table()) m = std::max(m, o);
  return m;
}

void Instance::validate(const ConstraintLanguage& env) const {
  for (const Constraint& c : constraints_) {
    const Relation* r = env.resolve(c.relation);
    if (!r) throw std::invalid_argument("instance uses unknown relation " + c.relation);
    if (r->arity() != static_cast<int>(c.scope.size()))
      throw std::invalid_argument("scope size does not match arity of " + c.relation);
  }
  if (declared_bound_ && max_occurrences() > *declared_bound_)
    throw std::invalid_argument("declared occurrence bound " + std::to_string(*declared_bound_) +
                                " exceeded (max is " + std::to_string(max_occurrences()) + ")");
}

Rational Instance::total_weight() const {
  Rational t;
  for (const Rational& w : weights_) t += w;
  return t;
}

bool satisfies(const Instance& inst, const ConstraintLanguage& env,
               const std::vector<bool>& assignment) {
  for (const Instance::Constraint& c : inst.constraints()) {
    const Relation* r = env.resolve(c.relation);
    if (!r) throw std::invalid_argument("instance uses unknown relation " + c.relation);
    std::uint32_t code = 0;
    for (int v : c.scope) code = (code << 1) | (assignment[v] ? 1u : 0u);
    if (!r->contains(code)) return false;
  }
  return true;
}

Solution make_solution(const Instance& inst, const ConstraintLanguage& env,
                       const std::vector<bool>& assignment) {
  if (static_cast<int>(assignment.size()) != inst.variable_count())
    throw std::invalid_argument("assignment length mismatch");
  if (!satisfies(inst, env, assignment))
    throw std::invalid_argument("assignment violates a constraint");
  Solution s;
  s.assignment = assignment;
  for (int i = 0; i < inst.variable_count(); ++i)
    if (assignment[i]) s.measure += inst.weight(i);
  return s;
}

Instance parse_instance_file(std::istream& in) {
  Instance inst;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word) || word[0] == '#') continue;
    try {
      if (word == "var") {
        std::string name, kw, w;
        ls >> name >> kw >> w;
        if (name.empty() || kw != "weight" || w.empty())
          throw std::invalid_argument("expected 'var <name> weight <p>/<q>'");
        inst.add_variable(name, Rational::parse(w));
      } else if (word == "con") {
        std::string rel;
        ls >> rel;
        std::vector<std::string> vars;
        std::string v;
        while (ls >> v) vars.push_back(v);
        if (rel.empty() || vars.empty())
          throw std::invalid_argument("expected 'con <relName> <name> ...'");
        inst.add_constraint_named(rel, vars);
      } else if (word == "bound") {
        int k;
        if (!(ls >> k)) throw std::invalid_argument("expected 'bound <k>'");
        inst.declare_bound(k);
      } else {
        throw std::invalid_argument("unknown directive '" + word + "'");
      }
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return inst;
}

std::string emit_instance(const Instance& inst) {
  std::ostringstream os;
  for (int i = 0; i < inst.variable_count(); ++i)
    os << "var " << inst.variable_name(i) << " weight " << inst.weight(i).str() << "\n";
  for (const Instance::Constraint& c : inst.constraints()) {
    os << "con " << c.relation;
    for (int v : c.scope) os << " " << inst.variable_name(v);
    os << "\n";
  }
  if (inst.declared_bound()) os << "bound " << *inst.declared_bound() << "\n";
  return os.str();
}

}  // namespace maxones
