#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "maxones/language.hpp"
#include "maxones/rational.hpp"
#include "maxones/relation.hpp"

namespace maxones {

// A weighted Max Ones instance.  Scopes hold 0-based variable indices;
// the occurrence table counts every scope position, repeats included.
class Instance {
 public:
  struct Constraint {
    std::string relation;
    std::vector<int> scope;
  };

  int add_variable(const std::string& name, Rational weight);
  void add_constraint(const std::string& relation, const std::vector<int>& scope);
  void add_constraint_named(const std::string& relation, const std::vector<std::string>& vars);
  void declare_bound(int k) { declared_bound_ = k; }

  int variable_count() const { return static_cast<int>(names_.size()); }
  const std::string& variable_name(int idx) const { return names_[idx]; }
  int variable_index(const std::string& name) const;  // -1 when absent
  const Rational& weight(int idx) const { return weights_[idx]; }
  void set_weight(int idx, Rational w) { weights_[idx] = std::move(w); }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  std::optional<int> declared_bound() const { return declared_bound_; }

  std::vector<int> occurrence_table() const;
  int max_occurrences() const;
  // Throws when a declared bound is exceeded by the recount.
  void validate(const ConstraintLanguage& env) const;

  Rational total_weight() const;

 private:
  std::vector<std::string> names_;
  std::vector<Rational> weights_;
  std::vector<Constraint> constraints_;
  std::optional<int> declared_bound_;
};

// A feasible assignment with its measure; construction checks feasibility
// and recomputes the measure.
struct Solution {
  std::vector<bool> assignment;
  Rational measure;
};
bool satisfies(const Instance& inst, const ConstraintLanguage& env,
               const std::vector<bool>& assignment);
Solution make_solution(const Instance& inst, const ConstraintLanguage& env,
                       const std::vector<bool>& assignment);

// --- text format ---------------------------------------------------------
//   var <name> weight <p>/<q>
//   con <relName> <name> ...
//   bound <k>
Instance parse_instance_file(std::istream& in);
std::string emit_instance(const Instance& inst);

}  // namespace maxones
