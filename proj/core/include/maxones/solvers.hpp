#pragma once

#include <optional>
#include <string>
#include <vector>

#include "maxones/delta_matroid.hpp"
#include "maxones/instance.hpp"

namespace maxones {

// Exact maximum-measure solution by branch and bound; nullopt iff the
// instance is infeasible.  Ties break to the lexicographically greatest
// assignment (variable order, 1 before 0).  |V| <= 30.
std::optional<Solution> solve_exact(const Instance& inst, const ConstraintLanguage& env,
                                    int max_vars = 30);

// Greedy (l+1)-approximation for {NAND^m, c0, c1} instances with at most
// l occurrences per variable: repeatedly take the heaviest undecided
// variable, shrink its clauses, and zero forced partners.
Solution greedy_apx(const Instance& inst, const ConstraintLanguage& env);

// Integer program with 0/1 variables whose constraint-matrix columns have
// absolute-value sum at most 2.
struct Ilp2Model {
  struct Term {
    int var;
    int coef;
  };
  struct Row {
    std::vector<Term> terms;
    int lower;
    int upper;
  };
  std::vector<std::string> var_names;
  std::vector<Rational> weights;
  std::vector<Row> rows;

  int column_abs_sum(int var) const;
  bool column_property_holds() const;  // every column sums to <= 2
  std::string str() const;
};

// Translation of a Q-instance (every constraint relation in Q, every
// variable in at most two scope positions) into an ILP-2 model.
Ilp2Model to_ilp2(const Instance& inst, const ConstraintLanguage& env);

// Exact 0/1 optimum of the model by branch and bound (the cited polynomial
// method is out of scope at this scale); nullopt iff infeasible.
std::optional<Solution> solve_ilp2(const Ilp2Model& model);

}  // namespace maxones
