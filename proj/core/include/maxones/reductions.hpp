#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "maxones/gadget.hpp"
#include "maxones/instance.hpp"

namespace maxones {

// Undirected node-weighted graph; no self loops, weights >= 0.
class WeightedGraph {
 public:
  struct Node {
    std::string name;
    Rational weight;
  };

  int add_node(const std::string& name, Rational weight);
  void add_edge(int u, int v);
  void add_edge_named(const std::string& u, const std::string& v);

  int node_count() const { return static_cast<int>(nodes_.size()); }
  const Node& node(int idx) const { return nodes_[idx]; }
  int node_index(const std::string& name) const;
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  int degree(int idx) const;
  int max_degree() const;
  Rational total_weight() const;

 private:
  std::vector<Node> nodes_;
  std::vector<std::pair<int, int>> edges_;
};

// Exact maximum-weight independent set (branch and bound over components).
struct MisResult {
  Rational measure;
  std::vector<bool> in_set;
};
MisResult max_weight_independent_set(const WeightedGraph& g);

// Independent Set in graphs of maximum degree <= k as Max Ones: one NAND^2
// constraint per edge, weights copied.
Instance mis_to_maxones(const WeightedGraph& g, int k);

// --- occurrence cycles ---------------------------------------------------------

// Rewrites every variable with more than three occurrences into a cycle of
// copies linked by a verified 3-representation of EQ^2 or IMPL; the output
// has every variable occurring at most three times and the same optimum.
enum class LinkKind { Eq2, Impl };
Instance cycle_reduction(const Instance& inst, const ConstraintLanguage& env, LinkKind link,
                         const Gadget& linkGadget);

// --- Max 2SAT-3 to covered independent set ------------------------------------

struct Literal {
  int var;
  bool neg;
};

struct TwoSatFormula {
  std::vector<std::string> vars;
  std::vector<std::pair<Literal, Literal>> clauses;

  int var_index(const std::string& name) const;
  int add_var(const std::string& name);
  void add_clause(const std::string& a, bool negA, const std::string& b, bool negB);
  // every clause two distinct variables, <= 3 occurrences per variable
  void validate() const;
};
TwoSatFormula parse_twosat_file(std::istream& in);
std::string emit_twosat(const TwoSatFormula& f);
int count_satisfied(const TwoSatFormula& f, const std::vector<bool>& assignment);

// Product of the two-step reduction: the variable-gadget graph (paths,
// trees, clause nodes) and its covering as a Max Ones instance over
// {c0, c1, CHAIN3} where CHAIN3(a,b,c) = NAND2(a,b) & NAND2(b,c).
struct Max2SatReduction {
  TwoSatFormula core;        // normalized formula actually encoded
  int fixed_satisfied = 0;   // clauses settled by pure-literal normalization
  std::vector<bool> fixed_assignment_mask;   // per original var: fixed?
  std::vector<bool> fixed_assignment_value;

  WeightedGraph graph;
  Instance instance;
  ConstraintLanguage language;

  // Bookkeeping per core variable.  The middle tree (whose leaves are the
  // path middles) carries the polarity that occurs once; the outer trees
  // carry the other polarity's roots.
  struct VarGadget {
    std::vector<int> pos;  // roots for unnegated occurrences, attachment order
    std::vector<int> neg;  // roots for negated occurrences
    bool pos_at_middle = false;
    int middle_root = -1;
    std::vector<int> outer_roots;     // trees 1 and 3
    std::vector<int> path_middles;    // p_{x2}
    std::vector<int> path_ends;       // p_{x1}, p_{x3}
    std::vector<int> middle_internals;  // tree-2 internals (weight 2)
    std::vector<int> outer_internals;   // tree-1/3 internals
    std::vector<int> all_gadget_nodes;
  };
  std::vector<VarGadget> gadgets;
  std::vector<std::array<int, 2>> clause_nodes;  // per core clause

  // Extraction: s(v) = true iff no unnegated root of v is in the set.
  std::vector<bool> extract_assignment(const std::vector<bool>& independent) const;
  // Canonical consistent independent set for a core assignment: each gadget
  // at its orientation optimum, one clause node per satisfied clause.
  std::vector<bool> canonical_independent_set(const std::vector<bool>& coreAssignment) const;
};

Max2SatReduction max2sat3_gadget_chain(const TwoSatFormula& f);

// Optimum of one isolated variable gadget (the constant the reduction's
// bookkeeping relies on).
Rational variable_gadget_optimum();

// --- non-conservative constant removal -----------------------------------------

struct DropConstantsResult {
  Instance instance;   // constants eliminated
  int c1_var_count;    // variables that carried c1 constraints
  Rational big_l;      // 1 + total original weight
  Rational threshold(const Rational& k) const;  // K' = K + c*L
};

// Replaces c0 constraints through the non-1-valid relation `relName` (whose
// maximal-ones tuple must have exactly one zero) and removes c1 constraints
// by weight lifting.
DropConstantsResult drop_constants(const Instance& inst, const ConstraintLanguage& env,
                                   const std::string& relName);

// --- graph text format ----------------------------------------------------
//   graph <NAME>
//   node <name> weight <p>/<q>
//   edge <u> <v>
WeightedGraph parse_graph_file(std::istream& in);
std::string emit_graph(const std::string& name, const WeightedGraph& g);

}  // namespace maxones
