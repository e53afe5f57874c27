#include "maxones/reductions.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <sstream>

namespace maxones {

int WeightedGraph::add_node(const std::string& name, Rational weight) {
  if (weight.negative()) throw std::invalid_argument("negative node weight: " + name);
  if (node_index(name) >= 0) throw std::invalid_argument("duplicate node " + name);
  nodes_.push_back({name, std::move(weight)});
  return static_cast<int>(nodes_.size()) - 1;
}

void WeightedGraph::add_edge(int u, int v) {
  if (u < 0 || v < 0 || u >= node_count() || v >= node_count())
    throw std::invalid_argument("edge endpoint out of range");
  if (u == v) throw std::invalid_argument("self loop on node " + nodes_[u].name);
  edges_.emplace_back(u, v);
}

void WeightedGraph::add_edge_named(const std::string& u, const std::string& v) {
  int ui = node_index(u), vi = node_index(v);
  if (ui < 0 || vi < 0) throw std::invalid_argument("edge references unknown node");
  add_edge(ui, vi);
}

int WeightedGraph::node_index(const std::string& name) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i].name == name) return static_cast<int>(i);
  return -1;
}

int WeightedGraph::degree(int idx) const {
  int d = 0;
  for (auto [u, v] : edges_) d += (u == idx) + (v == idx);
  return d;
}

int WeightedGraph::max_degree() const {
  int m = 0;
  for (int i = 0; i < node_count(); ++i) m = std::max(m, degree(i));
  return m;
}

Rational WeightedGraph::total_weight() const {
  Rational t;
  for (const Node& n : nodes_) t += n.weight;
  return t;
}

namespace {

// Branch and bound on one connected component.  Degree-zero vertices and
// dominant pendants are taken without branching; otherwise the branch is on
// the highest-degree remaining vertex.
struct MisSolver {
  const std::vector<std::vector<int>>& adj;
  const std::vector<Rational>& weight;
  std::vector<int> state;  // 0 undecided, 1 in, -1 out
  std::vector<bool> bestSet;
  Rational best;
  std::vector<int> component;

  void run() {
    std::vector<bool> cur(adj.size(), false);
    Rational total;
    for (int v : component) total += weight[v];
    branch(cur, Rational(), total);
  }

  void take(int v, std::vector<bool>& cur, std::vector<int>& flipped, Rational& value,
            Rational& undecided) {
    state[v] = 1;
    cur[v] = true;
    flipped.push_back(v);
    value += weight[v];
    undecided -= weight[v];
    for (int u : adj[v]) {
      if (state[u] == 0) {
        state[u] = -1;
        flipped.push_back(u);
        undecided -= weight[u];
      }
    }
  }

  void branch(std::vector<bool>& cur, Rational value, Rational undecidedWeight) {
    std::vector<int> flipped;
    // Exhaust the safe moves first.
    bool changed = true;
    while (changed) {
      changed = false;
      for (int v : component) {
        if (state[v] != 0) continue;
        int deg = 0, pendantNb = -1;
        for (int u : adj[v])
          if (state[u] == 0) { ++deg; pendantNb = u; }
        if (deg == 0 || (deg == 1 && !(weight[v] < weight[pendantNb]))) {
          take(v, cur, flipped, value, undecidedWeight);
          changed = true;
        }
      }
    }

    if (bestSet.empty() || value + undecidedWeight > best) {
      int pick = -1, pickDeg = -1;
      for (int v : component) {
        if (state[v] != 0) continue;
        int d = 0;
        for (int u : adj[v])
          if (state[u] == 0) ++d;
        if (d > pickDeg) { pickDeg = d; pick = v; }
      }
      if (pick < 0) {
        if (bestSet.empty() || value > best) { best = value; bestSet = cur; }
      } else {
        std::vector<int> inner;
        Rational v2 = value, u2 = undecidedWeight;
        take(pick, cur, inner, v2, u2);
        branch(cur, v2, u2);
        for (int v : inner) state[v] = 0;
        cur[pick] = false;
        state[pick] = -1;
        branch(cur, value, undecidedWeight - weight[pick]);
        state[pick] = 0;
      }
    }

    for (int v : flipped) {
      if (state[v] == 1) cur[v] = false;
      state[v] = 0;
    }
  }
};

}  // namespace

MisResult max_weight_independent_set(const WeightedGraph& g) {
  int n = g.node_count();
  std::vector<std::vector<int>> adj(n);
  for (auto [u, v] : g.edges()) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<Rational> weight(n);
  for (int i = 0; i < n; ++i) weight[i] = g.node(i).weight;

  MisResult out;
  out.in_set.assign(n, false);
  std::vector<bool> visited(n, false);
  for (int s = 0; s < n; ++s) {
    if (visited[s]) continue;
    std::vector<int> comp{s};
    visited[s] = true;
    for (std::size_t i = 0; i < comp.size(); ++i)
      for (int u : adj[comp[i]])
        if (!visited[u]) { visited[u] = true; comp.push_back(u); }
    MisSolver solver{adj, weight, std::vector<int>(n, 0), {}, Rational(), comp};
    solver.run();
    out.measure += solver.best;
    for (int v : comp)
      if (solver.bestSet[v]) out.in_set[v] = true;
  }
  return out;
}

Instance mis_to_maxones(const WeightedGraph& g, int k) {
  if (g.max_degree() > k)
    throw std::domain_error("graph degree " + std::to_string(g.max_degree()) +
                            " exceeds the occurrence bound " + std::to_string(k));
  Instance inst;
  for (int i = 0; i < g.node_count(); ++i) inst.add_variable(g.node(i).name, g.node(i).weight);
  for (auto [u, v] : g.edges()) inst.add_constraint("NAND2", {u, v});
  inst.declare_bound(k);
  return inst;
}

// --- cycle reduction -----------------------------------------------------------

Instance cycle_reduction(const Instance& inst, const ConstraintLanguage& env, LinkKind link,
                         const Gadget& linkGadget) {
  inst.validate(env);
  Relation linkRel = link == LinkKind::Eq2 ? Relation::eq_rel(2) : Relation::impl();
  if (linkGadget.occurrence_cap > 3 || !verify_gadget(linkRel, linkGadget, env))
    throw std::invalid_argument("link gadget is not a verified 3-representation of " +
                                std::string(link == LinkKind::Eq2 ? "EQ2" : "IMPL"));

  std::vector<int> occ = inst.occurrence_table();
  Instance out;
  // copies[v] lists the variable indices of v's copies in the output.
  std::vector<std::vector<int>> copies(inst.variable_count());
  for (int v = 0; v < inst.variable_count(); ++v) {
    if (occ[v] <= 3) {
      copies[v].push_back(out.add_variable(inst.variable_name(v), inst.weight(v)));
    } else {
      for (int j = 0; j < occ[v]; ++j) {
        std::string name = inst.variable_name(v);
        if (j > 0) name += "__" + std::to_string(j + 1);
        copies[v].push_back(out.add_variable(name, j == 0 ? inst.weight(v) : Rational(0)));
      }
    }
  }

  // Original constraints, each occurrence taking the next copy.
  std::vector<int> used(inst.variable_count(), 0);
  for (const Instance::Constraint& c : inst.constraints()) {
    std::vector<int> scope;
    for (int v : c.scope) {
      int j = copies[v].size() == 1 ? 0 : used[v]++;
      scope.push_back(copies[v][j]);
    }
    out.add_constraint(c.relation, scope);
  }

  // Close each cycle with inlined link gadgets; auxiliaries are fresh and
  // weight zero.
  int gadgetInstance = 0;
  auto add_link = [&](int a, int b) {
    std::vector<int> vars(linkGadget.primary_count + linkGadget.aux_count, -1);
    vars[0] = a;
    vars[1] = b;
    for (int j = 0; j < linkGadget.aux_count; ++j)
      vars[2 + j] = out.add_variable(
          "__link" + std::to_string(gadgetInstance) + "_y" + std::to_string(j + 1), Rational(0));
    ++gadgetInstance;
    for (const Gadget::Constraint& gc : linkGadget.constraints) {
      std::vector<int> scope;
      for (int gv : gc.scope) scope.push_back(vars[gv]);
      out.add_constraint(gc.relation, scope);
    }
  };
  for (int v = 0; v < inst.variable_count(); ++v) {
    int o = static_cast<int>(copies[v].size());
    if (o <= 1) continue;
    for (int j = 0; j < o; ++j) add_link(copies[v][j], copies[v][(j + 1) % o]);
  }
  out.declare_bound(3);
  out.validate(env);
  return out;
}

// --- 2SAT-3 machinery ------------------------------------------------------------

int TwoSatFormula::var_index(const std::string& name) const {
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (vars[i] == name) return static_cast<int>(i);
  return -1;
}

int TwoSatFormula::add_var(const std::string& name) {
  int idx = var_index(name);
  if (idx >= 0) return idx;
  vars.push_back(name);
  return static_cast<int>(vars.size()) - 1;
}

void TwoSatFormula::add_clause(const std::string& a, bool negA, const std::string& b, bool negB) {
  clauses.push_back({Literal{add_var(a), negA}, Literal{add_var(b), negB}});
}

void TwoSatFormula::validate() const {
  std::vector<int> occ(vars.size(), 0);
  for (auto& [l1, l2] : clauses) {
    if (l1.var == l2.var)
      throw std::domain_error("clause uses variable " + vars[l1.var] + " twice");
    ++occ[l1.var];
    ++occ[l2.var];
  }
  for (std::size_t v = 0; v < vars.size(); ++v)
    if (occ[v] > 3)
      throw std::domain_error("variable " + vars[v] + " occurs " + std::to_string(occ[v]) +
                              " times (2SAT-3 allows 3)");
}

TwoSatFormula parse_twosat_file(std::istream& in) {
  TwoSatFormula f;
  std::string line;
  int lineno = 0;
  auto lit = [&](const std::string& tok) {
    if (tok.size() > 1 && (tok[0] == '!' || tok[0] == '-')) return std::pair(tok.substr(1), true);
    return std::pair(tok, false);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word) || word[0] == '#') continue;
    if (word == "formula") {
      continue;  // optional header, name unused
    } else if (word == "clause") {
      std::string a, b;
      ls >> a >> b;
      if (a.empty() || b.empty())
        throw std::invalid_argument("line " + std::to_string(lineno) + ": expected 'clause <lit> <lit>'");
      auto [av, an] = lit(a);
      auto [bv, bn] = lit(b);
      f.add_clause(av, an, bv, bn);
    } else {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": unknown directive '" + word + "'");
    }
  }
  return f;
}

std::string emit_twosat(const TwoSatFormula& f) {
  std::ostringstream os;
  os << "formula F\n";
  for (auto& [l1, l2] : f.clauses)
    os << "clause " << (l1.neg ? "!" : "") << f.vars[l1.var] << " " << (l2.neg ? "!" : "")
       << f.vars[l2.var] << "\n";
  return os.str();
}

int count_satisfied(const TwoSatFormula& f, const std::vector<bool>& assignment) {
  int sat = 0;
  for (auto& [l1, l2] : f.clauses) {
    bool v1 = assignment[l1.var] ^ l1.neg;
    bool v2 = assignment[l2.var] ^ l2.neg;
    sat += v1 || v2;
  }
  return sat;
}

namespace {

Relation chain3_relation() {
  Relation r(3);
  for (std::uint32_t c = 0; c < 8; ++c) {
    bool x1 = c & 4, x2 = c & 2, x3 = c & 1;
    if (!(x1 && x2) && !(x2 && x3)) r.insert(c);
  }
  return r;
}

}  // namespace

std::vector<bool> Max2SatReduction::extract_assignment(const std::vector<bool>& independent) const {
  std::vector<bool> s(core.vars.size(), false);
  for (std::size_t v = 0; v < core.vars.size(); ++v) {
    bool anyPosIn = false;
    for (int node : gadgets[v].pos)
      if (independent[node]) anyPosIn = true;
    s[v] = !anyPosIn;
  }
  return s;
}

std::vector<bool> Max2SatReduction::canonical_independent_set(
    const std::vector<bool>& coreAssignment) const {
  std::vector<bool> in(graph.node_count(), false);
  for (std::size_t v = 0; v < core.vars.size(); ++v) {
    const VarGadget& gd = gadgets[v];
    // The unnegated roots must be out of the set exactly when v is true.
    // With the minority polarity on the middle tree, both orientations hit
    // the gadget optimum: middles+outer internals+middle root, or
    // ends+middle internals+outer roots.
    bool middlesIn = coreAssignment[v] ? !gd.pos_at_middle : gd.pos_at_middle;
    for (int node : gd.path_middles) in[node] = middlesIn;
    for (int node : gd.path_ends) in[node] = !middlesIn;
    for (int node : gd.outer_internals) in[node] = middlesIn;
    for (int node : gd.middle_internals) in[node] = !middlesIn;
    in[gd.middle_root] = middlesIn;
    for (int node : gd.outer_roots) in[node] = !middlesIn;
  }
  for (std::size_t cidx = 0; cidx < core.clauses.size(); ++cidx) {
    auto [l1, l2] = core.clauses[cidx];
    bool v1 = coreAssignment[l1.var] ^ l1.neg;
    bool v2 = coreAssignment[l2.var] ^ l2.neg;
    if (v1) in[clause_nodes[cidx][0]] = true;
    else if (v2) in[clause_nodes[cidx][1]] = true;
  }
  return in;
}

Max2SatReduction max2sat3_gadget_chain(const TwoSatFormula& input) {
  input.validate();
  Max2SatReduction red;

  // Pure-literal normalization: a variable missing one polarity is fixed to
  // the polarity satisfying all its clauses, and those clauses drop out.
  std::vector<std::pair<Literal, Literal>> clauses = input.clauses;
  red.fixed_assignment_mask.assign(input.vars.size(), false);
  red.fixed_assignment_value.assign(input.vars.size(), false);
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<int> pos(input.vars.size(), 0), neg(input.vars.size(), 0);
    for (auto& [l1, l2] : clauses) {
      for (const Literal& l : {l1, l2}) (l.neg ? neg : pos)[l.var]++;
    }
    for (std::size_t v = 0; v < input.vars.size(); ++v) {
      if (red.fixed_assignment_mask[v]) continue;
      if (pos[v] + neg[v] == 0) {
        red.fixed_assignment_mask[v] = true;
        red.fixed_assignment_value[v] = true;
        continue;
      }
      if (pos[v] == 0 || neg[v] == 0) {
        bool value = neg[v] == 0;  // satisfy every occurrence
        red.fixed_assignment_mask[v] = true;
        red.fixed_assignment_value[v] = value;
        std::vector<std::pair<Literal, Literal>> rest;
        for (auto& cl : clauses) {
          bool touches = cl.first.var == static_cast<int>(v) || cl.second.var == static_cast<int>(v);
          if (touches) ++red.fixed_satisfied;
          else rest.push_back(cl);
        }
        clauses = std::move(rest);
        changed = true;
        break;
      }
    }
  }

  // Core formula over the surviving variables.
  std::vector<int> remap(input.vars.size(), -1);
  for (std::size_t v = 0; v < input.vars.size(); ++v)
    if (!red.fixed_assignment_mask[v]) remap[v] = red.core.add_var(input.vars[v]);
  for (auto& [l1, l2] : clauses)
    red.core.clauses.push_back({Literal{remap[l1.var], l1.neg}, Literal{remap[l2.var], l2.neg}});

  red.language = ConstraintLanguage("max2sat3");
  red.language.add("CHAIN3", chain3_relation());
  red.language.make_conservative();

  // Build the graph and record the covering; the instance is derived
  // afterwards so node ids equal variable indices.
  auto& g = red.graph;
  std::vector<std::array<int, 3>> chainCovers;  // CHAIN3(a,b,c) over node ids
  std::vector<std::pair<int, int>> edgeCovers;  // clause-side edges

  auto add_node = [&](const std::string& name, Rational w) { return g.add_node(name, w); };
  auto cover_edge = [&](int u, int v) { edgeCovers.emplace_back(u, v); };

  red.gadgets.resize(red.core.vars.size());
  for (std::size_t v = 0; v < red.core.vars.size(); ++v) {
    std::string p = red.core.vars[v] + ":";
    auto& gd = red.gadgets[v];

    int path[5][4];  // 1-based [x][y]; tree y's leaves are column y
    for (int x = 1; x <= 4; ++x)
      for (int y = 1; y <= 3; ++y) {
        Rational w = y == 2 ? Rational(9, 4) : Rational(1);
        path[x][y] = add_node(p + "p" + std::to_string(x) + std::to_string(y), w);
        (y == 2 ? gd.path_middles : gd.path_ends).push_back(path[x][y]);
        gd.all_gadget_nodes.push_back(path[x][y]);
      }
    int internal[4][3];  // [tree][1..2]; tree 2 internals weigh 2
    for (int t = 1; t <= 3; ++t)
      for (int j = 1; j <= 2; ++j) {
        Rational w = t == 2 ? Rational(2) : Rational(1);
        internal[t][j] = add_node(p + "x" + std::to_string(t) + std::to_string(j), w);
        (t == 2 ? gd.middle_internals : gd.outer_internals).push_back(internal[t][j]);
        gd.all_gadget_nodes.push_back(internal[t][j]);
      }

    int pcount = 0, ncount = 0;
    for (auto& [l1, l2] : red.core.clauses)
      for (const Literal& l : {l1, l2})
        if (l.var == static_cast<int>(v)) (l.neg ? ncount : pcount)++;
    // The polarity occurring once sits on the middle tree so that both
    // orientations of the gadget reach its optimum.
    gd.pos_at_middle = pcount == 1 && ncount == 2;
    int rootOf[4];
    if (gd.pos_at_middle) {
      rootOf[1] = add_node(p + "nv1", Rational(1));
      rootOf[2] = add_node(p + "v1", Rational(1));
      rootOf[3] = add_node(p + "nv2", Rational(1));
      gd.pos = {rootOf[2]};
      gd.neg = {rootOf[1], rootOf[3]};
    } else {
      rootOf[1] = add_node(p + "v1", Rational(1));
      rootOf[2] = add_node(p + "nv1", Rational(1));
      rootOf[3] = add_node(p + "v2", Rational(1));  // unused when pcount == 1
      gd.pos = {rootOf[1]};
      gd.neg = {rootOf[2]};
      if (pcount == 2) gd.pos.push_back(rootOf[3]);
    }
    gd.middle_root = rootOf[2];
    gd.outer_roots = {rootOf[1], rootOf[3]};
    for (int t = 1; t <= 3; ++t) gd.all_gadget_nodes.push_back(rootOf[t]);

    // Graph edges.
    for (int x = 1; x <= 4; ++x) {
      g.add_edge(path[x][1], path[x][2]);
      g.add_edge(path[x][2], path[x][3]);
    }
    for (int t = 1; t <= 3; ++t) {
      g.add_edge(path[1][t], internal[t][1]);
      g.add_edge(internal[t][1], path[2][t]);
      g.add_edge(path[3][t], internal[t][2]);
      g.add_edge(internal[t][2], path[4][t]);
      g.add_edge(internal[t][1], rootOf[t]);
      g.add_edge(rootOf[t], internal[t][2]);
    }

    // Covering: paths and trees by CHAIN3 exactly as the edge list above.
    for (int x = 1; x <= 4; ++x) chainCovers.push_back({path[x][1], path[x][2], path[x][3]});
    for (int t = 1; t <= 3; ++t) {
      chainCovers.push_back({path[1][t], internal[t][1], path[2][t]});
      chainCovers.push_back({path[3][t], internal[t][2], path[4][t]});
      chainCovers.push_back({internal[t][1], rootOf[t], internal[t][2]});
    }
  }

  // Clause nodes and their three edges (covered by the NAND^2 gadget built
  // from CHAIN3 and c0).  A root's gadget degree is 2, so degree < 3 means
  // it has no clause edge yet.
  for (std::size_t cidx = 0; cidx < red.core.clauses.size(); ++cidx) {
    auto [l1, l2] = red.core.clauses[cidx];
    std::string base = "c" + std::to_string(cidx + 1);
    int n1 = add_node(base + ":l1", Rational(1));
    int n2 = add_node(base + ":l2", Rational(1));
    red.clause_nodes.push_back({n1, n2});
    g.add_edge(n1, n2);
    cover_edge(n1, n2);
    for (int side = 0; side < 2; ++side) {
      const Literal& l = side == 0 ? l1 : l2;
      int node = side == 0 ? n1 : n2;
      auto& gd = red.gadgets[l.var];
      const std::vector<int>& pool = l.neg ? gd.neg : gd.pos;
      int chosen = -1;
      for (int cand : pool)
        if (g.degree(cand) < 3) { chosen = cand; break; }
      if (chosen < 0) throw std::logic_error("max2sat3: no free literal root (bug)");
      g.add_edge(node, chosen);
      cover_edge(node, chosen);
    }
  }

  // Derive the covering instance: graph nodes first (ids equal variable
  // indices), then one zero-weight auxiliary per covered clause-side edge.
  Instance& inst = red.instance;
  for (int i = 0; i < g.node_count(); ++i) inst.add_variable(g.node(i).name, g.node(i).weight);
  for (const auto& tri : chainCovers) inst.add_constraint("CHAIN3", {tri[0], tri[1], tri[2]});
  int auxCount = 0;
  for (auto [u, v] : edgeCovers) {
    int z = inst.add_variable("__z" + std::to_string(++auxCount), Rational(0));
    inst.add_constraint("CHAIN3", {u, v, z});
    inst.add_constraint("c0", {z});
  }
  inst.declare_bound(2);
  inst.validate(red.language);
  return red;
}

Rational variable_gadget_optimum() {
  TwoSatFormula f;
  f.add_clause("v", false, "w", false);
  f.add_clause("v", true, "w", true);
  // Normalization keeps both variables; take v's gadget in isolation.
  Max2SatReduction red = max2sat3_gadget_chain(f);
  WeightedGraph sub;
  std::map<int, int> remap;
  for (int node : red.gadgets[0].all_gadget_nodes)
    remap[node] = sub.add_node(red.graph.node(node).name, red.graph.node(node).weight);
  for (auto [u, v] : red.graph.edges())
    if (remap.count(u) && remap.count(v)) sub.add_edge(remap[u], remap[v]);
  return max_weight_independent_set(sub).measure;
}

// --- drop_constants --------------------------------------------------------------

Rational DropConstantsResult::threshold(const Rational& k) const {
  return k + Rational(c1_var_count) * big_l;
}

DropConstantsResult drop_constants(const Instance& inst, const ConstraintLanguage& env,
                                   const std::string& relName) {
  inst.validate(env);
  const Relation* rptr = env.resolve(relName);
  if (!rptr) throw std::invalid_argument("drop_constants: unknown relation " + relName);
  const Relation& r = *rptr;
  if (r.is_one_valid()) throw std::domain_error("drop_constants: relation is 1-valid");

  // The maximal-ones tuple must have exactly one zero; coordinate order is
  // normalized by placing the constrained variable at that zero.
  int n = r.arity();
  int bestOnes = -1;
  std::optional<std::uint32_t> t;
  for (std::uint32_t c : r.codes()) {
    int ones = __builtin_popcount(c);
    if (ones > bestOnes) { bestOnes = ones; t = c; }
  }
  if (!t || bestOnes != n - 1)
    throw std::domain_error(
        "drop_constants: maximal-ones tuple has more than one zero; the rewriting is undefined");
  int zeroCoord = 1;
  for (int c = 1; c <= n; ++c)
    if (!((*t >> (n - c)) & 1u)) zeroCoord = c;

  Rational bigL = Rational(1) + inst.total_weight();

  DropConstantsResult out;
  out.big_l = bigL;
  Instance& next = out.instance;
  for (int i = 0; i < inst.variable_count(); ++i)
    next.add_variable(inst.variable_name(i), inst.weight(i));

  Relation c0 = Relation::c0(), c1 = Relation::c1();
  std::vector<int> c1_vars;
  auto mark_c1 = [&](int v) {
    if (std::find(c1_vars.begin(), c1_vars.end(), v) == c1_vars.end()) c1_vars.push_back(v);
  };

  int fresh = 0;
  for (const Instance::Constraint& c : inst.constraints()) {
    const Relation* cr = env.resolve(c.relation);
    if (*cr == c1) { mark_c1(c.scope[0]); continue; }
    if (*cr == c0) {
      std::vector<int> scope(n, -1);
      scope[zeroCoord - 1] = c.scope[0];
      for (int pos = 1; pos <= n; ++pos) {
        if (pos == zeroCoord) continue;
        int v = next.add_variable("__one" + std::to_string(++fresh), Rational(0));
        scope[pos - 1] = v;
        mark_c1(v);
      }
      next.add_constraint(relName, scope);
      continue;
    }
    next.add_constraint(c.relation, c.scope);
  }

  out.c1_var_count = static_cast<int>(c1_vars.size());
  for (int v : c1_vars) next.set_weight(v, bigL + next.weight(v));
  return out;
}

// --- graph text format -------------------------------------------------------------

WeightedGraph parse_graph_file(std::istream& in) {
  WeightedGraph g;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word) || word[0] == '#') continue;
    if (word == "graph") continue;
    if (word == "node") {
      std::string name, kw, w;
      ls >> name >> kw >> w;
      if (name.empty() || kw != "weight" || w.empty())
        throw std::invalid_argument("line " + std::to_string(lineno) +
                                    ": expected 'node <name> weight <p>/<q>'");
      g.add_node(name, Rational::parse(w));
    } else if (word == "edge") {
      std::string u, v;
      ls >> u >> v;
      if (u.empty() || v.empty())
        throw std::invalid_argument("line " + std::to_string(lineno) + ": expected 'edge <u> <v>'");
      g.add_edge_named(u, v);
    } else {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": unknown directive '" + word + "'");
    }
  }
  return g;
}

std::string emit_graph(const std::string& name, const WeightedGraph& g) {
  std::ostringstream os;
  os << "graph " << name << "\n";
  for (int i = 0; i < g.node_count(); ++i)
    os << "node " << g.node(i).name << " weight " << g.node(i).weight.str() << "\n";
  for (auto [u, v] : g.edges()) os << "edge " << g.node(u).name << " " << g.node(v).name << "\n";
  return os.str();
}

}  // namespace maxones
