#include "maxones/gadget.hpp"

#include <algorithm>
#include <array>
#include <istream>
#include <map>
#include <sstream>

#include "maxones/bool_function.hpp"
#include "maxones/delta_matroid.hpp"

namespace maxones {

std::string Gadget::var_name(int idx) const {
  if (idx < primary_count) return "x" + std::to_string(idx + 1);
  return "y" + std::to_string(idx - primary_count + 1);
}

std::string Gadget::str() const {
  std::ostringstream os;
  os << "gadget target=" << (target_name.empty() ? "?" : target_name) << " k=" << occurrence_cap
     << " primaries=" << primary_count << " aux=" << aux_count << "\n";
  for (const Constraint& c : constraints) {
    os << c.relation;
    for (int v : c.scope) os << " " << var_name(v);
    os << "\n";
  }
  return os.str();
}

Gadget parse_gadget_file(std::istream& in) {
  Gadget g;
  std::string line;
  int lineno = 0;
  bool sawHeader = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    if (word == "gadget") {
      std::map<std::string, std::string> kv;
      std::string item;
      while (ls >> item) {
        auto eq = item.find('=');
        if (eq == std::string::npos)
          throw std::invalid_argument("line " + std::to_string(lineno) + ": expected key=value");
        kv[item.substr(0, eq)] = item.substr(eq + 1);
      }
      for (const char* key : {"target", "k", "primaries", "aux"})
        if (!kv.count(key))
          throw std::invalid_argument("gadget header missing '" + std::string(key) + "='");
      g.target_name = kv["target"];
      g.occurrence_cap = std::stoi(kv["k"]);
      g.primary_count = std::stoi(kv["primaries"]);
      g.aux_count = std::stoi(kv["aux"]);
      sawHeader = true;
    } else {
      if (!sawHeader)
        throw std::invalid_argument("line " + std::to_string(lineno) + ": constraint before gadget header");
      Gadget::Constraint c;
      c.relation = word;
      std::string var;
      while (ls >> var) {
        if (var.size() < 2 || (var[0] != 'x' && var[0] != 'y'))
          throw std::invalid_argument("line " + std::to_string(lineno) + ": bad variable '" + var + "'");
        int idx = std::stoi(var.substr(1)) - 1;
        int limit = var[0] == 'x' ? g.primary_count : g.aux_count;
        if (idx < 0 || idx >= limit)
          throw std::invalid_argument("line " + std::to_string(lineno) + ": variable '" + var +
                                      "' out of declared range");
        c.scope.push_back(var[0] == 'x' ? idx : g.primary_count + idx);
      }
      g.constraints.push_back(std::move(c));
    }
  }
  if (!sawHeader) throw std::invalid_argument("gadget file missing header line");
  return g;
}

namespace {

// Resolved view of a gadget's constraints, ready for enumeration.
struct ResolvedGadget {
  std::vector<const Relation*> rels;
};

ResolvedGadget resolve(const Gadget& g, const ConstraintLanguage& env) {
  ResolvedGadget rg;
  for (const Gadget::Constraint& c : g.constraints) {
    const Relation* r = env.resolve(c.relation);
    if (!r)
      throw std::invalid_argument("gadget references relation '" + c.relation +
                                  "' not present in language " + env.name());
    if (static_cast<int>(c.scope.size()) != r->arity())
      throw std::invalid_argument("gadget scope size does not match arity of " + c.relation);
    for (int v : c.scope)
      if (v < 0 || v >= g.primary_count + g.aux_count)
        throw std::invalid_argument("gadget scope references undeclared variable");
    rg.rels.push_back(r);
  }
  return rg;
}

bool satisfies(const Gadget& g, const ResolvedGadget& rg, std::uint32_t primaries,
               std::uint32_t aux) {
  for (std::size_t ci = 0; ci < g.constraints.size(); ++ci) {
    const auto& scope = g.constraints[ci].scope;
    const Relation* r = rg.rels[ci];
    std::uint32_t code = 0;
    for (int v : scope) {
      std::uint32_t bit = v < g.primary_count
                              ? (primaries >> (g.primary_count - 1 - v)) & 1u
                              : (aux >> (g.aux_count - 1 - (v - g.primary_count))) & 1u;
      code = (code << 1) | bit;
    }
    if (!r->contains(code)) return false;
  }
  return true;
}

}  // namespace

Relation represented_relation(const Gadget& g, const ConstraintLanguage& env,
                              std::uint64_t budget) {
  ResolvedGadget rg = resolve(g, env);
  if (g.primary_count < 1 || g.primary_count > kMaxArity)
    throw std::invalid_argument("gadget primary count out of range");
  std::uint64_t work = (std::uint64_t{1} << g.primary_count) << g.aux_count;
  if (work > budget) throw capacity_error("gadget enumeration exceeds budget");
  Relation out(g.primary_count);
  for (std::uint32_t z = 0; z < (1u << g.primary_count); ++z) {
    for (std::uint32_t y = 0; y < (1u << g.aux_count); ++y) {
      if (satisfies(g, rg, z, y)) {
        out.insert(z);
        break;
      }
    }
  }
  return out;
}

GadgetCheck check_gadget(const Relation& target, const Gadget& g, const ConstraintLanguage& env,
                         std::uint64_t budget) {
  resolve(g, env);  // throws on unresolved names / malformed scopes
  if (g.primary_count != target.arity())
    throw std::invalid_argument("gadget primary count does not match target arity");

  std::vector<int> occurrences(g.primary_count + g.aux_count, 0);
  for (const Gadget::Constraint& c : g.constraints)
    for (int v : c.scope) ++occurrences[v];
  for (int v = 0; v < g.primary_count + g.aux_count; ++v) {
    int cap = v < g.primary_count ? 1 : g.occurrence_cap;
    if (occurrences[v] > cap)
      return {GadgetCheck::Status::CapViolation,
              "variable " + g.var_name(v) + " occurs " + std::to_string(occurrences[v]) +
                  " times (cap " + std::to_string(cap) + ")"};
  }

  Relation got = represented_relation(g, env, budget);
  if (got != target)
    return {GadgetCheck::Status::Mismatch,
            "represented relation " + got.str() + " differs from target " + target.str()};
  return {};
}

bool verify_gadget(const Relation& target, const Gadget& g, const ConstraintLanguage& env,
                   std::uint64_t budget) {
  return check_gadget(target, g, env, budget).ok();
}

// --- constructive recipes ------------------------------------------------------

EqOrImpl derive_eq_or_impl(const Relation& r, const std::string& relName) {
  if (!is_invariant(r, BoolFunction::and2()))
    throw std::domain_error("derive_eq_or_impl: relation is not in IE2");
  if (coclone_member(r, CoCloneLabel::of(CoCloneLabel::Tag::IS12Limit)))
    throw std::domain_error("derive_eq_or_impl: relation lies in IS12");

  int n = r.arity();
  BoolFunction f = BoolFunction::s12_base();

  // Minimal index set whose projection breaks the IS12 base function.
  std::optional<CoordSet> minimalI;
  for (int size = 1; size <= n && !minimalI; ++size) {
    for (std::uint32_t mask = 1; mask < (1u << n) && !minimalI; ++mask) {
      if (__builtin_popcount(mask) != size) continue;
      CoordSet idx(mask);
      if (!is_invariant(r.project(idx), f)) minimalI = idx;
    }
  }
  if (!minimalI) throw std::logic_error("derive_eq_or_impl: no violating projection (bug)");
  std::vector<int> globalIdx = minimalI->sorted();
  Relation proj = r.project(*minimalI);
  int q = proj.arity();

  auto violation = invariance_violation(proj, f);
  if (!violation) throw std::logic_error("derive_eq_or_impl: projection became invariant (bug)");
  std::uint32_t t1 = violation->selection[0], t2 = violation->selection[1],
                t3 = violation->selection[2];

  auto pattern = [&](int coord) {
    return std::array<int, 3>{int((t1 >> (q - coord)) & 1u), int((t2 >> (q - coord)) & 1u),
                              int((t3 >> (q - coord)) & 1u)};
  };
  int l1 = 0, l2 = 0;
  for (int c = 1; c <= q && !l1; ++c)
    if (pattern(c) == std::array<int, 3>{1, 0, 1}) l1 = c;
  for (int c = 1; c <= q && !l2; ++c)
    if (pattern(c) == std::array<int, 3>{1, 0, 0}) l2 = c;
  if (!l1 || !l2) throw std::logic_error("derive_eq_or_impl: witness coordinates missing (bug)");

  // The defined binary relation: coordinates outside I are free auxiliaries,
  // coordinates of I other than l1, l2 are pinned to f's componentwise value.
  auto definedPair = [&](bool a, bool b) {
    for (std::uint32_t w = 0; w < r.tuple_count(); ++w) {
      if (!r.contains(w)) continue;
      bool ok = true;
      for (int c = 1; c <= q && ok; ++c) {
        bool bit = (w >> (n - globalIdx[c - 1])) & 1u;
        if (c == l1) ok = bit == a;
        else if (c == l2) ok = bit == b;
        else {
          auto p = pattern(c);
          bool pinned = f.eval((p[0] << 2) | (p[1] << 1) | p[2]);
          ok = bit == pinned;
        }
      }
      if (ok) return true;
    }
    return false;
  };
  bool has00 = definedPair(0, 0), has01 = definedPair(0, 1), has10 = definedPair(1, 0),
       has11 = definedPair(1, 1);
  if (!has00 || !has11 || has01)
    throw std::logic_error("derive_eq_or_impl: defined pair set violates the construction (bug)");

  EqOrImpl out;
  out.which = has10 ? EqOrImpl::Which::Impl : EqOrImpl::Which::Eq2;

  // With (1,0) present the relation is {00,10,11}; swapping the primary
  // roles turns it into IMPL(x, y).
  int xCoord = has10 ? l2 : l1;
  int yCoord = has10 ? l1 : l2;

  Gadget g;
  g.primary_count = 2;
  g.occurrence_cap = 3;
  g.target_name = has10 ? "IMPL" : "EQ2";
  Gadget::Constraint main;
  main.relation = relName;
  std::vector<Gadget::Constraint> pins;
  int nextAux = 0;
  std::vector<int> scope(n, -1);
  for (int pos = 1; pos <= n; ++pos) {
    int local = 0;
    for (int c = 1; c <= q; ++c)
      if (globalIdx[c - 1] == pos) local = c;
    if (local == xCoord) scope[pos - 1] = 0;
    else if (local == yCoord) scope[pos - 1] = 1;
    else if (local != 0) {
      auto p = pattern(local);
      bool pinned = f.eval((p[0] << 2) | (p[1] << 1) | p[2]);
      int var = 2 + nextAux++;
      scope[pos - 1] = var;
      pins.push_back({pinned ? "c1" : "c0", {var}});
    } else {
      scope[pos - 1] = 2 + nextAux++;  // free auxiliary, occurs once
    }
  }
  g.aux_count = nextAux;
  main.scope = scope;
  g.constraints.push_back(std::move(main));
  for (auto& p : pins) g.constraints.push_back(std::move(p));

  out.env = ConstraintLanguage("derive_eq_or_impl");
  out.env.add(relName, r);
  out.env.make_conservative();
  Relation target = out.which == EqOrImpl::Which::Impl ? Relation::impl() : Relation::eq_rel(2);
  if (!verify_gadget(target, g, out.env))
    throw std::logic_error("derive_eq_or_impl: constructed gadget failed verification (bug)");
  out.gadget = std::move(g);
  return out;
}

CoordSet derive_nand_m(const Relation& r, int m) {
  if (m < 1) throw std::invalid_argument("derive_nand_m: m >= 1 required");
  if (!is_invariant(r, BoolFunction::h(m)))
    throw std::domain_error("derive_nand_m: relation is not invariant under h_m");
  if (m >= 2 && is_invariant(r, BoolFunction::h(m - 1)))
    throw std::domain_error("derive_nand_m: relation is invariant under h_{m-1}");
  int n = r.arity();
  Relation nand = Relation::nand_rel(m);
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != m) continue;
    CoordSet idx(mask);
    if (r.project(idx) == nand) return idx;
  }
  throw std::domain_error("derive_nand_m: no NAND^m projection exists");
}

// --- bounded search -----------------------------------------------------------

SearchOutcome search_gadget(const Relation& target, const ConstraintLanguage& env, int k,
                            const SearchBounds& bounds) {
  SearchOutcome outcome;
  outcome.exhausted = true;
  int n = target.arity();

  struct Atom {
    int rel;
    std::vector<int> scope;
  };

  for (int ccount = 1; ccount <= bounds.max_constraints; ++ccount) {
    for (int m = 0; m <= bounds.max_aux; ++m) {
      int vars = n + m;
      // Atom list for this variable count, in canonical order: relation
      // declaration order, then scope lexicographically.
      std::vector<Atom> atoms;
      for (std::size_t ri = 0; ri < env.relations().size(); ++ri) {
        int a = env.relations()[ri].second.arity();
        std::uint64_t scopes = 1;
        for (int i = 0; i < a; ++i) scopes *= static_cast<std::uint64_t>(vars);
        for (std::uint64_t id = 0; id < scopes; ++id) {
          Atom atom;
          atom.rel = static_cast<int>(ri);
          std::uint64_t v = id;
          atom.scope.resize(a);
          for (int i = a - 1; i >= 0; --i) { atom.scope[i] = static_cast<int>(v % vars); v /= vars; }
          atoms.push_back(std::move(atom));
        }
      }

      std::vector<int> chosen;
      std::vector<int> occ(vars, 0);
      bool stop = false;

      auto tryComplete = [&]() -> std::optional<Gadget> {
        // Canonical form: every auxiliary used, first uses in y1,y2,... order.
        std::vector<int> firstUse(m, -1);
        int seen = 0;
        for (int ai : chosen)
          for (int v : atoms[ai].scope)
            if (v >= n && firstUse[v - n] < 0) firstUse[v - n] = seen++;
        for (int j = 0; j < m; ++j)
          if (firstUse[j] != j) return std::nullopt;
        Gadget g;
        g.primary_count = n;
        g.aux_count = m;
        g.occurrence_cap = k;
        for (int ai : chosen)
          g.constraints.push_back({env.relations()[atoms[ai].rel].first, atoms[ai].scope});
        if (verify_gadget(target, g, env, bounds.verify_budget)) return g;
        return std::nullopt;
      };

      // Non-decreasing atom index sequences with occurrence pruning.
      auto rec = [&](auto&& self, int depth, int minAtom) -> std::optional<Gadget> {
        if (depth == ccount) {
          if (++outcome.candidates_tried > bounds.max_candidates) {
            stop = true;
            outcome.exhausted = false;
            return std::nullopt;
          }
          return tryComplete();
        }
        for (int ai = minAtom; ai < static_cast<int>(atoms.size()) && !stop; ++ai) {
          int pushed = 0;
          bool feasible = true;
          for (int v : atoms[ai].scope) {
            int cap = v < n ? 1 : k;
            if (occ[v] + 1 > cap) { feasible = false; break; }
            ++occ[v];
            ++pushed;
          }
          if (feasible) {
            chosen.push_back(ai);
            if (auto g = self(self, depth + 1, ai)) return g;
            chosen.pop_back();
          }
          for (int i = 0; i < pushed; ++i) --occ[atoms[ai].scope[i]];
        }
        return std::nullopt;
      };

      if (auto g = rec(rec, 0, 0)) {
        outcome.gadget = *g;
        return outcome;
      }
      if (stop) return outcome;
    }
  }
  return outcome;
}

// --- non-delta core -----------------------------------------------------------

NonDeltaCore extract_nondelta_core(const Relation& r, const std::string& relName) {
  auto w = delta_matroid_violation(r);
  if (!w) throw std::domain_error("extract_nondelta_core: relation is a delta-matroid relation");
  int n = r.arity();
  std::uint32_t t = w->x.code(), tp = w->y.code(), s = w->xprime.code();

  std::uint32_t diffMask = t ^ tp;     // X as a code mask
  std::uint32_t kBit = t ^ s;          // single bit
  // Minimal subset of X containing k with t ^ subset in R, by size then mask.
  std::optional<std::uint32_t> xprimeMask;
  std::vector<std::uint32_t> subsets;
  for (std::uint32_t sub = diffMask;; sub = (sub - 1) & diffMask) {
    if (sub & kBit) subsets.push_back(sub);
    if (sub == 0) break;
  }
  std::sort(subsets.begin(), subsets.end(), [](std::uint32_t a, std::uint32_t b) {
    int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  for (std::uint32_t sub : subsets)
    if (r.contains(t ^ sub)) { xprimeMask = sub; break; }
  if (!xprimeMask) throw std::logic_error("extract_nondelta_core: no X' (bug)");
  if (__builtin_popcount(*xprimeMask) < 3)
    throw std::logic_error("extract_nondelta_core: |X'| < 3 contradicts the witness (bug)");

  auto bit_to_coord = [&](std::uint32_t bit) { return n - __builtin_ctz(bit); };
  int kCoord = bit_to_coord(kBit);
  std::vector<int> others;
  for (int c = 1; c <= n; ++c) {
    std::uint32_t bit = 1u << (n - c);
    if ((*xprimeMask & bit) && c != kCoord) others.push_back(c);
  }
  int aCoord = others[0], bCoord = others[1];

  // P over (x_k, x_a, x_b): coordinates outside X' pinned to t, the rest of
  // X' existential.
  Relation core(3);
  for (std::uint32_t code = 0; code < r.tuple_count(); ++code) {
    if (!r.contains(code)) continue;
    if ((code & ~*xprimeMask) != (t & ~*xprimeMask)) continue;
    std::uint32_t p = 0;
    p |= ((code >> (n - kCoord)) & 1u) << 2;
    p |= ((code >> (n - aCoord)) & 1u) << 1;
    p |= (code >> (n - bCoord)) & 1u;
    core.insert(p);
  }

  // Build the verified 2-representation.
  Gadget g;
  g.primary_count = 3;
  g.occurrence_cap = 2;
  g.target_name = "P";
  Gadget::Constraint main;
  main.relation = relName;
  std::vector<Gadget::Constraint> pins;
  int nextAux = 0;
  main.scope.resize(n);
  for (int c = 1; c <= n; ++c) {
    std::uint32_t bit = 1u << (n - c);
    if (c == kCoord) main.scope[c - 1] = 0;
    else if (c == aCoord) main.scope[c - 1] = 1;
    else if (c == bCoord) main.scope[c - 1] = 2;
    else if (*xprimeMask & bit) main.scope[c - 1] = 3 + nextAux++;  // free
    else {
      int var = 3 + nextAux++;
      main.scope[c - 1] = var;
      pins.push_back({(t & bit) ? "c1" : "c0", {var}});
    }
  }
  g.aux_count = nextAux;
  g.constraints.push_back(std::move(main));
  for (auto& p : pins) g.constraints.push_back(std::move(p));

  NonDeltaCore out;
  out.env = ConstraintLanguage("extract_nondelta_core");
  out.env.add(relName, r);
  out.env.make_conservative();
  if (!verify_gadget(core, g, out.env))
    throw std::logic_error("extract_nondelta_core: gadget failed verification (bug)");
  out.core = core;
  out.gadget = std::move(g);

  // Catalog match up to coordinate permutation, first entry wins.
  static const std::vector<std::vector<int>> perms = {
      {1, 2, 3}, {1, 3, 2}, {2, 1, 3}, {2, 3, 1}, {3, 1, 2}, {3, 2, 1}};
  for (const CatalogEntry& e : catalog()) {
    for (const auto& perm : perms) {
      if (e.relation.permute(perm) == core) {
        out.catalog_entry = e.name;
        out.permutation = perm;
        return out;
      }
    }
  }
  throw std::logic_error("extract_nondelta_core: core missing from catalog (bug)");
}

std::optional<Gadget> eq3_cycle_gadget(const Relation& entry, const std::string& entryName,
                                       bool with_nand2) {
  if (entry.arity() != 3) throw std::invalid_argument("eq3_cycle_gadget needs a ternary relation");
  ConstraintLanguage env("cycle");
  env.add(entryName, entry);
  if (with_nand2) env.add("NAND2", Relation::nand_rel(2));
  Relation target = Relation::eq_rel(3);

  static const std::vector<std::vector<int>> roles = {
      {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  // roles maps (x, in, out) to the entry's coordinate positions: slot j of
  // the constraint scope receives role roles[j].
  for (const auto& role : roles) {
    Gadget g;
    g.primary_count = 3;
    g.occurrence_cap = 2;
    g.target_name = "EQ3";
    if (with_nand2) {
      g.aux_count = 6;  // y1..y3 then z1..z3
      for (int i = 0; i < 3; ++i) {
        int x = i, in = 3 + i, outv = 3 + 3 + i;
        std::vector<int> byRole = {x, in, outv};
        Gadget::Constraint c;
        c.relation = entryName;
        c.scope = {byRole[role[0]], byRole[role[1]], byRole[role[2]]};
        g.constraints.push_back(std::move(c));
      }
      for (int i = 0; i < 3; ++i)
        g.constraints.push_back({"NAND2", {3 + 3 + i, 3 + ((i + 1) % 3)}});
    } else {
      g.aux_count = 3;  // shared link variables w1..w3
      for (int i = 0; i < 3; ++i) {
        int x = i, in = 3 + ((i + 2) % 3), outv = 3 + i;
        std::vector<int> byRole = {x, in, outv};
        Gadget::Constraint c;
        c.relation = entryName;
        c.scope = {byRole[role[0]], byRole[role[1]], byRole[role[2]]};
        g.constraints.push_back(std::move(c));
      }
    }
    if (verify_gadget(target, g, env)) return g;
  }
  return std::nullopt;
}

}  // namespace maxones
