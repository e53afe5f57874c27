#pragma once

// Independent brute-force oracles for the test suite.  These deliberately
// avoid the library's bitmask plumbing and work on explicit tuple vectors,
// so expected values are computed along a different path than the code
// under test.

#include <algorithm>
#include <set>
#include <vector>

#include "maxones/instance.hpp"
#include "maxones/language.hpp"
#include "maxones/relation.hpp"

namespace oracle {

using Tuples = std::set<std::vector<int>>;

inline Tuples tuples_of(const maxones::Relation& r) {
  Tuples out;
  for (auto& t : r.tuples()) {
    std::vector<int> v;
    for (int i = 1; i <= t.arity(); ++i) v.push_back(t.at(i) ? 1 : 0);
    out.insert(v);
  }
  return out;
}

inline maxones::Relation to_relation(int arity, const Tuples& tuples) {
  maxones::Relation r(arity);
  for (const auto& t : tuples) {
    std::uint32_t code = 0;
    for (int b : t) code = (code << 1) | static_cast<std::uint32_t>(b);
    r.insert(code);
  }
  return r;
}

inline Tuples project(const Tuples& in, const std::vector<int>& idx) {
  Tuples out;
  for (const auto& t : in) {
    std::vector<int> p;
    for (int i : idx) p.push_back(t[i - 1]);
    out.insert(p);
  }
  return out;
}

inline Tuples flip(const Tuples& in, const std::vector<int>& coords) {
  Tuples out;
  for (auto t : in) {
    for (int c : coords) t[c - 1] ^= 1;
    out.insert(t);
  }
  return out;
}

// The relation a constraint formula defines on its primaries: enumerate all
// assignments outright (no per-z early exit), then project.
struct Formula {
  int primaries;
  int aux;
  // each constraint: relation tuples + scope over [0, primaries+aux)
  std::vector<std::pair<Tuples, std::vector<int>>> constraints;
};

inline Tuples defined_relation(const Formula& f) {
  Tuples out;
  int total = f.primaries + f.aux;
  for (std::uint32_t a = 0; a < (1u << total); ++a) {
    std::vector<int> bits(total);
    for (int i = 0; i < total; ++i) bits[i] = (a >> (total - 1 - i)) & 1;
    bool ok = true;
    for (auto& [tuples, scope] : f.constraints) {
      std::vector<int> local;
      for (int v : scope) local.push_back(bits[v]);
      if (!tuples.count(local)) { ok = false; break; }
    }
    if (ok) out.insert(std::vector<int>(bits.begin(), bits.begin() + f.primaries));
  }
  return out;
}

// Plain enumeration Max Ones optimum (no pruning, no tie logic): returns
// the measure only, or nothing when infeasible.
inline std::optional<maxones::Rational> solve_by_enumeration(const maxones::Instance& inst,
                                                             const maxones::ConstraintLanguage& env) {
  int n = inst.variable_count();
  std::optional<maxones::Rational> best;
  for (std::uint32_t a = 0; a < (1u << n); ++a) {
    std::vector<bool> bits(n);
    for (int i = 0; i < n; ++i) bits[i] = (a >> i) & 1;
    if (!maxones::satisfies(inst, env, bits)) continue;
    maxones::Rational m;
    for (int i = 0; i < n; ++i)
      if (bits[i]) m += inst.weight(i);
    if (!best || m > *best) best = m;
  }
  return best;
}

}  // namespace oracle
