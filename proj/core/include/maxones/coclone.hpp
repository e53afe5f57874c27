#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "maxones/bool_function.hpp"
#include "maxones/language.hpp"
#include "maxones/relation.hpp"

namespace maxones {

// Labels for the conservative co-clone fragment used by the classifiers.
struct CoCloneLabel {
  enum class Tag { IR2, IM2, ID1, ID2, IL2, IV2, IE2, IS10m, IS12m, IS10Limit, IS12Limit, BR };
  Tag tag = Tag::BR;
  int m = 0;  // chain level, only for IS10m/IS12m (m >= 2)

  static CoCloneLabel is12(int m) { return {Tag::IS12m, m}; }
  static CoCloneLabel is10(int m) { return {Tag::IS10m, m}; }
  static CoCloneLabel of(Tag t) { return {t, 0}; }

  bool is_is12_chain() const { return tag == Tag::IS12m || tag == Tag::IS12Limit; }
  bool is_is10_chain() const { return tag == Tag::IS10m || tag == Tag::IS10Limit; }

  std::string str() const;
  friend bool operator==(const CoCloneLabel& a, const CoCloneLabel& b) {
    return a.tag == b.tag && a.m == b.m;
  }
  friend bool operator!=(const CoCloneLabel& a, const CoCloneLabel& b) { return !(a == b); }
};

// Encoded containment between labels (partial order; false also for
// incomparable pairs).  Only containments derivable from the clone bases
// and plain bases are encoded; the exhaustive tests validate them.
bool label_leq(const CoCloneLabel& a, const CoCloneLabel& b);

// R is a conjunction of its own forced constant and xor-pair constraints
// (the ID1 plain basis {c0, c1, x^y=0, x^y=1}).
bool id1_member(const Relation& r);

// Membership of a single relation / a language in the label's co-clone,
// decided by invariance under the label's clone base functions.  For the
// IS limit labels the level h_{r+1} is used, r = arity (resp. max arity).
bool coclone_member(const Relation& r, const CoCloneLabel& label);
bool coclone_member(const ConstraintLanguage& gamma, const CoCloneLabel& label);

// Least label (under label_leq) whose base functions all preserve gamma.
// Ties prefer parameterized IS labels with minimal m, then the
// lexicographically earliest tag.  BR is the universal fallback.
CoCloneLabel locate_coclone(const ConstraintLanguage& gamma);

// All relations of arity <= max_arity expressible from gamma together with
// EQ^2 using conjunction, variable identification and projection, computed
// as a fixpoint over bounded formulas.  Includes the empty and full
// relations of every arity by the Inv(Pol(.)) convention.
// max_arity <= 4; throws capacity_error beyond that or past `budget`
// fixpoint insertions.
std::vector<Relation> closure_oracle(const std::vector<Relation>& gamma, int max_arity,
                                     std::uint64_t budget = std::uint64_t{1} << 22);

bool closure_contains(const std::vector<Relation>& closure, const Relation& r);

// Clone base functions attached to a label (empty for BR and ID1; ID1 is
// decided by its plain basis instead).  `max_arity` feeds the IS limit
// levels.
std::vector<BoolFunction> label_base_functions(const CoCloneLabel& label, int max_arity);

}  // namespace maxones
