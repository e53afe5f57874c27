#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "maxones/coclone.hpp"
#include "maxones/language.hpp"
#include "maxones/relation.hpp"

namespace maxones {

// A k-representation: constraints over primary variables x1..xn (each used
// at most once) and auxiliary variables y1..ym (each used at most k times).
// Scope entries are 0-based: [0,n) primaries, [n,n+m) auxiliaries.
struct Gadget {
  int primary_count = 0;
  int aux_count = 0;
  int occurrence_cap = 0;  // k
  std::string target_name;

  struct Constraint {
    std::string relation;
    std::vector<int> scope;
  };
  std::vector<Constraint> constraints;

  std::string var_name(int idx) const;
  std::string str() const;  // gadget text format
};

Gadget parse_gadget_file(std::istream& in);

// Structured verification result.  Occurrence-cap violations are reported
// distinctly from semantic mismatches; unresolved relation names throw.
struct GadgetCheck {
  enum class Status { Ok, CapViolation, Mismatch };
  Status status = Status::Ok;
  std::string detail;
  bool ok() const { return status == Status::Ok; }
};

GadgetCheck check_gadget(const Relation& target, const Gadget& g, const ConstraintLanguage& env,
                         std::uint64_t budget = std::uint64_t{1} << 20);
bool verify_gadget(const Relation& target, const Gadget& g, const ConstraintLanguage& env,
                   std::uint64_t budget = std::uint64_t{1} << 20);

// The relation a gadget's constraint set defines on its primaries (caps
// ignored); what a direct exists-quantifier truth table computes.
Relation represented_relation(const Gadget& g, const ConstraintLanguage& env,
                              std::uint64_t budget = std::uint64_t{1} << 20);

// --- constructive recipes ----------------------------------------------------

// From R in IE2 \ IS12 (conservative env), build a verified 3-representation
// of EQ^2 or of IMPL.  The gadget references `relName`, "c0" and "c1".
struct EqOrImpl {
  enum class Which { Eq2, Impl };
  Which which;
  Gadget gadget;
  ConstraintLanguage env;
};
EqOrImpl derive_eq_or_impl(const Relation& r, const std::string& relName = "R");

// From R invariant under h_m but not h_{m-1}: minimal coordinate set X with
// project(R, X) = NAND^m; the projection is the 2-representation.
CoordSet derive_nand_m(const Relation& r, int m);

// --- bounded gadget search ---------------------------------------------------

struct SearchBounds {
  int max_aux = 2;
  int max_constraints = 3;
  std::uint64_t max_candidates = 1u << 18;
  std::uint64_t verify_budget = std::uint64_t{1} << 20;
};

struct SearchOutcome {
  std::optional<Gadget> gadget;
  bool exhausted = false;  // the whole bounded space was enumerated
  std::uint64_t candidates_tried = 0;
};

// First verified gadget in canonical order (constraint count, then aux
// count, then atom order); none is not a proof of non-representability.
SearchOutcome search_gadget(const Relation& target, const ConstraintLanguage& env, int k,
                            const SearchBounds& bounds = {});

// --- non-delta-matroid core extraction ---------------------------------------

struct NonDeltaCore {
  Relation core{3};               // ternary P, not a delta-matroid relation
  Gadget gadget;               // verified 2-representation of P from {R,c0,c1}
  ConstraintLanguage env;
  std::string catalog_entry;   // matched catalog entry name
  std::vector<int> permutation;  // catalog relation permuted by this equals core
};
NonDeltaCore extract_nondelta_core(const Relation& r, const std::string& relName = "R");

// --- ternary catalog ----------------------------------------------------------

enum class CatalogTag { NotInIE2, SelfEq3, WithNand2Eq3, SeeImplTable, SpecialABC1, SpecialABC5 };
std::string catalog_tag_name(CatalogTag tag);

struct CatalogEntry {
  std::string name;
  Relation relation{3};
  CatalogTag tag = CatalogTag::NotInIE2;
  std::string implements;               // for SeeImplTable rows: target entry
  std::optional<Gadget> implementation; // verified implementation, when any
};

const std::vector<CatalogEntry>& catalog();
const CatalogEntry& catalog_entry(const std::string& name);
// The embedded tuple tables, exactly as transcribed.
const std::string& catalog_table_text();

// EQ^3 from three copies of `entry` chained in a cycle, either through
// NAND^2 links or by identifying the link variables; tries the coordinate
// role assignments and returns the first verified gadget.
std::optional<Gadget> eq3_cycle_gadget(const Relation& entry, const std::string& entryName,
                                       bool with_nand2);

struct CatalogCheck {
  std::string entry;
  std::string check;
  bool pass = false;
  std::string detail;
};
struct CatalogReport {
  std::vector<CatalogCheck> checks;
  int entries_total = 0;
  int entries_ok = 0;
  bool all_pass() const { return entries_ok == entries_total; }
  std::string summary() const;
};
CatalogReport verify_catalog();

}  // namespace maxones
