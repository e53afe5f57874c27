#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "maxones/coclone.hpp"
#include "maxones/delta_matroid.hpp"
#include "maxones/gadget.hpp"
#include "maxones/language.hpp"

namespace maxones {

enum class VerdictClass {
  PO,
  ApxComplete,
  PolyApxComplete,
  ApxHard,
  FeasibilityNpHard,
  EquivToUnbounded,
  Trivial1Valid,
  Conditional,
  Open,
};
std::string verdict_class_name(VerdictClass c);

// A machine-checkable piece of evidence attached to a verdict; replay()
// re-runs the underlying check.
struct Evidence {
  enum class Kind {
    GadgetWitness,     // gadget represents target within env
    InvarianceHolds,   // relation invariant under the named function
    InvarianceFails,   // with a violating selection
    DeltaViolation,    // two-step axiom failure witness
    DeltaHolds,
    CoupledSystem,     // reduced GF(2) system is coupled
    UncoupledSystem,
    QWitness,          // Q factorization reassembles the relation
    CatalogCore,       // extracted ternary core matches a catalog entry
    SpecialFamily,     // every relation is NAND^m, IMPL or a constant
    Id1PlainBasis,     // relation reconstructs from its ID1 constraints
    OneValid,          // relation contains the all-ones tuple
    TransferDemo,      // seeded drop_constants decision-equivalence run
    MisDemo,           // MIS as Max Ones({NAND^2}) on fixed small graphs
    Note,              // narrative only; replay always succeeds
  };

  Kind kind = Kind::Note;
  std::string lemma;        // which result of the classification it realizes
  std::string description;

  std::optional<Relation> relation;
  std::string function_name;
  std::optional<InvarianceViolation> violation;
  std::optional<Gadget> gadget;
  std::optional<Relation> target;
  std::optional<ConstraintLanguage> env;
  std::optional<DeltaWitness> delta_witness;
  std::uint64_t seed = 0;

  bool replay() const;
};

// Look up the clone base functions (and h_k) by the names Evidence records.
std::optional<BoolFunction> named_function(const std::string& name);

struct Verdict {
  VerdictClass cls = VerdictClass::Open;
  std::optional<CoCloneLabel> located;

  // EquivToUnbounded payload.
  std::optional<CoCloneLabel> unbounded_label;
  std::string unbounded_class;  // annotation when the source names the class

  // Conditional payload (IS12-chain case with the EQ^2 search exhausted).
  std::shared_ptr<Verdict> if_eq2_rep;
  std::shared_ptr<Verdict> if_not_eq2_rep;
  std::string search_outcome;

  // Non-conservative transfer bookkeeping.
  bool conservative_reference = false;
  bool np_hard_transferred = false;

  std::string note;
  std::vector<Evidence> evidence;

  std::string str() const;
};

struct ClassifyOptions {
  SearchBounds eq2_search;
  std::uint64_t seed = 0;
};

// Per-regime entry points plus the dispatching front end.
Verdict classify_k(const ConstraintLanguage& gamma, int k, const ClassifyOptions& opt = {});
Verdict classify_2(const ConstraintLanguage& gamma, const ClassifyOptions& opt = {});
Verdict classify_nonconservative(const ConstraintLanguage& gamma, int k,
                                 const ClassifyOptions& opt = {});
Verdict classify(const ConstraintLanguage& gamma, int k, const ClassifyOptions& opt = {});

bool replay_evidence(const Verdict& v);

// Structured report: human-readable prose plus the key=value block between
// ---BEGIN RESULT--- and ---END RESULT---.
std::string render_report(const ConstraintLanguage& gamma, int k, const Verdict& v,
                          bool kv_only = false);

}  // namespace maxones
