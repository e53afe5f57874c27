#pragma once

#include <optional>
#include <string>
#include <vector>

#include "maxones/relation.hpp"

namespace maxones {

// Witness of a two-step axiom failure: x, y in R, x' a step from x to y,
// x' not in R, and no step from x' to y lies in R.
struct DeltaWitness {
  BoolTuple x, y, xprime;
};

// Lexicographically least violating (x, y, x'), or nullopt when R satisfies
// the two-step axiom.
std::optional<DeltaWitness> delta_matroid_violation(const Relation& r);
bool is_delta_matroid(const Relation& r);

// Reduced linear system over GF(2) whose solution set is a relation.
// Rows are in reduced row echelon form, pivots chosen leftmost first; free
// columns keep their original coordinate identity.
struct Gf2System {
  int arity = 0;
  struct Row {
    std::uint32_t coeffs = 0;  // bit (arity-i) <-> coordinate i, like tuple codes
    bool rhs = false;
  };
  std::vector<Row> rows;
  std::vector<int> pivot_cols;  // 1-based, ascending
  std::vector<int> free_cols;   // 1-based, ascending

  Relation solution_set() const;
  // Some free column appears in >= 2 rows.
  bool coupled() const;
  std::string str() const;
};

bool is_affine(const Relation& r);

// Gaussian elimination for a nonempty affine relation; round-trips back to
// exactly R (checked).  Throws std::domain_error for non-affine input.
Gf2System affine_form(const Relation& r);
bool is_coupled(const Relation& r);

// --- Q class ----------------------------------------------------------------

enum class QFactorKind { Empty, C0, C1, Eq2, Neq2, AtMostOneFlipped };

std::string q_factor_kind_name(QFactorKind k);

struct QFactor {
  CoordSet coords;       // global coordinates of this factor, ascending
  QFactorKind kind;
  CoordSet negated;      // for AtMostOneFlipped: flipped coordinates (global)
};

struct QFactorization {
  int arity = 0;
  std::vector<QFactor> factors;
  Relation reassemble() const;
  std::string str() const;
};

// Finest partition of the coordinates such that R is the product of its
// projections onto the parts.  R must be nonempty.
std::vector<std::pair<CoordSet, Relation>> decompose(const Relation& r);

// Membership in Q, with the factorization as evidence.  The factorization
// reassembles to exactly R (checked before returning).
std::optional<QFactorization> in_q(const Relation& r);

}  // namespace maxones
