#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "maxones/relation.hpp"

namespace maxones {

// A boolean function used as a (candidate) polymorphism.  Functions up to
// arity 6 are stored as truth tables; the threshold family h_n is kept in
// symbolic form so invariance tests work at any arity up to the tuple cap.
class BoolFunction {
 public:
  static BoolFunction from_table(int arity, std::uint64_t table, std::string name);
  // True iff at least `threshold` of the inputs are 1.
  static BoolFunction at_least(int threshold, int arity, std::string name);
  // h_n(x_1,...,x_{n+1}): true iff at least n of the n+1 inputs are 1.
  static BoolFunction h(int n);

  // Clone base functions used throughout the co-clone tests.
  static BoolFunction and2();      // x & y
  static BoolFunction or2();       // x | y
  static BoolFunction maj();       // xy | yz | xz  (equals h_2)
  static BoolFunction xor3();      // x ^ y ^ z
  static BoolFunction s12_base();  // x & (y | !z)
  static BoolFunction s10_base();  // x & (y | z)
  static BoolFunction r2_side();   // x & (y ^ z ^ 1)

  int arity() const { return arity_; }
  const std::string& name() const { return name_; }
  bool symmetric() const { return symmetric_; }

  // args packed like tuple codes: argument 1 is the most significant bit.
  bool eval(std::uint32_t args) const;
  bool eval(const std::vector<bool>& args) const;

 private:
  BoolFunction() = default;
  enum class Kind { Table, AtLeast };
  Kind kind_ = Kind::Table;
  int arity_ = 0;
  std::uint64_t table_ = 0;
  int threshold_ = 0;
  bool symmetric_ = false;
  std::string name_;
};

// Componentwise application f(t_1,...,t_k); all tuples must share an arity
// and their number must equal the function's arity.
BoolTuple apply_componentwise(const BoolFunction& f, const std::vector<BoolTuple>& tuples);

// A selection of tuples from R (with repetition) whose componentwise image
// leaves R; nullopt when R is invariant under f.  The selection is reported
// as tuple codes in the order the arguments were supplied to f.
struct InvarianceViolation {
  std::vector<std::uint32_t> selection;
  std::uint32_t image;
};
std::optional<InvarianceViolation> invariance_violation(const Relation& r, const BoolFunction& f,
                                                        std::uint64_t budget = std::uint64_t{1} << 26);
bool is_invariant(const Relation& r, const BoolFunction& f,
                  std::uint64_t budget = std::uint64_t{1} << 26);

}  // namespace maxones
