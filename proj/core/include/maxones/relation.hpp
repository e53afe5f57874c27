#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace maxones {

// Error taxonomy used across the library.  capacity_error maps to exit
// status 2 in the CLI, everything else derived from std::exception to 1.
class capacity_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kMaxArity = 16;

// Subset of coordinates of a relation, 1-based (coordinate i of an arity-r
// relation, 1 <= i <= r).  Stored as a bitmask with bit (i-1) <-> coordinate i.
class CoordSet {
 public:
  CoordSet() = default;
  explicit CoordSet(std::uint32_t mask) : mask_(mask) {}
  CoordSet(std::initializer_list<int> coords) {
    for (int c : coords) add(c);
  }
  static CoordSet range(int lo, int hi) {
    CoordSet s;
    for (int c = lo; c <= hi; ++c) s.add(c);
    return s;
  }

  void add(int coord) {
    if (coord < 1 || coord > kMaxArity) throw std::invalid_argument("coordinate out of range");
    mask_ |= 1u << (coord - 1);
  }
  bool contains(int coord) const { return coord >= 1 && (mask_ >> (coord - 1)) & 1u; }
  int size() const { return __builtin_popcount(mask_); }
  bool empty() const { return mask_ == 0; }
  std::uint32_t mask() const { return mask_; }

  // Ascending coordinate list.
  std::vector<int> sorted() const {
    std::vector<int> out;
    for (int c = 1; c <= kMaxArity; ++c)
      if (contains(c)) out.push_back(c);
    return out;
  }

  friend bool operator==(const CoordSet& a, const CoordSet& b) { return a.mask_ == b.mask_; }
  friend bool operator!=(const CoordSet& a, const CoordSet& b) { return !(a == b); }

  std::string str() const;

 private:
  std::uint32_t mask_ = 0;
};

// A boolean tuple of fixed arity (1..16).  Coordinate 1 is the most
// significant bit of code(), so the text rendering "101" reads coordinate
// 1..n left to right and equals the binary expansion of the code.
class BoolTuple {
 public:
  BoolTuple(int arity, std::uint32_t code);
  static BoolTuple parse(const std::string& text);

  int arity() const { return arity_; }
  std::uint32_t code() const { return code_; }

  // 1-based component access, t[i].
  bool at(int coord) const;
  BoolTuple with(int coord, bool value) const;
  BoolTuple flipped(const CoordSet& coords) const;

  std::string str() const;

  friend bool operator==(const BoolTuple& a, const BoolTuple& b) {
    return a.arity_ == b.arity_ && a.code_ == b.code_;
  }
  friend bool operator!=(const BoolTuple& a, const BoolTuple& b) { return !(a == b); }
  friend bool operator<(const BoolTuple& a, const BoolTuple& b) {
    return a.arity_ != b.arity_ ? a.arity_ < b.arity_ : a.code_ < b.code_;
  }

 private:
  int arity_;
  std::uint32_t code_;
};

int hamming(const BoolTuple& x, const BoolTuple& y);

// x' is a step from x to y: d(x,x') = 1 and d(x,x') + d(x',y) = d(x,y).
bool is_step(const BoolTuple& x, const BoolTuple& xprime, const BoolTuple& y);

// A finite boolean relation stored as a characteristic bitset over the
// 2^arity tuple codes.  Value type; all operations are pure.
class Relation {
 public:
  explicit Relation(int arity);
  static Relation full(int arity);
  static Relation of(int arity, std::initializer_list<std::uint32_t> codes);
  static Relation from_codes(int arity, const std::vector<std::uint32_t>& codes);

  // The named relations: NAND^m, EQ^m, IMPL, c0, c1, plus NEQ and OR2.
  static Relation nand_rel(int m);
  static Relation eq_rel(int m);
  static Relation impl();
  static Relation c0();
  static Relation c1();
  static Relation neq();
  static Relation or2();
  // Tuples at Hamming distance <= 1 from the all-zero tuple.
  static Relation at_most_one(int arity);
  // Resolves "NAND<m>", "EQ<m>", "IMPL", "c0", "c1", "NEQ", "OR2".
  static std::optional<Relation> named(const std::string& name);

  int arity() const { return arity_; }
  std::uint32_t tuple_count() const { return 1u << arity_; }
  std::size_t size() const;
  bool empty() const { return size() == 0; }

  bool contains(std::uint32_t code) const;
  bool contains(const BoolTuple& t) const;
  void insert(std::uint32_t code);
  void erase(std::uint32_t code);

  std::vector<std::uint32_t> codes() const;  // ascending
  std::vector<BoolTuple> tuples() const;     // ascending by code

  bool is_one_valid() const { return contains(tuple_count() - 1); }

  Relation project(const CoordSet& coords) const;
  Relation flip(const CoordSet& coords) const;
  // Coordinate i of the result holds coordinate perm[i-1] of the source.
  Relation permute(const std::vector<int>& perm) const;

  friend Relation product(const Relation& a, const Relation& b);
  friend Relation intersect(const Relation& a, const Relation& b);

  friend bool operator==(const Relation& a, const Relation& b) {
    return a.arity_ == b.arity_ && a.bits_ == b.bits_;
  }
  friend bool operator!=(const Relation& a, const Relation& b) { return !(a == b); }
  friend bool operator<(const Relation& a, const Relation& b) {
    return a.arity_ != b.arity_ ? a.arity_ < b.arity_ : a.bits_ < b.bits_;
  }

  std::string str() const;  // {000,111} style, ascending

 private:
  int arity_;
  std::vector<std::uint64_t> bits_;
};

}  // namespace maxones
