#include "maxones/bool_function.hpp"

#include <algorithm>

namespace maxones {

namespace {
constexpr int kMaxTableArity = 6;

bool table_symmetric(int arity, std::uint64_t table) {
  // Symmetric iff the value depends only on the popcount of the input.
  std::vector<int> value(arity + 1, -1);
  for (std::uint32_t a = 0; a < (1u << arity); ++a) {
    int ones = __builtin_popcount(a);
    int v = (table >> a) & 1u;
    if (value[ones] == -1) value[ones] = v;
    else if (value[ones] != v) return false;
  }
  return true;
}

template <class Fn>
std::uint64_t table_of(int arity, Fn fn) {
  std::uint64_t t = 0;
  for (std::uint32_t a = 0; a < (1u << arity); ++a)
    if (fn(a)) t |= std::uint64_t{1} << a;
  return t;
}
}  // namespace

BoolFunction BoolFunction::from_table(int arity, std::uint64_t table, std::string name) {
  if (arity < 1 || arity > kMaxTableArity)
    throw capacity_error("truth-table functions limited to arity " + std::to_string(kMaxTableArity));
  BoolFunction f;
  f.kind_ = Kind::Table;
  f.arity_ = arity;
  f.table_ = table;
  f.symmetric_ = table_symmetric(arity, table);
  f.name_ = std::move(name);
  return f;
}

BoolFunction BoolFunction::at_least(int threshold, int arity, std::string name) {
  if (arity < 1 || arity > kMaxArity + 1)
    throw capacity_error("threshold function arity above supported bound");
  BoolFunction f;
  f.kind_ = Kind::AtLeast;
  f.arity_ = arity;
  f.threshold_ = threshold;
  f.symmetric_ = true;
  f.name_ = std::move(name);
  return f;
}

BoolFunction BoolFunction::h(int n) {
  if (n < 1) throw std::invalid_argument("h_n needs n >= 1");
  return at_least(n, n + 1, "h_" + std::to_string(n));
}

// args are packed with argument 1 at the most significant bit, matching
// tuple codes: for a 3-ary f, args == 0b101 means (x,y,z) = (1,0,1).
bool BoolFunction::eval(std::uint32_t args) const {
  if (args >> arity_) throw std::invalid_argument("argument code exceeds function arity");
  if (kind_ == Kind::AtLeast) return __builtin_popcount(args) >= threshold_;
  return (table_ >> args) & 1u;
}

bool BoolFunction::eval(const std::vector<bool>& args) const {
  if (static_cast<int>(args.size()) != arity_)
    throw std::invalid_argument("argument count does not match function arity");
  std::uint32_t code = 0;
  for (bool b : args) code = (code << 1) | (b ? 1u : 0u);
  return eval(code);
}

BoolFunction BoolFunction::and2() {
  return from_table(2, table_of(2, [](std::uint32_t a) { return a == 0b11; }), "and");
}
BoolFunction BoolFunction::or2() {
  return from_table(2, table_of(2, [](std::uint32_t a) { return a != 0b00; }), "or");
}
BoolFunction BoolFunction::maj() {
  return from_table(3, table_of(3, [](std::uint32_t a) { return __builtin_popcount(a) >= 2; }),
                    "maj");
}
BoolFunction BoolFunction::xor3() {
  return from_table(3, table_of(3, [](std::uint32_t a) { return __builtin_popcount(a) & 1; }),
                    "xor3");
}
BoolFunction BoolFunction::s12_base() {
  return from_table(3,
                    table_of(3,
                             [](std::uint32_t a) {
                               bool x = a & 0b100, y = a & 0b010, z = a & 0b001;
                               return x && (y || !z);
                             }),
                    "x&(y|!z)");
}
BoolFunction BoolFunction::s10_base() {
  return from_table(3,
                    table_of(3,
                             [](std::uint32_t a) {
                               bool x = a & 0b100, y = a & 0b010, z = a & 0b001;
                               return x && (y || z);
                             }),
                    "x&(y|z)");
}
BoolFunction BoolFunction::r2_side() {
  return from_table(3,
                    table_of(3,
                             [](std::uint32_t a) {
                               bool x = a & 0b100, y = a & 0b010, z = a & 0b001;
                               return x && (y == z);
                             }),
                    "x&(y^z^1)");
}

BoolTuple apply_componentwise(const BoolFunction& f, const std::vector<BoolTuple>& tuples) {
  if (static_cast<int>(tuples.size()) != f.arity())
    throw std::invalid_argument("apply: tuple count does not match function arity");
  int n = tuples.front().arity();
  for (const BoolTuple& t : tuples)
    if (t.arity() != n) throw std::invalid_argument("apply: tuples of mixed arity");
  std::uint32_t out = 0;
  for (int j = 1; j <= n; ++j) {
    std::uint32_t args = 0;
    for (const BoolTuple& t : tuples) args = (args << 1) | (t.at(j) ? 1u : 0u);
    out = (out << 1) | (f.eval(args) ? 1u : 0u);
  }
  return BoolTuple(n, out);
}

namespace {

// Componentwise image for a selection given as tuple codes.
std::uint32_t image_of(const Relation& r, const BoolFunction& f,
                       const std::vector<std::uint32_t>& sel) {
  int n = r.arity();
  std::uint32_t out = 0;
  for (int j = 1; j <= n; ++j) {
    std::uint32_t args = 0;
    for (std::uint32_t code : sel) args = (args << 1) | ((code >> (n - j)) & 1u);
    out = (out << 1) | (f.eval(args) ? 1u : 0u);
  }
  return out;
}

}  // namespace

std::optional<InvarianceViolation> invariance_violation(const Relation& r, const BoolFunction& f,
                                                        std::uint64_t budget) {
  std::vector<std::uint32_t> members = r.codes();
  std::size_t s = members.size();
  int k = f.arity();
  if (s == 0) return std::nullopt;

  // Symmetric functions only need selections up to reordering.
  if (f.symmetric()) {
    double combos = 1;
    for (int i = 1; i <= k; ++i) combos = combos * (double(s) + i - 1) / i;
    if (combos > double(budget)) throw capacity_error("invariance check exceeds budget");
    std::vector<std::size_t> idx(k, 0);
    std::vector<std::uint32_t> sel(k);
    while (true) {
      for (int i = 0; i < k; ++i) sel[i] = members[idx[i]];
      std::uint32_t img = image_of(r, f, sel);
      if (!r.contains(img)) return InvarianceViolation{sel, img};
      int pos = k - 1;
      while (pos >= 0 && idx[pos] == s - 1) --pos;
      if (pos < 0) break;
      std::size_t v = idx[pos] + 1;
      for (int i = pos; i < k; ++i) idx[i] = v;
    }
    return std::nullopt;
  }

  double total = 1;
  for (int i = 0; i < k; ++i) total *= double(s);
  if (total > double(budget)) throw capacity_error("invariance check exceeds budget");
  std::vector<std::size_t> idx(k, 0);
  std::vector<std::uint32_t> sel(k);
  while (true) {
    for (int i = 0; i < k; ++i) sel[i] = members[idx[i]];
    std::uint32_t img = image_of(r, f, sel);
    if (!r.contains(img)) return InvarianceViolation{sel, img};
    int pos = k - 1;
    while (pos >= 0 && idx[pos] == s - 1) { idx[pos] = 0; --pos; }
    if (pos < 0) break;
    ++idx[pos];
  }
  return std::nullopt;
}

bool is_invariant(const Relation& r, const BoolFunction& f, std::uint64_t budget) {
  return !invariance_violation(r, f, budget).has_value();
}

}  // namespace maxones
