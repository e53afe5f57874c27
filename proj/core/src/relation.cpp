#include "maxones/relation.hpp"

#include <algorithm>

namespace maxones {

std::string CoordSet::str() const {
  std::string out = "{";
  bool first = true;
  for (int c : sorted()) {
    if (!first) out += ",";
    out += std::to_string(c);
    first = false;
  }
  return out + "}";
}

BoolTuple::BoolTuple(int arity, std::uint32_t code) : arity_(arity), code_(code) {
  if (arity < 1 || arity > kMaxArity) throw std::invalid_argument("tuple arity out of range");
  if (code >> arity) throw std::invalid_argument("tuple code exceeds arity");
}

BoolTuple BoolTuple::parse(const std::string& text) {
  if (text.empty() || text.size() > kMaxArity) throw std::invalid_argument("bad tuple literal: " + text);
  std::uint32_t code = 0;
  for (char ch : text) {
    if (ch != '0' && ch != '1') throw std::invalid_argument("bad tuple literal: " + text);
    code = (code << 1) | (ch == '1' ? 1u : 0u);
  }
  return BoolTuple(static_cast<int>(text.size()), code);
}

bool BoolTuple::at(int coord) const {
  if (coord < 1 || coord > arity_) throw std::invalid_argument("tuple coordinate out of range");
  return (code_ >> (arity_ - coord)) & 1u;
}

BoolTuple BoolTuple::with(int coord, bool value) const {
  if (coord < 1 || coord > arity_) throw std::invalid_argument("tuple coordinate out of range");
  std::uint32_t bit = 1u << (arity_ - coord);
  return BoolTuple(arity_, value ? (code_ | bit) : (code_ & ~bit));
}

BoolTuple BoolTuple::flipped(const CoordSet& coords) const {
  std::uint32_t code = code_;
  for (int c : coords.sorted()) {
    if (c > arity_) throw std::invalid_argument("flip coordinate out of range");
    code ^= 1u << (arity_ - c);
  }
  return BoolTuple(arity_, code);
}

std::string BoolTuple::str() const {
  std::string out(arity_, '0');
  for (int i = 1; i <= arity_; ++i)
    if (at(i)) out[i - 1] = '1';
  return out;
}

int hamming(const BoolTuple& x, const BoolTuple& y) {
  if (x.arity() != y.arity()) throw std::invalid_argument("hamming: arity mismatch");
  return __builtin_popcount(x.code() ^ y.code());
}

bool is_step(const BoolTuple& x, const BoolTuple& xprime, const BoolTuple& y) {
  if (x.arity() != xprime.arity() || x.arity() != y.arity())
    throw std::invalid_argument("is_step: arity mismatch");
  return hamming(x, xprime) == 1 && hamming(x, xprime) + hamming(xprime, y) == hamming(x, y);
}

namespace {
std::size_t words_for(int arity) { return ((std::size_t{1} << arity) + 63) / 64; }
}  // namespace

Relation::Relation(int arity) : arity_(arity) {
  if (arity < 1 || arity > kMaxArity)
    throw capacity_error("relation arity " + std::to_string(arity) + " out of supported range 1.." +
                         std::to_string(kMaxArity));
  bits_.assign(words_for(arity), 0);
}

Relation Relation::full(int arity) {
  Relation r(arity);
  for (std::uint32_t c = 0; c < r.tuple_count(); ++c) r.insert(c);
  return r;
}

Relation Relation::of(int arity, std::initializer_list<std::uint32_t> codes) {
  Relation r(arity);
  for (std::uint32_t c : codes) r.insert(c);
  return r;
}

Relation Relation::from_codes(int arity, const std::vector<std::uint32_t>& codes) {
  Relation r(arity);
  for (std::uint32_t c : codes) r.insert(c);
  return r;
}

Relation Relation::nand_rel(int m) {
  Relation r = full(m);
  r.erase(r.tuple_count() - 1);
  return r;
}

Relation Relation::eq_rel(int m) {
  Relation r(m);
  r.insert(0);
  r.insert(r.tuple_count() - 1);
  return r;
}

Relation Relation::impl() { return of(2, {0b00, 0b01, 0b11}); }
Relation Relation::c0() { return of(1, {0}); }
Relation Relation::c1() { return of(1, {1}); }
Relation Relation::neq() { return of(2, {0b01, 0b10}); }
Relation Relation::or2() { return of(2, {0b01, 0b10, 0b11}); }

Relation Relation::at_most_one(int arity) {
  Relation r(arity);
  r.insert(0);
  for (int i = 0; i < arity; ++i) r.insert(1u << i);
  return r;
}

std::optional<Relation> Relation::named(const std::string& name) {
  auto parameterized = [&](const std::string& prefix) -> std::optional<int> {
    if (name.size() <= prefix.size() || name.compare(0, prefix.size(), prefix) != 0)
      return std::nullopt;
    int m = 0;
    for (std::size_t i = prefix.size(); i < name.size(); ++i) {
      if (!isdigit(static_cast<unsigned char>(name[i]))) return std::nullopt;
      m = m * 10 + (name[i] - '0');
      if (m > kMaxArity) throw capacity_error("named relation arity above " + std::to_string(kMaxArity));
    }
    return m >= 1 ? std::optional<int>(m) : std::nullopt;
  };
  if (auto m = parameterized("NAND")) return nand_rel(*m);
  if (auto m = parameterized("EQ")) return eq_rel(*m);
  if (name == "IMPL") return impl();
  if (name == "c0") return c0();
  if (name == "c1") return c1();
  if (name == "NEQ") return neq();
  if (name == "OR2") return or2();
  return std::nullopt;
}

std::size_t Relation::size() const {
  std::size_t n = 0;
  for (std::uint64_t w : bits_) n += __builtin_popcountll(w);
  return n;
}

bool Relation::contains(std::uint32_t code) const {
  if (code >= tuple_count()) throw std::invalid_argument("tuple code exceeds arity");
  return (bits_[code >> 6] >> (code & 63)) & 1u;
}

bool Relation::contains(const BoolTuple& t) const {
  if (t.arity() != arity_) throw std::invalid_argument("tuple/relation arity mismatch");
  return contains(t.code());
}

void Relation::insert(std::uint32_t code) {
  if (code >= tuple_count()) throw std::invalid_argument("tuple code exceeds arity");
  bits_[code >> 6] |= std::uint64_t{1} << (code & 63);
}

void Relation::erase(std::uint32_t code) {
  if (code >= tuple_count()) throw std::invalid_argument("tuple code exceeds arity");
  bits_[code >> 6] &= ~(std::uint64_t{1} << (code & 63));
}

std::vector<std::uint32_t> Relation::codes() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t c = 0; c < tuple_count(); ++c)
    if (contains(c)) out.push_back(c);
  return out;
}

std::vector<BoolTuple> Relation::tuples() const {
  std::vector<BoolTuple> out;
  for (std::uint32_t c : codes()) out.emplace_back(arity_, c);
  return out;
}

Relation Relation::project(const CoordSet& coords) const {
  if (coords.empty()) throw std::invalid_argument("projection to empty index set");
  std::vector<int> idx = coords.sorted();
  if (idx.back() > arity_) throw std::invalid_argument("projection index out of range");
  Relation out(static_cast<int>(idx.size()));
  int n = static_cast<int>(idx.size());
  for (std::uint32_t c = 0; c < tuple_count(); ++c) {
    if (!contains(c)) continue;
    std::uint32_t pc = 0;
    for (int j = 0; j < n; ++j) {
      std::uint32_t bit = (c >> (arity_ - idx[j])) & 1u;
      pc |= bit << (n - 1 - j);
    }
    out.insert(pc);
  }
  return out;
}

Relation Relation::flip(const CoordSet& coords) const {
  if (!coords.empty() && coords.sorted().back() > arity_)
    throw std::invalid_argument("flip coordinate out of range");
  std::uint32_t xorMask = 0;
  for (int c : coords.sorted()) xorMask |= 1u << (arity_ - c);
  Relation out(arity_);
  for (std::uint32_t c = 0; c < tuple_count(); ++c)
    if (contains(c)) out.insert(c ^ xorMask);
  return out;
}

Relation Relation::permute(const std::vector<int>& perm) const {
  if (static_cast<int>(perm.size()) != arity_) throw std::invalid_argument("permutation size mismatch");
  std::vector<bool> seen(arity_ + 1, false);
  for (int v : perm) {
    if (v < 1 || v > arity_ || seen[v]) throw std::invalid_argument("not a permutation of [arity]");
    seen[v] = true;
  }
  Relation out(arity_);
  for (std::uint32_t c = 0; c < tuple_count(); ++c) {
    if (!contains(c)) continue;
    std::uint32_t pc = 0;
    for (int i = 1; i <= arity_; ++i) {
      std::uint32_t bit = (c >> (arity_ - perm[i - 1])) & 1u;
      pc |= bit << (arity_ - i);
    }
    out.insert(pc);
  }
  return out;
}

Relation product(const Relation& a, const Relation& b) {
  if (a.arity() + b.arity() > kMaxArity) throw capacity_error("product arity above supported bound");
  Relation out(a.arity() + b.arity());
  for (std::uint32_t ca = 0; ca < a.tuple_count(); ++ca) {
    if (!a.contains(ca)) continue;
    for (std::uint32_t cb = 0; cb < b.tuple_count(); ++cb)
      if (b.contains(cb)) out.insert((ca << b.arity()) | cb);
  }
  return out;
}

Relation intersect(const Relation& a, const Relation& b) {
  if (a.arity() != b.arity()) throw std::invalid_argument("intersect: arity mismatch");
  Relation out(a.arity());
  for (std::uint32_t c = 0; c < a.tuple_count(); ++c)
    if (a.contains(c) && b.contains(c)) out.insert(c);
  return out;
}

std::string Relation::str() const {
  std::string out = "{";
  bool first = true;
  for (const BoolTuple& t : tuples()) {
    if (!first) out += ",";
    out += t.str();
    first = false;
  }
  return out + "}";
}

}  // namespace maxones
