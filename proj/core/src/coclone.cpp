#include "maxones/coclone.hpp"

#include <algorithm>
#include <map>
#include <queue>

namespace maxones {

std::string CoCloneLabel::str() const {
  switch (tag) {
    case Tag::IR2: return "IR2";
    case Tag::IM2: return "IM2";
    case Tag::ID1: return "ID1";
    case Tag::ID2: return "ID2";
    case Tag::IL2: return "IL2";
    case Tag::IV2: return "IV2";
    case Tag::IE2: return "IE2";
    case Tag::IS10m: return "IS10^" + std::to_string(m);
    case Tag::IS12m: return "IS12^" + std::to_string(m);
    case Tag::IS10Limit: return "IS10";
    case Tag::IS12Limit: return "IS12";
    case Tag::BR: return "BR";
  }
  return "?";
}

bool label_leq(const CoCloneLabel& a, const CoCloneLabel& b) {
  using Tag = CoCloneLabel::Tag;
  if (a == b) return true;
  if (b.tag == Tag::BR) return true;
  if (a.tag == Tag::BR) return false;
  if (a.tag == Tag::IR2) return true;

  switch (a.tag) {
    case Tag::ID1:
      return b.tag == Tag::IL2 || b.tag == Tag::ID2;
    case Tag::IM2:
      return b.tag == Tag::IV2 || b.tag == Tag::ID2 || b.tag == Tag::IE2 ||
             b.tag == Tag::IS10m || b.tag == Tag::IS10Limit;
    case Tag::IS12m:
      if (b.tag == Tag::IS12m) return a.m <= b.m;
      if (b.tag == Tag::IS10m) return a.m <= b.m;
      if (b.tag == Tag::IS12Limit || b.tag == Tag::IS10Limit || b.tag == Tag::IE2) return true;
      if (b.tag == Tag::ID2) return a.m == 2;
      return false;
    case Tag::IS10m:
      if (b.tag == Tag::IS10m) return a.m <= b.m;
      if (b.tag == Tag::IS10Limit || b.tag == Tag::IE2) return true;
      if (b.tag == Tag::ID2) return a.m == 2;
      return false;
    case Tag::IS12Limit:
      return b.tag == Tag::IS10Limit || b.tag == Tag::IE2;
    case Tag::IS10Limit:
      return b.tag == Tag::IE2;
    default:
      return false;  // ID2, IL2, IV2, IE2 sit directly below BR
  }
}

bool id1_member(const Relation& r) {
  // Conjunction of every constant and xor-pair constraint valid on R; R is
  // in ID1 iff that conjunction adds nothing.
  int n = r.arity();
  Relation rebuilt = Relation::full(n);
  auto constrain = [&](auto&& keep) {
    Relation next(n);
    for (std::uint32_t c = 0; c < rebuilt.tuple_count(); ++c)
      if (rebuilt.contains(c) && keep(c)) next.insert(c);
    rebuilt = next;
  };
  for (int i = 1; i <= n; ++i) {
    bool all0 = true, all1 = true;
    for (std::uint32_t c : r.codes()) {
      bool bit = (c >> (n - i)) & 1u;
      all0 &= !bit;
      all1 &= bit;
    }
    if (all0) constrain([&](std::uint32_t c) { return !((c >> (n - i)) & 1u); });
    if (all1) constrain([&](std::uint32_t c) { return (c >> (n - i)) & 1u; });
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      bool xor0 = true, xor1 = true;
      for (std::uint32_t c : r.codes()) {
        bool bi = (c >> (n - i)) & 1u, bj = (c >> (n - j)) & 1u;
        (bi == bj ? xor1 : xor0) = false;
      }
      if (xor0)
        constrain([&](std::uint32_t c) { return ((c >> (n - i)) & 1u) == ((c >> (n - j)) & 1u); });
      if (xor1)
        constrain([&](std::uint32_t c) { return ((c >> (n - i)) & 1u) != ((c >> (n - j)) & 1u); });
    }
  }
  return rebuilt == r;
}

std::vector<BoolFunction> label_base_functions(const CoCloneLabel& label, int max_arity) {
  using Tag = CoCloneLabel::Tag;
  switch (label.tag) {
    case Tag::IR2: return {BoolFunction::or2(), BoolFunction::r2_side()};
    case Tag::IM2: return {BoolFunction::and2(), BoolFunction::or2()};
    case Tag::ID2: return {BoolFunction::maj()};
    case Tag::IL2: return {BoolFunction::xor3()};
    case Tag::IV2: return {BoolFunction::or2()};
    case Tag::IE2: return {BoolFunction::and2()};
    case Tag::IS12m: return {BoolFunction::s12_base(), BoolFunction::h(label.m)};
    case Tag::IS10m: return {BoolFunction::s10_base(), BoolFunction::h(label.m)};
    case Tag::IS12Limit: return {BoolFunction::s12_base(), BoolFunction::h(max_arity + 1)};
    case Tag::IS10Limit: return {BoolFunction::s10_base(), BoolFunction::h(max_arity + 1)};
    case Tag::ID1:
    case Tag::BR: return {};
  }
  return {};
}

bool coclone_member(const Relation& r, const CoCloneLabel& label) {
  if (label.tag == CoCloneLabel::Tag::BR) return true;
  if (label.tag == CoCloneLabel::Tag::ID1) return id1_member(r);
  if (label.is_is12_chain() || label.is_is10_chain()) {
    if (label.m != 0 && label.m < 2) throw std::invalid_argument("IS chain level must be >= 2");
  }
  for (const BoolFunction& f : label_base_functions(label, r.arity()))
    if (!is_invariant(r, f)) return false;
  return true;
}

bool coclone_member(const ConstraintLanguage& gamma, const CoCloneLabel& label) {
  if (label.tag == CoCloneLabel::Tag::BR) return true;
  if (label.tag == CoCloneLabel::Tag::ID1) {
    for (auto& [n, r] : gamma.relations())
      if (!id1_member(r)) return false;
    return true;
  }
  for (const BoolFunction& f : label_base_functions(label, gamma.max_arity()))
    for (auto& [n, r] : gamma.relations())
      if (!is_invariant(r, f)) return false;
  return true;
}

CoCloneLabel locate_coclone(const ConstraintLanguage& gamma) {
  using Tag = CoCloneLabel::Tag;
  if (gamma.empty()) throw std::invalid_argument("locate_coclone on empty language");
  int rmax = gamma.max_arity();

  std::vector<CoCloneLabel> candidates = {
      CoCloneLabel::of(Tag::IR2), CoCloneLabel::of(Tag::ID1), CoCloneLabel::of(Tag::IM2),
      CoCloneLabel::of(Tag::ID2), CoCloneLabel::of(Tag::IL2), CoCloneLabel::of(Tag::IV2),
      CoCloneLabel::of(Tag::IE2), CoCloneLabel::of(Tag::IS12Limit), CoCloneLabel::of(Tag::IS10Limit)};
  for (int m = 2; m <= rmax + 1; ++m) {
    candidates.push_back(CoCloneLabel::is12(m));
    candidates.push_back(CoCloneLabel::is10(m));
  }

  std::vector<CoCloneLabel> qualifying;
  for (const CoCloneLabel& label : candidates)
    if (coclone_member(gamma, label)) qualifying.push_back(label);
  qualifying.push_back(CoCloneLabel::of(Tag::BR));

  // Keep the minimal qualifying labels, then break ties: parameterized IS
  // labels with minimal m first, then lexicographically earliest tag text.
  std::vector<CoCloneLabel> minimal;
  for (const CoCloneLabel& a : qualifying) {
    bool isMin = true;
    for (const CoCloneLabel& b : qualifying)
      if (!(b == a) && label_leq(b, a)) { isMin = false; break; }
    if (isMin) minimal.push_back(a);
  }
  std::sort(minimal.begin(), minimal.end(), [](const CoCloneLabel& a, const CoCloneLabel& b) {
    bool pa = a.tag == Tag::IS12m || a.tag == Tag::IS10m;
    bool pb = b.tag == Tag::IS12m || b.tag == Tag::IS10m;
    if (pa != pb) return pa;
    if (pa && a.m != b.m) return a.m < b.m;
    return a.str() < b.str();
  });
  return minimal.front();
}

// --- bounded closure oracle ------------------------------------------------

namespace {

// Inside the oracle, a relation of arity a <= 4 is a 16-bit tuple mask.
struct SmallRel {
  int arity;
  std::uint32_t mask;
  friend bool operator<(const SmallRel& x, const SmallRel& y) {
    return x.arity != y.arity ? x.arity < y.arity : x.mask < y.mask;
  }
  friend bool operator==(const SmallRel& x, const SmallRel& y) {
    return x.arity == y.arity && x.mask == y.mask;
  }
};

SmallRel to_small(const Relation& r) {
  SmallRel s{r.arity(), 0};
  for (std::uint32_t c : r.codes()) s.mask |= 1u << c;
  return s;
}

Relation from_small(const SmallRel& s) {
  Relation r(s.arity);
  for (std::uint32_t c = 0; c < (1u << s.arity); ++c)
    if ((s.mask >> c) & 1u) r.insert(c);
  return r;
}

// Minor of `s` under the position map sigma: position p of s reads variable
// sigma[p] of the target (0-based).  Target tuple t is in the minor iff the
// pulled-back tuple is in s.
SmallRel minor_of(const SmallRel& s, const std::vector<int>& sigma, int targetArity) {
  SmallRel out{targetArity, 0};
  for (std::uint32_t t = 0; t < (1u << targetArity); ++t) {
    std::uint32_t pulled = 0;
    for (int p = 0; p < s.arity; ++p) {
      std::uint32_t bit = (t >> (targetArity - 1 - sigma[p])) & 1u;
      pulled |= bit << (s.arity - 1 - p);
    }
    if ((s.mask >> pulled) & 1u) out.mask |= 1u << t;
  }
  return out;
}

// Drop coordinate `pos` (0-based) existentially.
SmallRel project_out(const SmallRel& s, int pos) {
  SmallRel out{s.arity - 1, 0};
  for (std::uint32_t t = 0; t < (1u << s.arity); ++t) {
    if (!((s.mask >> t) & 1u)) continue;
    std::uint32_t shifted = 0;
    int outBit = out.arity - 1;
    for (int p = 0; p < s.arity; ++p) {
      if (p == pos) continue;
      std::uint32_t bit = (t >> (s.arity - 1 - p)) & 1u;
      shifted |= bit << outBit--;
    }
    out.mask |= 1u << shifted;
  }
  return out;
}

}  // namespace

std::vector<Relation> closure_oracle(const std::vector<Relation>& gamma, int max_arity,
                                     std::uint64_t budget) {
  if (max_arity < 1 || max_arity > 4)
    throw capacity_error("closure oracle supports max_arity 1..4");

  std::set<SmallRel> seen;
  std::queue<SmallRel> work;
  std::uint64_t inserted = 0;
  auto push = [&](const SmallRel& s) {
    if (seen.insert(s).second) {
      if (++inserted > budget) throw capacity_error("closure oracle exceeded budget");
      work.push(s);
    }
  };

  // Seeds: EQ^2, empty and full of each arity, and every identification
  // minor of a gamma relation onto <= max_arity variables.
  push(to_small(Relation::eq_rel(2)));
  for (int a = 1; a <= max_arity; ++a) {
    push(SmallRel{a, 0});
    push(SmallRel{a, static_cast<std::uint32_t>((std::uint64_t{1} << (1u << a)) - 1)});
  }
  for (const Relation& r : gamma) {
    for (int a = 1; a <= max_arity; ++a) {
      std::uint64_t maps = 1;
      for (int p = 0; p < r.arity(); ++p) maps *= static_cast<std::uint64_t>(a);
      if (maps > budget) throw capacity_error("closure oracle: seed relation arity too large");
      std::vector<int> sigma(r.arity(), 0);
      SmallRel src = to_small(r);
      for (std::uint64_t id = 0; id < maps; ++id) {
        std::uint64_t v = id;
        for (int p = 0; p < r.arity(); ++p) { sigma[p] = static_cast<int>(v % a); v /= a; }
        push(minor_of(src, sigma, a));
      }
    }
  }

  // Fixpoint: conjunction within an arity, all minors, single projections.
  while (!work.empty()) {
    SmallRel s = work.front();
    work.pop();

    std::vector<SmallRel> sameArity;
    for (const SmallRel& t : seen)
      if (t.arity == s.arity) sameArity.push_back(t);
    for (const SmallRel& t : sameArity) push(SmallRel{s.arity, s.mask & t.mask});

    std::vector<int> sigma(s.arity, 0);
    for (int a = 1; a <= max_arity; ++a) {
      std::uint64_t maps = 1;
      for (int p = 0; p < s.arity; ++p) maps *= static_cast<std::uint64_t>(a);
      for (std::uint64_t id = 0; id < maps; ++id) {
        std::uint64_t v = id;
        for (int p = 0; p < s.arity; ++p) { sigma[p] = static_cast<int>(v % a); v /= a; }
        push(minor_of(s, sigma, a));
      }
    }

    if (s.arity > 1)
      for (int p = 0; p < s.arity; ++p) push(project_out(s, p));
  }

  std::vector<Relation> out;
  out.reserve(seen.size());
  for (const SmallRel& s : seen) out.push_back(from_small(s));
  return out;
}

bool closure_contains(const std::vector<Relation>& closure, const Relation& r) {
  return std::find(closure.begin(), closure.end(), r) != closure.end();
}

}  // namespace maxones
