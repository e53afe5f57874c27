#include "maxones/delta_matroid.hpp"

#include <algorithm>
#include <sstream>

namespace maxones {

std::optional<DeltaWitness> delta_matroid_violation(const Relation& r) {
  int n = r.arity();
  std::vector<std::uint32_t> members = r.codes();
  for (std::uint32_t x : members) {
    for (std::uint32_t y : members) {
      std::uint32_t diff = x ^ y;
      if (__builtin_popcount(diff) < 2) continue;
      // Steps from x to y flip one coordinate where x and y differ; collect
      // candidates in ascending code order for the deterministic witness.
      std::vector<std::uint32_t> steps;
      for (int b = 0; b < n; ++b)
        if ((diff >> b) & 1u) steps.push_back(x ^ (1u << b));
      std::sort(steps.begin(), steps.end());
      for (std::uint32_t xp : steps) {
        if (r.contains(xp)) continue;
        std::uint32_t diff2 = xp ^ y;
        bool rescued = false;
        for (int b = 0; b < n && !rescued; ++b)
          if ((diff2 >> b) & 1u && r.contains(xp ^ (1u << b))) rescued = true;
        if (!rescued)
          return DeltaWitness{BoolTuple(n, x), BoolTuple(n, y), BoolTuple(n, xp)};
      }
    }
  }
  return std::nullopt;
}

bool is_delta_matroid(const Relation& r) { return !delta_matroid_violation(r).has_value(); }

// --- affine structure --------------------------------------------------------

namespace {

int col_bit(int arity, int coord) { return arity - coord; }

}  // namespace

Relation Gf2System::solution_set() const {
  Relation out(arity);
  for (std::uint32_t c = 0; c < out.tuple_count(); ++c) {
    bool ok = true;
    for (const Row& row : rows)
      if (__builtin_parity(row.coeffs & c) != static_cast<int>(row.rhs)) { ok = false; break; }
    if (ok) out.insert(c);
  }
  return out;
}

bool Gf2System::coupled() const {
  for (int fc : free_cols) {
    int count = 0;
    for (const Row& row : rows)
      if ((row.coeffs >> col_bit(arity, fc)) & 1u) ++count;
    if (count >= 2) return true;
  }
  return false;
}

std::string Gf2System::str() const {
  std::ostringstream os;
  for (const Row& row : rows) {
    bool first = true;
    for (int i = 1; i <= arity; ++i) {
      if ((row.coeffs >> col_bit(arity, i)) & 1u) {
        os << (first ? "x" : " + x") << i;
        first = false;
      }
    }
    if (first) os << "0";
    os << " = " << (row.rhs ? 1 : 0) << "\n";
  }
  return os.str();
}

bool is_affine(const Relation& r) {
  // Nonempty and closed under x^y^z componentwise.
  std::vector<std::uint32_t> m = r.codes();
  if (m.empty()) return false;
  for (std::uint32_t a : m)
    for (std::uint32_t b : m)
      for (std::uint32_t c : m)
        if (!r.contains(a ^ b ^ c)) return false;
  return true;
}

Gf2System affine_form(const Relation& r) {
  if (r.empty()) throw std::domain_error("affine_form: empty relation");
  int n = r.arity();
  std::vector<std::uint32_t> members = r.codes();
  std::uint32_t t0 = members.front();

  // Row space of the difference vectors, then its null space gives the
  // constraint rows A with A.x = A.t0.
  std::vector<std::uint32_t> basis;  // echelon, leading bit high
  for (std::uint32_t t : members) {
    std::uint32_t v = t ^ t0;
    for (std::uint32_t b : basis) v = std::min(v, v ^ b);
    if (v) {
      basis.push_back(v);
      std::sort(basis.begin(), basis.end(), std::greater<>());
    }
  }

  // Null space of span(basis): vectors a with parity(a & v) = 0 for all v.
  std::vector<std::uint32_t> constraints;
  for (std::uint32_t a = 1; a < (1u << n); ++a) {
    bool orthogonal = true;
    for (std::uint32_t v : basis)
      if (__builtin_parity(a & v)) { orthogonal = false; break; }
    if (orthogonal) constraints.push_back(a);
  }

  // Reduce the constraint rows (with rhs a.t0) to RREF, pivot leftmost.
  struct WorkRow { std::uint32_t coeffs; bool rhs; };
  std::vector<WorkRow> reduced;
  for (std::uint32_t a : constraints) {
    WorkRow row{a, static_cast<bool>(__builtin_parity(a & t0))};
    for (const WorkRow& b : reduced) {
      std::uint32_t lead = 1u << (31 - __builtin_clz(b.coeffs));
      if (row.coeffs & lead) { row.coeffs ^= b.coeffs; row.rhs ^= b.rhs; }
    }
    if (row.coeffs) {
      reduced.push_back(row);
      std::sort(reduced.begin(), reduced.end(),
                [](const WorkRow& x, const WorkRow& y) { return x.coeffs > y.coeffs; });
    }
  }
  // Back-substitute to clear pivots above.
  for (std::size_t i = 0; i < reduced.size(); ++i) {
    std::uint32_t lead = 1u << (31 - __builtin_clz(reduced[i].coeffs));
    for (std::size_t j = 0; j < i; ++j)
      if (reduced[j].coeffs & lead) {
        reduced[j].coeffs ^= reduced[i].coeffs;
        reduced[j].rhs ^= reduced[i].rhs;
      }
  }

  Gf2System sys;
  sys.arity = n;
  std::uint32_t pivotMask = 0;
  for (const WorkRow& row : reduced) {
    sys.rows.push_back({row.coeffs, row.rhs});
    pivotMask |= 1u << (31 - __builtin_clz(row.coeffs));
  }
  for (int i = 1; i <= n; ++i)
    ((pivotMask >> col_bit(n, i)) & 1u ? sys.pivot_cols : sys.free_cols).push_back(i);

  if (sys.solution_set() != r)
    throw std::domain_error("affine_form: relation is not affine over GF(2)");
  return sys;
}

bool is_coupled(const Relation& r) { return affine_form(r).coupled(); }

// --- Q class ----------------------------------------------------------------

std::string q_factor_kind_name(QFactorKind k) {
  switch (k) {
    case QFactorKind::Empty: return "empty";
    case QFactorKind::C0: return "c0";
    case QFactorKind::C1: return "c1";
    case QFactorKind::Eq2: return "eq2";
    case QFactorKind::Neq2: return "neq2";
    case QFactorKind::AtMostOneFlipped: return "atMostOneFlipped";
  }
  return "?";
}

Relation QFactorization::reassemble() const {
  Relation out(arity);
  for (std::uint32_t c = 0; c < out.tuple_count(); ++c) {
    bool ok = true;
    for (const QFactor& f : factors) {
      std::vector<int> coords = f.coords.sorted();
      int fa = static_cast<int>(coords.size());
      std::uint32_t sub = 0;
      for (int j = 0; j < fa; ++j)
        sub |= (((c >> (arity - coords[j])) & 1u)) << (fa - 1 - j);
      bool member = false;
      switch (f.kind) {
        case QFactorKind::Empty: member = false; break;
        case QFactorKind::C0: member = sub == 0; break;
        case QFactorKind::C1: member = sub == 1; break;
        case QFactorKind::Eq2: member = sub == 0b00 || sub == 0b11; break;
        case QFactorKind::Neq2: member = sub == 0b01 || sub == 0b10; break;
        case QFactorKind::AtMostOneFlipped: {
          std::uint32_t flip = 0;
          for (int j = 0; j < fa; ++j)
            if (f.negated.contains(coords[j])) flip |= 1u << (fa - 1 - j);
          member = __builtin_popcount(sub ^ flip) <= 1;
          break;
        }
      }
      if (!member) { ok = false; break; }
    }
    if (ok) out.insert(c);
  }
  return out;
}

std::string QFactorization::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) os << " x ";
    os << q_factor_kind_name(factors[i].kind) << factors[i].coords.str();
    if (factors[i].kind == QFactorKind::AtMostOneFlipped && !factors[i].negated.empty())
      os << "~N" << factors[i].negated.str();
  }
  return os.str();
}

std::vector<std::pair<CoordSet, Relation>> decompose(const Relation& r) {
  if (r.empty()) throw std::invalid_argument("decompose: empty relation");
  int n = r.arity();
  std::vector<int> remaining;
  for (int i = 1; i <= n; ++i) remaining.push_back(i);

  std::vector<std::pair<CoordSet, Relation>> parts;
  Relation cur = r;  // projection of r onto `remaining`, in their order

  while (!remaining.empty()) {
    int m = static_cast<int>(remaining.size());
    if (m == 1) {
      parts.emplace_back(CoordSet{remaining[0]}, cur);
      break;
    }
    // Minimal local subset containing local coordinate 1 that splits cur as
    // a product; sizes ascending, deterministic mask order within a size.
    bool split = false;
    for (int size = 1; size < m && !split; ++size) {
      for (std::uint32_t mask = 0; mask < (1u << m) && !split; ++mask) {
        if (!(mask & 1u) || __builtin_popcount(mask) != size) continue;
        CoordSet local, colocal;
        for (int b = 0; b < m; ++b) (((mask >> b) & 1u) ? local : colocal).add(b + 1);
        Relation ps = cur.project(local);
        Relation pc = cur.project(colocal);
        if (ps.size() * pc.size() != cur.size()) continue;
        // Found the minimal block: record it globally and recurse on the rest.
        CoordSet globalBlock;
        std::vector<int> nextRemaining;
        for (int b = 0; b < m; ++b) {
          if ((mask >> b) & 1u) globalBlock.add(remaining[b]);
          else nextRemaining.push_back(remaining[b]);
        }
        parts.emplace_back(globalBlock, ps);
        remaining = nextRemaining;
        cur = pc;
        split = true;
      }
    }
    if (!split) {  // indecomposable: the whole remaining set is one factor
      CoordSet all;
      for (int c : remaining) all.add(c);
      parts.emplace_back(all, cur);
      break;
    }
  }
  return parts;
}

namespace {

std::optional<QFactor> classify_factor(const CoordSet& globalCoords, const Relation& f) {
  int a = f.arity();
  std::vector<int> coords = globalCoords.sorted();
  if (a == 1) {
    if (f == Relation::c0()) return QFactor{globalCoords, QFactorKind::C0, {}};
    if (f == Relation::c1()) return QFactor{globalCoords, QFactorKind::C1, {}};
    if (f == Relation::full(1)) return QFactor{globalCoords, QFactorKind::AtMostOneFlipped, {}};
    return std::nullopt;  // empty unary cannot appear: factors of a nonempty relation
  }
  if (a == 2) {
    if (f == Relation::eq_rel(2)) return QFactor{globalCoords, QFactorKind::Eq2, {}};
    if (f == Relation::neq()) return QFactor{globalCoords, QFactorKind::Neq2, {}};
  }
  // Try each member as the candidate zero tuple: flipping by its support
  // must give exactly the <=1-ones ball.
  Relation ball = Relation::at_most_one(a);
  for (std::uint32_t t : f.codes()) {
    CoordSet local;
    for (int i = 1; i <= a; ++i)
      if ((t >> (a - i)) & 1u) local.add(i);
    if (f.flip(local) == ball) {
      CoordSet global;
      for (int i = 1; i <= a; ++i)
        if (local.contains(i)) global.add(coords[i - 1]);
      return QFactor{globalCoords, QFactorKind::AtMostOneFlipped, global};
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<QFactorization> in_q(const Relation& r) {
  QFactorization out;
  out.arity = r.arity();
  if (r.empty()) {
    out.factors.push_back(QFactor{CoordSet::range(1, r.arity()), QFactorKind::Empty, {}});
    return out;
  }
  for (auto& [coords, factor] : decompose(r)) {
    auto qf = classify_factor(coords, factor);
    if (!qf) return std::nullopt;
    out.factors.push_back(*qf);
  }
  if (out.reassemble() != r)
    throw std::logic_error("in_q: factorization failed to reassemble (internal bug)");
  return out;
}

}  // namespace maxones
