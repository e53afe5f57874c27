#include <doctest.h>

#include <sstream>

#include "maxones/coclone.hpp"
#include "maxones/delta_matroid.hpp"
#include "maxones/gadget.hpp"
#include "support/oracles.hpp"

using namespace maxones;

namespace {
ConstraintLanguage lang(std::vector<std::pair<std::string, Relation>> rels, bool conservative = true) {
  ConstraintLanguage l("test");
  for (auto& [n, r] : rels) l.add(n, r);
  if (conservative) l.make_conservative();
  return l;
}
}  // namespace

TEST_CASE("verify_gadget accepts the equality-lemma constructions") {
  // IMPL(x,y) <-> exists z: NAND2(x,z) & OR2(z,y), a 3-representation.
  ConstraintLanguage env = lang({{"NAND2", Relation::nand_rel(2)}, {"OR2", Relation::or2()}});
  Gadget g;
  g.primary_count = 2;
  g.aux_count = 1;
  g.occurrence_cap = 3;
  g.constraints.push_back({"NAND2", {0, 2}});
  g.constraints.push_back({"OR2", {2, 1}});
  CHECK(verify_gadget(Relation::impl(), g, env));
  CHECK(!verify_gadget(Relation::eq_rel(2), g, env));

  // EQ2(x,y) <-> exists z: NEQ(x,z) & NEQ(z,y).
  ConstraintLanguage env2 = lang({{"NEQ", Relation::neq()}});
  Gadget h;
  h.primary_count = 2;
  h.aux_count = 1;
  h.occurrence_cap = 3;
  h.constraints.push_back({"NEQ", {0, 2}});
  h.constraints.push_back({"NEQ", {2, 1}});
  CHECK(verify_gadget(Relation::eq_rel(2), h, env2));

  // Oracle cross-check: the defined relation computed on plain tuple sets.
  oracle::Formula f;
  f.primaries = 2;
  f.aux = 1;
  f.constraints.push_back({oracle::tuples_of(Relation::neq()), {0, 2}});
  f.constraints.push_back({oracle::tuples_of(Relation::neq()), {2, 1}});
  CHECK(oracle::to_relation(2, oracle::defined_relation(f)) == Relation::eq_rel(2));
}

TEST_CASE("cap violations are reported distinctly") {
  ConstraintLanguage env = lang({{"NAND2", Relation::nand_rel(2)}});
  Gadget g;
  g.primary_count = 1;
  g.aux_count = 1;
  g.occurrence_cap = 1;
  g.constraints.push_back({"NAND2", {0, 1}});
  g.constraints.push_back({"NAND2", {1, 1}});  // y1 occurs 3 times
  auto check = check_gadget(Relation::c0(), g, env);
  CHECK(check.status == GadgetCheck::Status::CapViolation);

  Gadget bad;
  bad.primary_count = 1;
  bad.aux_count = 0;
  bad.occurrence_cap = 2;
  bad.constraints.push_back({"MISSING", {0}});
  CHECK_THROWS_AS(verify_gadget(Relation::c0(), bad, env), std::invalid_argument);
}

TEST_CASE("verify_gadget agrees with the closure oracle on small targets") {
  ConstraintLanguage env = lang({{"NEQ", Relation::neq()}}, false);
  Gadget h;
  h.primary_count = 2;
  h.aux_count = 1;
  h.occurrence_cap = 3;
  h.constraints.push_back({"NEQ", {0, 2}});
  h.constraints.push_back({"NEQ", {2, 1}});
  Relation defined = represented_relation(h, env);
  auto closure = closure_oracle({Relation::neq()}, 2);
  CHECK(closure_contains(closure, defined));
}

TEST_CASE("derive_eq_or_impl") {
  // IMPL flipped: {(0,0),(1,1),(1,0)} normalizes to IMPL by argument swap.
  Relation flipped = Relation::of(2, {0b00, 0b11, 0b10});
  EqOrImpl rep = derive_eq_or_impl(flipped);
  CHECK(rep.which == EqOrImpl::Which::Impl);
  CHECK(verify_gadget(Relation::impl(), rep.gadget, rep.env));

  // product(IMPL, c1): still IMPL after the recipe.
  Relation prod = product(Relation::impl(), Relation::c1());
  EqOrImpl rep2 = derive_eq_or_impl(prod);
  CHECK(rep2.which == EqOrImpl::Which::Impl);
  CHECK(verify_gadget(Relation::impl(), rep2.gadget, rep2.env));

  // EQ3 lies inside IS12: precondition rejected.
  CHECK_THROWS_AS(derive_eq_or_impl(Relation::eq_rel(3)), std::domain_error);

  // An EQ2-producing case: x=y & x->z gives EQ2 on coordinates... use the
  // IMPL-chain relation, which is in IE2 \ IS12.
  Relation implChain(3);
  for (std::uint32_t c = 0; c < 8; ++c) {
    bool x = c & 4, y = c & 2, z = c & 1;
    if ((!x || y) && (!y || z)) implChain.insert(c);
  }
  EqOrImpl rep3 = derive_eq_or_impl(implChain);
  Relation target = rep3.which == EqOrImpl::Which::Impl ? Relation::impl() : Relation::eq_rel(2);
  CHECK(verify_gadget(target, rep3.gadget, rep3.env));
}

TEST_CASE("derive_nand_m") {
  CHECK(derive_nand_m(Relation::nand_rel(2), 2) == CoordSet{1, 2});
  CHECK(derive_nand_m(product(Relation::c1(), Relation::nand_rel(3)), 3) == CoordSet{2, 3, 4});
  CHECK_THROWS_AS(derive_nand_m(Relation::impl().flip(CoordSet{1}), 2), std::domain_error);
  CHECK_THROWS_AS(derive_nand_m(Relation::eq_rel(2), 2), std::domain_error);
}

TEST_CASE("search_gadget finds small representations") {
  ConstraintLanguage env = lang({{"NEQ", Relation::neq()}, {"OR2", Relation::or2()}});
  SearchOutcome nand = search_gadget(Relation::nand_rel(2), env, 3);
  REQUIRE(nand.gadget.has_value());
  CHECK(verify_gadget(Relation::nand_rel(2), *nand.gadget, env));
  SearchBounds bounds;
  bounds.max_aux = 1;
  bounds.max_constraints = 2;

  ConstraintLanguage env2 = lang({{"NEQ", Relation::neq()}}, false);
  SearchOutcome eq = search_gadget(Relation::eq_rel(2), env2, 3, bounds);
  REQUIRE(eq.gadget.has_value());
  CHECK(eq.gadget->aux_count == 1);
  CHECK(eq.gadget->constraints.size() == 2);

  // EQ2 from {NAND2, c0, c1} does not exist: search must exhaust.
  ConstraintLanguage env3 = lang({{"NAND2", Relation::nand_rel(2)}});
  SearchOutcome none = search_gadget(Relation::eq_rel(2), env3, 3, bounds);
  CHECK(!none.gadget.has_value());
  CHECK(none.exhausted);
}

TEST_CASE("extract_nondelta_core on the named relations") {
  auto eq3 = extract_nondelta_core(Relation::eq_rel(3));
  CHECK(eq3.catalog_entry == "1");
  CHECK(eq3.core == Relation::eq_rel(3));
  CHECK(verify_gadget(eq3.core, eq3.gadget, eq3.env));

  Relation chain(3);
  for (std::uint32_t c = 0; c < 8; ++c) {
    bool x1 = c & 4, x2 = c & 2, x3 = c & 1;
    if (!(x1 && x2) && !(x2 && x3)) chain.insert(c);
  }
  auto abc5 = extract_nondelta_core(chain);
  CHECK(abc5.catalog_entry == "ABC5");

  CHECK_THROWS_AS(extract_nondelta_core(Relation::nand_rel(3)), std::domain_error);
}

TEST_CASE("extraction matches a catalog entry for every small non-delta-matroid") {
  // Arity 3 exhaustively, arity 4 sampled.
  for (std::uint32_t mask = 0; mask < 256; ++mask) {
    Relation r(3);
    for (std::uint32_t c = 0; c < 8; ++c)
      if ((mask >> c) & 1u) r.insert(c);
    if (is_delta_matroid(r)) continue;
    auto core = extract_nondelta_core(r);
    CHECK(!core.catalog_entry.empty());
  }
  for (std::uint64_t mask = 1; mask < 65536; mask += 97) {
    Relation r(4);
    for (std::uint32_t c = 0; c < 16; ++c)
      if ((mask >> c) & 1u) r.insert(c);
    if (is_delta_matroid(r)) continue;
    auto core = extract_nondelta_core(r);
    CHECK(verify_gadget(core.core, core.gadget, core.env));
  }
}

TEST_CASE("gadget text format round-trips") {
  Gadget g;
  g.primary_count = 2;
  g.aux_count = 1;
  g.occurrence_cap = 3;
  g.target_name = "IMPL";
  g.constraints.push_back({"NAND2", {0, 2}});
  g.constraints.push_back({"OR2", {2, 1}});
  std::string text = g.str();
  std::istringstream in(text);
  Gadget back = parse_gadget_file(in);
  CHECK(back.str() == text);
  CHECK(back.primary_count == 2);
  CHECK(back.constraints.size() == 2);
  CHECK(back.constraints[1].scope == std::vector<int>{2, 1});
}
