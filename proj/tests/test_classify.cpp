#include <doctest.h>

#include "maxones/classify.hpp"

using namespace maxones;

namespace {
ConstraintLanguage cons(std::string name, std::vector<std::pair<std::string, Relation>> rels) {
  return ConstraintLanguage::conservative_of(std::move(name), std::move(rels));
}

Relation xor3_even() {
  Relation r(3);
  for (std::uint32_t t = 0; t < 8; ++t)
    if (__builtin_popcount(t) % 2 == 0) r.insert(t);
  return r;
}

Relation chain3() {
  Relation r(3);
  for (std::uint32_t c = 0; c < 8; ++c) {
    bool x1 = c & 4, x2 = c & 2, x3 = c & 1;
    if (!(x1 && x2) && !(x2 && x3)) r.insert(c);
  }
  return r;
}

Relation impl_chain3() {
  Relation r(3);
  for (std::uint32_t c = 0; c < 8; ++c) {
    bool x = c & 4, y = c & 2, z = c & 1;
    if ((!x || y) && (!y || z)) r.insert(c);
  }
  return r;
}
}  // namespace

TEST_CASE("three-or-more: tractable case") {
  Verdict v = classify_k(cons("impl", {{"IMPL", Relation::impl()}}), 3);
  CHECK(v.cls == VerdictClass::PO);
  CHECK(v.located == CoCloneLabel::of(CoCloneLabel::Tag::IM2));
  CHECK(replay_evidence(v));
}

TEST_CASE("three-or-more: NAND2 lands on the conditional APX branch") {
  Verdict v = classify_k(cons("nand2", {{"NAND2", Relation::nand_rel(2)}}), 3);
  CHECK(v.cls == VerdictClass::Conditional);
  REQUIRE(v.if_not_eq2_rep);
  CHECK(v.if_not_eq2_rep->cls == VerdictClass::ApxComplete);
  CHECK(v.if_eq2_rep->cls == VerdictClass::PolyApxComplete);
  CHECK(v.search_outcome.rfind("exhausted", 0) == 0);
  CHECK(v.located == CoCloneLabel::is12(2));
  CHECK(replay_evidence(v));
}

TEST_CASE("three-or-more: equality present gives poly-APX-complete") {
  Verdict v = classify_k(
      cons("eqnand", {{"EQ2", Relation::eq_rel(2)}, {"NAND2", Relation::nand_rel(2)}}), 3);
  CHECK(v.cls == VerdictClass::PolyApxComplete);
  CHECK(replay_evidence(v));
}

TEST_CASE("three-or-more: outside the chain is equivalent to unbounded") {
  // IMPL-chain relation: inside IE2, outside IS12.
  Verdict v = classify_k(cons("g", {{"NAND2", Relation::nand_rel(2)}, {"IMPL", Relation::impl()}}), 3);
  CHECK(v.cls == VerdictClass::EquivToUnbounded);
  CHECK(v.unbounded_label == CoCloneLabel::is10(2));
  CHECK(replay_evidence(v));

  // NEQ alone: outside IE2 and IV2, equality comes from the two-link chain.
  Verdict v2 = classify_k(cons("neq", {{"NEQ", Relation::neq()}}), 3);
  CHECK(v2.cls == VerdictClass::EquivToUnbounded);
  bool hasGadget = false;
  for (const Evidence& e : v2.evidence) hasGadget |= e.kind == Evidence::Kind::GadgetWitness;
  CHECK(hasGadget);
  CHECK(replay_evidence(v2));

  // Affine language: annotated with the unbounded class the source names.
  Verdict v3 = classify_k(cons("xor", {{"XOR3", xor3_even()}}), 3);
  CHECK(v3.cls == VerdictClass::EquivToUnbounded);
  CHECK(v3.unbounded_label == CoCloneLabel::of(CoCloneLabel::Tag::IL2));
  CHECK(v3.unbounded_class == "APX-complete");
  CHECK(replay_evidence(v3));
}

TEST_CASE("classify_k agrees across k on the non-search cases") {
  for (auto& gamma : {cons("impl", {{"IMPL", Relation::impl()}}),
                      cons("neq", {{"NEQ", Relation::neq()}})}) {
    Verdict a = classify_k(gamma, 3);
    Verdict b = classify_k(gamma, 4);
    CHECK(a.cls == b.cls);
  }
}

TEST_CASE("two occurrences: tractable cases") {
  // Equality language: inside IV2 (also ID1); Theorem 2 case 1 wins even
  // though EQ3 is not a delta-matroid relation.
  Verdict v = classify_2(cons("eq3", {{"EQ3", Relation::eq_rel(3)}}));
  CHECK(v.cls == VerdictClass::PO);
  CHECK(replay_evidence(v));

  // NEQ with constants: ID1.
  Verdict v2 = classify_2(cons("neq", {{"NEQ", Relation::neq()}}));
  CHECK(v2.cls == VerdictClass::PO);
  CHECK(replay_evidence(v2));

  // NAND2 with constants: delta-matroid inside ID2.
  Verdict v3 = classify_2(cons("nand2", {{"NAND2", Relation::nand_rel(2)}}));
  CHECK(v3.cls == VerdictClass::PO);
  CHECK(replay_evidence(v3));
}

TEST_CASE("two occurrences: coupled affine language is APX-complete") {
  Verdict v = classify_2(cons("il2", {{"XOR3", xor3_even()}, {"EQ3", Relation::eq_rel(3)}}));
  CHECK(v.cls == VerdictClass::ApxComplete);
  CHECK(v.located == CoCloneLabel::of(CoCloneLabel::Tag::IL2));
  CHECK(replay_evidence(v));

  // Without the coupled relation the same co-clone is tractable.
  Verdict v2 = classify_2(cons("il2ok", {{"XOR3", xor3_even()}}));
  CHECK(v2.cls == VerdictClass::PO);
  CHECK(replay_evidence(v2));
}

TEST_CASE("two occurrences: full ID2 with a non-delta-matroid is poly-APX-complete") {
  Verdict v = classify_2(cons("id2", {{"OR2", Relation::or2()},
                                      {"NAND2", Relation::nand_rel(2)},
                                      {"CHAIN", impl_chain3()}}));
  CHECK(v.cls == VerdictClass::PolyApxComplete);
  CHECK(v.located == CoCloneLabel::of(CoCloneLabel::Tag::ID2));
  CHECK(replay_evidence(v));
}

TEST_CASE("two occurrences: the NAND chain relation refines to APX-complete") {
  Verdict v = classify_2(cons("abc5", {{"CHAIN3", chain3()}}));
  CHECK(v.cls == VerdictClass::ApxComplete);
  CHECK(replay_evidence(v));
}

TEST_CASE("two occurrences: IE2 non-delta-matroid mixes get the hardness floor") {
  Verdict v = classify_2(cons("mix", {{"CHAIN3", chain3()}, {"NAND3", Relation::nand_rel(3)}}));
  CHECK(v.cls == VerdictClass::ApxHard);
  bool hasCore = false;
  for (const Evidence& e : v.evidence) hasCore |= e.kind == Evidence::Kind::CatalogCore;
  CHECK(hasCore);
  CHECK(replay_evidence(v));
}

TEST_CASE("two occurrences: non-delta-matroid outside IE2 is feasibility-hard") {
  // EQ3-with-flip: not and-closed, not or-closed, not affine, not maj-closed.
  Relation r = Relation::eq_rel(3).flip(CoordSet{1});
  Relation nand3 = Relation::nand_rel(3);
  Verdict v = classify_2(cons("wild", {{"R", r}, {"NAND3", nand3}, {"NEQ", Relation::neq()}}));
  CHECK(v.cls == VerdictClass::FeasibilityNpHard);
  CHECK(replay_evidence(v));
}

TEST_CASE("two occurrences: NAND/IMPL family is tractable, the rest stays open") {
  Verdict v = classify_2(cons("family", {{"NAND2", Relation::nand_rel(2)},
                                         {"NAND3", Relation::nand_rel(3)},
                                         {"IMPL", Relation::impl()}}));
  CHECK(v.cls == VerdictClass::PO);
  CHECK(replay_evidence(v));

  Verdict v2 = classify_2(cons("nand3", {{"NAND3", Relation::nand_rel(3)}}));
  CHECK(v2.cls == VerdictClass::PO);  // {NAND^3} is itself in the family

  // The four-coordinate delta-matroid the paper leaves open.
  Relation open4(4);
  for (std::uint32_t c = 0; c < 16; ++c) {
    bool x = c & 8, y = c & 4, z = c & 2, w = c & 1;
    bool nand3a = !(y && z && w), nand3b = !(x && z && w), nand2 = !(x && y);
    if (nand3a && nand3b && nand2) open4.insert(c);
  }
  REQUIRE(is_delta_matroid(open4));
  Verdict v3 = classify_2(cons("open", {{"R4", open4}}));
  CHECK(v3.cls == VerdictClass::Open);
}

TEST_CASE("non-conservative: 1-valid languages are trivial") {
  ConstraintLanguage or2("or2");
  or2.add("OR2", Relation::or2());
  Verdict v = classify_nonconservative(or2, 2);
  CHECK(v.cls == VerdictClass::Trivial1Valid);
  CHECK(replay_evidence(v));

  ConstraintLanguage eq2("eq2");
  eq2.add("EQ2", Relation::eq_rel(2));
  Verdict v2 = classify(eq2, 3);
  CHECK(v2.cls == VerdictClass::Trivial1Valid);
}

TEST_CASE("non-conservative: hardness transfers, tractability carries over") {
  ConstraintLanguage nand2("nand2");
  nand2.add("NAND2", Relation::nand_rel(2));
  Verdict v = classify(nand2, 3);
  CHECK(v.conservative_reference);
  CHECK(v.np_hard_transferred);
  CHECK(v.cls == VerdictClass::Conditional);  // the conservative verdict's class
  bool hasTransfer = false;
  for (const Evidence& e : v.evidence) hasTransfer |= e.kind == Evidence::Kind::TransferDemo;
  CHECK(hasTransfer);
  CHECK(replay_evidence(v));

  Verdict v2 = classify(nand2, 2);
  CHECK(v2.conservative_reference);
  CHECK(!v2.np_hard_transferred);  // conservative side is PO at two occurrences
  CHECK(v2.cls == VerdictClass::PO);
}

TEST_CASE("reports carry the machine block") {
  ConstraintLanguage gamma = cons("nand2", {{"NAND2", Relation::nand_rel(2)}});
  Verdict v = classify(gamma, 3);
  std::string report = render_report(gamma, 3, v);
  CHECK(report.find("---BEGIN RESULT---") != std::string::npos);
  CHECK(report.find("verdict=CONDITIONAL") != std::string::npos);
  CHECK(report.find("if_not=APX_COMPLETE") != std::string::npos);
  CHECK(report.find("---END RESULT---") != std::string::npos);

  // Determinism: identical runs give identical reports.
  Verdict v2 = classify(gamma, 3);
  CHECK(render_report(gamma, 3, v2) == report);
}
