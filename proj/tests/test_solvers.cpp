#include <doctest.h>

#include <random>

#include "maxones/solvers.hpp"
#include "support/oracles.hpp"

using namespace maxones;

namespace {

ConstraintLanguage nand_lang() {
  ConstraintLanguage l("nand");
  for (int m = 2; m <= 4; ++m) l.add("NAND" + std::to_string(m), Relation::nand_rel(m));
  l.make_conservative();
  return l;
}

// Random {NAND^m, c0, c1} instance with every variable in at most l scopes.
Instance random_nand_instance(std::mt19937_64& rng, int maxVars, int bound) {
  Instance inst;
  int n = 2 + static_cast<int>(rng() % (maxVars - 1));
  for (int i = 0; i < n; ++i)
    inst.add_variable("v" + std::to_string(i), Rational(static_cast<int>(rng() % 6), 1 + rng() % 2));
  std::vector<int> occ(n, 0);
  int tries = 2 * n;
  while (tries-- > 0) {
    int m = 2 + static_cast<int>(rng() % 3);
    std::vector<int> scope;
    for (int j = 0; j < m; ++j) {
      int v = static_cast<int>(rng() % n);
      if (occ[v] >= bound) continue;
      ++occ[v];
      scope.push_back(v);
    }
    if (static_cast<int>(scope.size()) >= 2)
      inst.add_constraint("NAND" + std::to_string(scope.size()), scope);
  }
  return inst;
}

}  // namespace

TEST_CASE("solve_exact basics") {
  ConstraintLanguage env = nand_lang();

  Instance a;
  a.add_variable("x", Rational(1));
  a.add_variable("y", Rational(1));
  a.add_constraint("NAND2", {0, 1});
  auto sa = solve_exact(a, env);
  REQUIRE(sa.has_value());
  CHECK(sa->measure == Rational(1));

  Instance b;
  b.add_variable("x", Rational(5));
  b.add_constraint("c1", {0});
  CHECK(solve_exact(b, env)->measure == Rational(5));

  Instance c;
  c.add_variable("x", Rational(1));
  c.add_constraint("c0", {0});
  c.add_constraint("c1", {0});
  CHECK(!solve_exact(c, env).has_value());
}

TEST_CASE("solve_exact ties break to the lexicographically greatest optimum") {
  ConstraintLanguage env = nand_lang();
  Instance a;
  a.add_variable("x", Rational(1));
  a.add_variable("y", Rational(1));
  a.add_variable("z", Rational(2));
  a.add_constraint("NAND2", {0, 1});  // x + y <= 1
  auto s = solve_exact(a, env);
  REQUIRE(s.has_value());
  CHECK(s->measure == Rational(3));
  CHECK(s->assignment == std::vector<bool>{true, false, true});
}

TEST_CASE("solve_exact agrees with plain enumeration on random instances") {
  ConstraintLanguage env = nand_lang();
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 60; ++trial) {
    Instance inst = random_nand_instance(rng, 9, 4);
    auto fast = solve_exact(inst, env);
    auto slow = oracle::solve_by_enumeration(inst, env);
    REQUIRE(fast.has_value() == slow.has_value());
    if (fast) CHECK(fast->measure == *slow);
  }
}

TEST_CASE("greedy examples") {
  ConstraintLanguage env = nand_lang();

  Instance a;
  a.add_variable("x", Rational(3));
  a.add_variable("y", Rational(1));
  a.add_constraint("NAND2", {0, 1});
  Solution sa = greedy_apx(a, env);
  CHECK(sa.measure == Rational(3));
  CHECK(sa.assignment == std::vector<bool>{true, false});

  Instance b;
  b.add_variable("x", Rational(1));
  b.add_variable("y", Rational(1));
  b.add_variable("z", Rational(1));
  b.add_constraint("NAND3", {0, 1, 2});
  Solution sb = greedy_apx(b, env);
  CHECK(sb.measure == Rational(2));

  Instance c;
  c.add_variable("x", Rational(1));
  c.add_constraint("OR2", {0, 0});
  ConstraintLanguage withOr = nand_lang();
  withOr.add("OR2", Relation::or2());
  CHECK_THROWS_AS(greedy_apx(c, withOr), std::domain_error);
}

TEST_CASE("greedy ratio over seeded random instances") {
  ConstraintLanguage env = nand_lang();
  std::mt19937_64 rng(7);
  int checked = 0;
  for (int trial = 0; trial < 120; ++trial) {
    int bound = 2 + static_cast<int>(rng() % 3);
    Instance inst = random_nand_instance(rng, 10, bound);
    auto opt = solve_exact(inst, env);
    REQUIRE(opt.has_value());  // NAND-only instances are always feasible
    Solution greedy = greedy_apx(inst, env);
    CHECK(satisfies(inst, env, greedy.assignment));
    CHECK(greedy.measure * Rational(bound + 1) >= opt->measure);
    ++checked;
  }
  CHECK(checked == 120);
}

TEST_CASE("to_ilp2 named translations") {
  ConstraintLanguage env("q");
  env.add("NAND2", Relation::nand_rel(2));
  env.add("IMPL", Relation::impl());
  env.add("NEQ", Relation::neq());
  env.make_conservative();

  Instance inst;
  inst.add_variable("x", Rational(1));
  inst.add_variable("y", Rational(1));
  inst.add_constraint("NAND2", {0, 1});
  Ilp2Model m1 = to_ilp2(inst, env);
  REQUIRE(m1.rows.size() == 1);
  CHECK(m1.rows[0].upper == 1);  // x + y <= 1
  CHECK(m1.rows[0].terms.size() == 2);
  CHECK(m1.rows[0].terms[0].coef == 1);

  Instance inst2;
  inst2.add_variable("x", Rational(1));
  inst2.add_variable("y", Rational(1));
  inst2.add_constraint("IMPL", {0, 1});
  Ilp2Model m2 = to_ilp2(inst2, env);
  REQUIRE(m2.rows.size() == 1);
  // x - y <= 0 with the negated coordinate contributing -1.
  CHECK(m2.rows[0].upper == 0);
  int pos = 0, neg = 0;
  for (auto& t : m2.rows[0].terms) (t.coef > 0 ? pos : neg) += 1;
  CHECK(pos == 1);
  CHECK(neg == 1);

  Instance inst3;
  inst3.add_variable("x", Rational(1));
  inst3.add_variable("y", Rational(1));
  inst3.add_constraint("NEQ", {0, 1});
  Ilp2Model m3 = to_ilp2(inst3, env);
  CHECK(m3.rows[0].lower == 1);
  CHECK(m3.rows[0].upper == 1);

  // Non-Q relations are rejected.
  ConstraintLanguage bad("bad");
  bad.add("EQ3", Relation::eq_rel(3));
  Instance inst4;
  inst4.add_variable("x", Rational(1));
  inst4.add_variable("y", Rational(1));
  inst4.add_variable("z", Rational(1));
  inst4.add_constraint("EQ3", {0, 1, 2});
  CHECK_THROWS_AS(to_ilp2(inst4, bad), std::domain_error);

  // Occurrence bound 2 is enforced.
  Instance inst5;
  inst5.add_variable("x", Rational(1));
  inst5.add_variable("y", Rational(1));
  inst5.add_constraint("NAND2", {0, 1});
  inst5.add_constraint("NAND2", {0, 1});
  inst5.add_constraint("IMPL", {0, 1});
  CHECK_THROWS_AS(to_ilp2(inst5, env), std::domain_error);
}

TEST_CASE("ilp2 oracle equivalence on random Q instances") {
  // Q relations assembled from the closure grammar: base kinds, flips,
  // permutations, products.
  std::mt19937_64 rng(99);
  auto random_q_relation = [&](int maxArity) {
    std::vector<Relation> factors;
    int arity = 0;
    while (arity < maxArity) {
      int kind = static_cast<int>(rng() % 5);
      Relation f = Relation::c0();
      switch (kind) {
        case 0: f = rng() % 2 ? Relation::c0() : Relation::c1(); break;
        case 1: f = Relation::full(1); break;
        case 2: f = rng() % 2 ? Relation::eq_rel(2) : Relation::neq(); break;
        default: {
          int a = 2 + static_cast<int>(rng() % (maxArity - arity >= 3 ? 2 : 1));
          CoordSet flips;
          for (int c = 1; c <= a; ++c)
            if (rng() % 2) flips.add(c);
          f = Relation::at_most_one(a).flip(flips);
          break;
        }
      }
      if (arity + f.arity() > maxArity) break;
      arity += f.arity();
      factors.push_back(f);
    }
    if (factors.empty()) factors.push_back(Relation::full(1));
    Relation r = factors[0];
    for (std::size_t i = 1; i < factors.size(); ++i) r = product(r, factors[i]);
    // random permutation
    std::vector<int> perm(r.arity());
    for (int i = 0; i < r.arity(); ++i) perm[i] = i + 1;
    std::shuffle(perm.begin(), perm.end(), rng);
    return r.permute(perm);
  };

  for (int trial = 0; trial < 120; ++trial) {
    ConstraintLanguage env("q");
    Instance inst;
    int n = 3 + static_cast<int>(rng() % 8);
    for (int i = 0; i < n; ++i)
      inst.add_variable("v" + std::to_string(i), Rational(static_cast<int>(rng() % 5)));
    std::vector<int> occ(n, 0);
    for (int c = 0; c < n; ++c) {
      Relation r = random_q_relation(3);
      std::vector<int> scope;
      for (int j = 0; j < r.arity(); ++j) {
        int v = static_cast<int>(rng() % n);
        if (occ[v] >= 2) { scope.clear(); break; }
        ++occ[v];
        scope.push_back(v);
      }
      if (scope.empty()) continue;
      std::string name = "R" + std::to_string(c);
      env.add(name, r);
      inst.add_constraint(name, scope);
    }
    Ilp2Model model = to_ilp2(inst, env);
    CHECK(model.column_property_holds());
    auto viaIlp = solve_ilp2(model);
    auto viaExact = solve_exact(inst, env);
    REQUIRE(viaIlp.has_value() == viaExact.has_value());
    if (viaIlp) CHECK(viaIlp->measure == viaExact->measure);
  }
}
