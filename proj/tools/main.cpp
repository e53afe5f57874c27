// maxones: analyze finite boolean constraint languages and classify/solve
// bounded-occurrence weighted Max Ones instances.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "maxones/classify.hpp"
#include "maxones/coclone.hpp"
#include "maxones/delta_matroid.hpp"
#include "maxones/gadget.hpp"
#include "maxones/instance.hpp"
#include "maxones/language.hpp"
#include "maxones/reductions.hpp"
#include "maxones/solvers.hpp"

using namespace maxones;

namespace {

struct CommonOpts {
  std::vector<std::string> relation_files;
  std::string language_file;
  std::uint64_t budget = std::uint64_t{1} << 20;
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string format = "text";

  bool kv() const { return format == "kv"; }
};

std::ifstream open_or_die(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  return in;
}

std::vector<std::pair<std::string, Relation>> load_relations(const CommonOpts& opts) {
  std::vector<std::pair<std::string, Relation>> rels;
  for (const std::string& path : opts.relation_files) {
    std::ifstream in = open_or_die(path);
    for (auto& [n, r] : parse_relation_file(in)) rels.emplace_back(n, r);
  }
  return rels;
}

ConstraintLanguage load_language(const CommonOpts& opts) {
  if (opts.language_file.empty()) throw std::invalid_argument("--language <file> is required");
  std::ifstream in = open_or_die(opts.language_file);
  return build_language(parse_language_file(in), load_relations(opts));
}

// A single relation: either a builtin name or the first block of a file.
Relation load_single_relation(const CommonOpts& opts, const std::string& arg) {
  if (auto builtin = Relation::named(arg)) return *builtin;
  for (auto& [n, r] : load_relations(opts))
    if (n == arg) return r;
  std::ifstream in(arg);
  if (in) {
    auto rels = parse_relation_file(in);
    if (rels.empty()) throw std::invalid_argument("no relation block in " + arg);
    return rels[0].second;
  }
  throw std::invalid_argument("unknown relation '" + arg + "' (not builtin, loaded, or a file)");
}

void emit_kv(std::ostream& os, const std::vector<std::pair<std::string, std::string>>& kvs) {
  os << "---BEGIN RESULT---\n";
  for (auto& [k, v] : kvs) os << k << "=" << v << "\n";
  os << "---END RESULT---\n";
}

void write_or_print(const std::string& path, const std::string& content, const char* what) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::invalid_argument(std::string("cannot write ") + what + ": " + path);
  out << content;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"boolean constraint language analysis and bounded-occurrence Max Ones"};
  app.require_subcommand(1);

  CommonOpts opts;
  if (const char* env = std::getenv("MAXONES_BUDGET")) opts.budget = std::strtoull(env, nullptr, 10);
  app.add_option("--relation", opts.relation_files, "relation file(s) to load")->expected(-1);
  app.add_option("--budget", opts.budget, "cap on enumerated assignments per verification");
  app.add_option("--seed", opts.seed, "seed for randomized property runs");
  app.add_option("--jobs", opts.jobs, "worker bound for internal parallelism");
  app.add_option("--format", opts.format, "text or kv")->check(CLI::IsMember({"text", "kv"}));

  // ---- relation ----
  auto* relCmd = app.add_subcommand("relation", "construct and transform relations");
  std::string relName, relOut;
  std::vector<int> relIndices;
  std::string relSecond;
  std::vector<int> relPerm;
  auto* relShow = relCmd->add_subcommand("show", "print a relation block");
  relShow->add_option("name", relName)->required();
  relShow->add_option("--out", relOut);
  auto* relProject = relCmd->add_subcommand("project", "project onto 1-based coordinates");
  relProject->add_option("name", relName)->required();
  relProject->add_option("--coords", relIndices, "coordinates, ascending")->required();
  relProject->add_option("--out", relOut);
  auto* relFlip = relCmd->add_subcommand("flip", "flip the listed coordinates");
  relFlip->add_option("name", relName)->required();
  relFlip->add_option("--coords", relIndices, "coordinates to flip");
  relFlip->add_option("--out", relOut);
  auto* relProduct = relCmd->add_subcommand("product", "cartesian product of two relations");
  relProduct->add_option("name", relName)->required();
  relProduct->add_option("second", relSecond)->required();
  relProduct->add_option("--out", relOut);
  auto* relPermute = relCmd->add_subcommand("permute", "permute coordinates");
  relPermute->add_option("name", relName)->required();
  relPermute->add_option("--perm", relPerm, "image of coordinates 1..n")->required();
  relPermute->add_option("--out", relOut);

  // ---- analyze ----
  auto* analyze = app.add_subcommand("analyze", "structural analysis");
  std::string analyzeTarget;
  auto* anDelta = analyze->add_subcommand("delta-matroid", "two-step axiom test");
  anDelta->add_option("relation", analyzeTarget)->required();
  auto* anAffine = analyze->add_subcommand("affine", "GF(2) system and coupledness");
  anAffine->add_option("relation", analyzeTarget)->required();
  auto* anQ = analyze->add_subcommand("q-class", "Q membership and factorization");
  anQ->add_option("relation", analyzeTarget)->required();
  auto* anCoclone = analyze->add_subcommand("coclone", "locate the language's co-clone");
  anCoclone->add_option("--language", opts.language_file);

  // ---- gadget ----
  auto* gadget = app.add_subcommand("gadget", "k-representations");
  std::string gadgetFile, gadgetTarget;
  int searchK = 3, searchAux = 2, searchCons = 3;
  auto* gVerify = gadget->add_subcommand("verify", "verify a gadget file against its target");
  gVerify->add_option("--gadget", gadgetFile)->required();
  gVerify->add_option("--language", opts.language_file);
  gVerify->add_option("--target", gadgetTarget, "override the file's target name");
  auto* gSearch = gadget->add_subcommand("search", "bounded search for a k-representation");
  gSearch->add_option("--target", gadgetTarget)->required();
  gSearch->add_option("--language", opts.language_file);
  gSearch->add_option("--occurrences", searchK);
  gSearch->add_option("--search-aux", searchAux);
  gSearch->add_option("--search-cons", searchCons);

  // ---- catalog ----
  auto* catalogCmd = app.add_subcommand("catalog", "the ternary relation catalog");
  catalogCmd->add_subcommand("verify", "re-verify all thirty entries");
  catalogCmd->add_subcommand("list", "print the catalog relations");

  // ---- solve ----
  auto* solve = app.add_subcommand("solve", "solve a Max Ones instance");
  std::string instanceFile;
  auto* sExact = solve->add_subcommand("exact", "exact optimum by branch and bound");
  sExact->add_option("--instance", instanceFile)->required();
  sExact->add_option("--language", opts.language_file);
  auto* sGreedy = solve->add_subcommand("greedy", "greedy approximation for NAND languages");
  sGreedy->add_option("--instance", instanceFile)->required();
  sGreedy->add_option("--language", opts.language_file);
  auto* sIlp = solve->add_subcommand("ilp2", "translate to ILP-2 and solve exactly");
  sIlp->add_option("--instance", instanceFile)->required();
  sIlp->add_option("--language", opts.language_file);

  // ---- reduce ----
  auto* reduce = app.add_subcommand("reduce", "executable reductions");
  std::string outInstance, outGraph, outRelations, graphFile, formulaFile, linkName = "IMPL";
  int misBound = 3;
  auto* rCycle = reduce->add_subcommand("cycle", "cap occurrences at three via link cycles");
  rCycle->add_option("--instance", instanceFile)->required();
  rCycle->add_option("--language", opts.language_file);
  rCycle->add_option("--link", linkName, "EQ2 or IMPL")->check(CLI::IsMember({"EQ2", "IMPL"}));
  rCycle->add_option("--gadget", gadgetFile, "3-representation of the link (defaults to the bare relation)");
  rCycle->add_option("--out", outInstance);
  auto* rMis = reduce->add_subcommand("mis", "independent set as Max Ones({NAND2})");
  rMis->add_option("--graph", graphFile)->required();
  rMis->add_option("--occurrences", misBound);
  rMis->add_option("--out", outInstance);
  auto* rSat = reduce->add_subcommand("max2sat3", "2SAT-3 to covered independent set");
  rSat->add_option("--formula", formulaFile)->required();
  rSat->add_option("--out-graph", outGraph);
  rSat->add_option("--out-instance", outInstance);
  rSat->add_option("--out-relations", outRelations);
  auto* rDrop = reduce->add_subcommand("dropconst", "eliminate constants via weight lifting");
  rDrop->add_option("--instance", instanceFile)->required();
  rDrop->add_option("--language", opts.language_file);
  std::string dropRel;
  rDrop->add_option("--via", dropRel, "non-1-valid relation used for the rewriting")->required();
  rDrop->add_option("--out", outInstance);

  // ---- classify ----
  auto* classifyCmd = app.add_subcommand("classify", "decide the approximability class");
  int occurrences = 3;
  classifyCmd->add_option("--language", opts.language_file);
  classifyCmd->add_option("--occurrences", occurrences)->required();
  classifyCmd->add_option("--search-aux", searchAux);
  classifyCmd->add_option("--search-cons", searchCons);

  try {
    app.parse(argc, argv);

    auto print_relation_result = [&](const std::string& name, const Relation& r) {
      write_or_print(relOut, emit_relation(name, r), "relation");
    };

    if (relShow->parsed()) {
      print_relation_result(relName, load_single_relation(opts, relName));
    } else if (relProject->parsed()) {
      CoordSet cs;
      for (int c : relIndices) cs.add(c);
      print_relation_result("PROJ", load_single_relation(opts, relName).project(cs));
    } else if (relFlip->parsed()) {
      CoordSet cs;
      for (int c : relIndices) cs.add(c);
      print_relation_result("FLIP", load_single_relation(opts, relName).flip(cs));
    } else if (relProduct->parsed()) {
      print_relation_result(
          "PROD", product(load_single_relation(opts, relName), load_single_relation(opts, relSecond)));
    } else if (relPermute->parsed()) {
      print_relation_result("PERM", load_single_relation(opts, relName).permute(relPerm));
    } else if (anDelta->parsed()) {
      Relation r = load_single_relation(opts, analyzeTarget);
      auto w = delta_matroid_violation(r);
      if (!opts.kv()) {
        std::cout << "relation: " << r.str() << "\n";
        std::cout << "delta-matroid: " << (w ? "false" : "true") << "\n";
        if (w)
          std::cout << "witness: x=" << w->x.str() << " y=" << w->y.str()
                    << " x'=" << w->xprime.str() << "\n";
      }
      std::vector<std::pair<std::string, std::string>> kv = {
          {"delta_matroid", w ? "false" : "true"}};
      if (w) {
        kv.push_back({"witness_x", w->x.str()});
        kv.push_back({"witness_y", w->y.str()});
        kv.push_back({"witness_xprime", w->xprime.str()});
      }
      emit_kv(std::cout, kv);
    } else if (anAffine->parsed()) {
      Relation r = load_single_relation(opts, analyzeTarget);
      if (!is_affine(r)) {
        if (!opts.kv()) std::cout << "relation is not affine over GF(2)\n";
        emit_kv(std::cout, {{"affine", "false"}});
      } else {
        Gf2System sys = affine_form(r);
        if (!opts.kv()) {
          std::cout << sys.str();
          std::cout << "coupled: " << (sys.coupled() ? "true" : "false") << "\n";
        }
        emit_kv(std::cout, {{"affine", "true"},
                            {"rows", std::to_string(sys.rows.size())},
                            {"coupled", sys.coupled() ? "true" : "false"}});
      }
    } else if (anQ->parsed()) {
      Relation r = load_single_relation(opts, analyzeTarget);
      auto q = in_q(r);
      if (!opts.kv()) {
        if (q) std::cout << "in Q: " << q->str() << "\n";
        else std::cout << "not in Q\n";
      }
      emit_kv(std::cout, {{"in_q", q ? "true" : "false"},
                          {"factorization", q ? q->str() : ""}});
    } else if (anCoclone->parsed()) {
      ConstraintLanguage gamma = load_language(opts);
      CoCloneLabel label = locate_coclone(gamma);
      if (!opts.kv()) std::cout << "located co-clone: " << label.str() << "\n";
      emit_kv(std::cout, {{"coclone", label.str()}});
    } else if (gVerify->parsed()) {
      ConstraintLanguage env = load_language(opts);
      std::ifstream in = open_or_die(gadgetFile);
      Gadget g = parse_gadget_file(in);
      std::string targetName = gadgetTarget.empty() ? g.target_name : gadgetTarget;
      Relation target = load_single_relation(opts, targetName);
      GadgetCheck check = check_gadget(target, g, env, opts.budget);
      if (!opts.kv()) {
        std::cout << "gadget verification: " << (check.ok() ? "ok" : "FAILED") << "\n";
        if (!check.ok()) std::cout << check.detail << "\n";
      }
      emit_kv(std::cout,
              {{"verified", check.ok() ? "true" : "false"},
               {"failure",
                check.status == GadgetCheck::Status::CapViolation   ? "cap-violation"
                : check.status == GadgetCheck::Status::Mismatch ? "semantic-mismatch"
                                                                : ""}});
      return check.ok() ? 0 : 1;
    } else if (gSearch->parsed()) {
      ConstraintLanguage env = load_language(opts);
      Relation target = load_single_relation(opts, gadgetTarget);
      SearchBounds bounds;
      bounds.max_aux = searchAux;
      bounds.max_constraints = searchCons;
      bounds.verify_budget = opts.budget;
      SearchOutcome outcome = search_gadget(target, env, searchK, bounds);
      if (!opts.kv()) {
        if (outcome.gadget) std::cout << outcome.gadget->str();
        else
          std::cout << "no gadget within bounds ("
                    << (outcome.exhausted ? "search space exhausted" : "budget stop") << ")\n";
      }
      emit_kv(std::cout, {{"found", outcome.gadget ? "true" : "false"},
                          {"exhausted", outcome.exhausted ? "true" : "false"},
                          {"candidates", std::to_string(outcome.candidates_tried)}});
      return outcome.gadget ? 0 : 1;
    } else if (catalogCmd->parsed() && catalogCmd->get_subcommand("verify")->parsed()) {
      CatalogReport report = verify_catalog();
      if (!opts.kv()) {
        for (const CatalogCheck& c : report.checks)
          if (!c.pass || !opts.kv())
            std::cout << c.entry << " " << c.check << ": " << (c.pass ? "ok" : "FAIL")
                      << (c.detail.empty() ? "" : " (" + c.detail + ")") << "\n";
        std::cout << report.summary() << "\n";
      }
      emit_kv(std::cout, {{"entries_ok", std::to_string(report.entries_ok)},
                          {"entries_total", std::to_string(report.entries_total)},
                          {"summary", report.summary()}});
      return report.all_pass() ? 0 : 1;
    } else if (catalogCmd->parsed() && catalogCmd->get_subcommand("list")->parsed()) {
      for (const CatalogEntry& e : catalog())
        std::cout << emit_relation(e.name, e.relation);
    } else if (sExact->parsed() || sGreedy->parsed() || sIlp->parsed()) {
      ConstraintLanguage env = load_language(opts);
      std::ifstream in = open_or_die(instanceFile);
      Instance inst = parse_instance_file(in);
      inst.validate(env);
      std::optional<Solution> sol;
      if (sExact->parsed()) sol = solve_exact(inst, env);
      else if (sGreedy->parsed()) sol = greedy_apx(inst, env);
      else {
        Ilp2Model model = to_ilp2(inst, env);
        if (!opts.kv()) std::cout << model.str();
        sol = solve_ilp2(model);
      }
      if (!opts.kv()) {
        if (!sol) std::cout << "infeasible\n";
        else {
          std::cout << "measure: " << sol->measure.str() << "\n";
          for (int i = 0; i < inst.variable_count(); ++i)
            std::cout << inst.variable_name(i) << "=" << (sol->assignment[i] ? 1 : 0) << "\n";
        }
      }
      std::vector<std::pair<std::string, std::string>> kv = {
          {"feasible", sol ? "true" : "false"}};
      if (sol) kv.push_back({"measure", sol->measure.str()});
      emit_kv(std::cout, kv);
    } else if (rCycle->parsed()) {
      ConstraintLanguage env = load_language(opts);
      std::ifstream in = open_or_die(instanceFile);
      Instance inst = parse_instance_file(in);
      LinkKind link = linkName == "EQ2" ? LinkKind::Eq2 : LinkKind::Impl;
      Gadget g;
      if (!gadgetFile.empty()) {
        std::ifstream gin = open_or_die(gadgetFile);
        g = parse_gadget_file(gin);
      } else {
        g.primary_count = 2;
        g.aux_count = 0;
        g.occurrence_cap = 3;
        g.target_name = linkName;
        g.constraints.push_back({linkName, {0, 1}});
      }
      Instance out = cycle_reduction(inst, env, link, g);
      write_or_print(outInstance, emit_instance(out), "instance");
      emit_kv(std::cout, {{"variables", std::to_string(out.variable_count())},
                          {"max_occurrences", std::to_string(out.max_occurrences())}});
    } else if (rMis->parsed()) {
      std::ifstream in = open_or_die(graphFile);
      WeightedGraph g = parse_graph_file(in);
      Instance out = mis_to_maxones(g, misBound);
      write_or_print(outInstance, emit_instance(out), "instance");
      emit_kv(std::cout, {{"variables", std::to_string(out.variable_count())},
                          {"constraints", std::to_string(out.constraints().size())}});
    } else if (rSat->parsed()) {
      std::ifstream in = open_or_die(formulaFile);
      TwoSatFormula f = parse_twosat_file(in);
      Max2SatReduction red = max2sat3_gadget_chain(f);
      if (!outGraph.empty()) write_or_print(outGraph, emit_graph("G", red.graph), "graph");
      if (!outInstance.empty()) write_or_print(outInstance, emit_instance(red.instance), "instance");
      if (!outRelations.empty())
        write_or_print(outRelations, emit_relation("CHAIN3", *red.language.resolve("CHAIN3")),
                       "relations");
      MisResult opt = max_weight_independent_set(red.graph);
      emit_kv(std::cout, {{"core_variables", std::to_string(red.core.vars.size())},
                          {"core_clauses", std::to_string(red.core.clauses.size())},
                          {"fixed_satisfied", std::to_string(red.fixed_satisfied)},
                          {"graph_nodes", std::to_string(red.graph.node_count())},
                          {"graph_optimum", opt.measure.str()}});
    } else if (rDrop->parsed()) {
      ConstraintLanguage env = load_language(opts);
      std::ifstream in = open_or_die(instanceFile);
      Instance inst = parse_instance_file(in);
      DropConstantsResult res = drop_constants(inst, env, dropRel);
      write_or_print(outInstance, emit_instance(res.instance), "instance");
      emit_kv(std::cout, {{"c1_vars", std::to_string(res.c1_var_count)},
                          {"big_l", res.big_l.str()},
                          {"threshold_of_0", res.threshold(Rational(0)).str()}});
    } else if (classifyCmd->parsed()) {
      ConstraintLanguage gamma = load_language(opts);
      ClassifyOptions copt;
      copt.eq2_search.max_aux = searchAux;
      copt.eq2_search.max_constraints = searchCons;
      copt.eq2_search.verify_budget = opts.budget;
      copt.seed = opts.seed;
      Verdict v = classify(gamma, occurrences, copt);
      std::cout << render_report(gamma, occurrences, v, opts.kv());
    } else {
      std::cerr << app.help();
      return 1;
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const capacity_error& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
