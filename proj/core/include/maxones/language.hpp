#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "maxones/relation.hpp"

namespace maxones {

// A named finite set of boolean relations.  "conservative" means c0 and c1
// are members; marking a language conservative injects them.
class ConstraintLanguage {
 public:
  ConstraintLanguage() = default;
  explicit ConstraintLanguage(std::string name) : name_(std::move(name)) {}

  static ConstraintLanguage conservative_of(std::string name,
                                            std::vector<std::pair<std::string, Relation>> rels);

  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

  void add(const std::string& relName, const Relation& r);
  void make_conservative();

  const Relation* resolve(const std::string& relName) const;
  const std::vector<std::pair<std::string, Relation>>& relations() const { return relations_; }
  bool empty() const { return relations_.empty(); }

  // Conservative as a property of the relation set: c0 and c1 present by
  // value, under any name.
  bool is_conservative() const;
  bool contains_relation(const Relation& r) const;

  int max_arity() const;
  bool all_one_valid() const;

 private:
  std::string name_;
  std::vector<std::pair<std::string, Relation>> relations_;
};

// --- text formats ---------------------------------------------------------
//
// Relation file: one block per relation,
//     relation <NAME> arity=<r>
//     <r chars of 0/1>            (one line per tuple)
//     <blank line>
// Language file:
//     language <NAME>
//     conservative                (optional; injects c0 and c1)
//     use <relationName>          (builtin or defined in a relation file)

std::vector<std::pair<std::string, Relation>> parse_relation_file(std::istream& in);
std::string emit_relation(const std::string& name, const Relation& r);

struct LanguageSpec {
  std::string name;
  bool conservative = false;
  std::vector<std::string> uses;
};
LanguageSpec parse_language_file(std::istream& in);

// Resolves `use` names against builtins and the given extra relations.
ConstraintLanguage build_language(const LanguageSpec& spec,
                                  const std::vector<std::pair<std::string, Relation>>& extra);
std::string emit_language(const LanguageSpec& spec);

}  // namespace maxones
