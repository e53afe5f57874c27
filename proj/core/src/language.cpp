#include "maxones/language.hpp"

#include <istream>
#include <sstream>

namespace maxones {

ConstraintLanguage ConstraintLanguage::conservative_of(
    std::string name, std::vector<std::pair<std::string, Relation>> rels) {
  ConstraintLanguage l(std::move(name));
  for (auto& [n, r] : rels) l.add(n, r);
  l.make_conservative();
  return l;
}

void ConstraintLanguage::add(const std::string& relName, const Relation& r) {
  for (auto& [n, existing] : relations_) {
    if (n == relName) {
      if (existing != r) throw std::invalid_argument("conflicting definitions for relation " + relName);
      return;
    }
  }
  relations_.emplace_back(relName, r);
}

void ConstraintLanguage::make_conservative() {
  if (!contains_relation(Relation::c0())) add("c0", Relation::c0());
  if (!contains_relation(Relation::c1())) add("c1", Relation::c1());
}

const Relation* ConstraintLanguage::resolve(const std::string& relName) const {
  for (auto& [n, r] : relations_)
    if (n == relName) return &r;
  return nullptr;
}

bool ConstraintLanguage::is_conservative() const {
  return contains_relation(Relation::c0()) && contains_relation(Relation::c1());
}

bool ConstraintLanguage::contains_relation(const Relation& r) const {
  for (auto& [n, rel] : relations_)
    if (rel == r) return true;
  return false;
}

int ConstraintLanguage::max_arity() const {
  int m = 1;
  for (auto& [n, r] : relations_) m = std::max(m, r.arity());
  return m;
}

bool ConstraintLanguage::all_one_valid() const {
  for (auto& [n, r] : relations_)
    if (!r.is_one_valid()) return false;
  return true;
}

namespace {

std::string strip(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<std::pair<std::string, Relation>> parse_relation_file(std::istream& in) {
  std::vector<std::pair<std::string, Relation>> out;
  std::string line;
  int lineno = 0;
  std::string curName;
  int curArity = 0;
  std::vector<std::uint32_t> curCodes;
  bool open = false;

  auto flush = [&]() {
    if (!open) return;
    Relation r(curArity);
    for (std::uint32_t c : curCodes) r.insert(c);
    out.emplace_back(curName, r);
    open = false;
    curCodes.clear();
  };

  while (std::getline(in, line)) {
    ++lineno;
    std::string t = strip(line);
    if (t.empty()) { flush(); continue; }
    std::istringstream ls(t);
    std::string word;
    ls >> word;
    if (word == "relation") {
      flush();
      std::string name, aritySpec;
      ls >> name >> aritySpec;
      if (name.empty() || aritySpec.rfind("arity=", 0) != 0)
        throw std::invalid_argument("line " + std::to_string(lineno) +
                                    ": expected 'relation <NAME> arity=<r>'");
      curName = name;
      curArity = std::stoi(aritySpec.substr(6));
      if (curArity < 1 || curArity > kMaxArity)
        throw capacity_error("line " + std::to_string(lineno) + ": arity out of range");
      open = true;
    } else {
      if (!open)
        throw std::invalid_argument("line " + std::to_string(lineno) + ": tuple outside a relation block");
      BoolTuple tup = BoolTuple::parse(word);
      if (tup.arity() != curArity)
        throw std::invalid_argument("line " + std::to_string(lineno) + ": tuple arity mismatch in " + curName);
      curCodes.push_back(tup.code());
    }
  }
  flush();
  return out;
}

std::string emit_relation(const std::string& name, const Relation& r) {
  std::ostringstream os;
  os << "relation " << name << " arity=" << r.arity() << "\n";
  for (const BoolTuple& t : r.tuples()) os << t.str() << "\n";
  os << "\n";
  return os.str();
}

LanguageSpec parse_language_file(std::istream& in) {
  LanguageSpec spec;
  std::string line;
  int lineno = 0;
  bool sawHeader = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = strip(line);
    if (t.empty() || t[0] == '#') continue;
    std::istringstream ls(t);
    std::string word;
    ls >> word;
    if (word == "language") {
      ls >> spec.name;
      if (spec.name.empty())
        throw std::invalid_argument("line " + std::to_string(lineno) + ": expected 'language <NAME>'");
      sawHeader = true;
    } else if (word == "conservative") {
      spec.conservative = true;
    } else if (word == "use") {
      std::string rel;
      ls >> rel;
      if (rel.empty())
        throw std::invalid_argument("line " + std::to_string(lineno) + ": expected 'use <relationName>'");
      spec.uses.push_back(rel);
    } else {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": unknown directive '" + word + "'");
    }
  }
  if (!sawHeader) throw std::invalid_argument("language file missing 'language <NAME>' header");
  return spec;
}

ConstraintLanguage build_language(const LanguageSpec& spec,
                                  const std::vector<std::pair<std::string, Relation>>& extra) {
  ConstraintLanguage lang(spec.name);
  for (const std::string& use : spec.uses) {
    const Relation* found = nullptr;
    for (auto& [n, r] : extra)
      if (n == use) { found = &r; break; }
    if (found) {
      lang.add(use, *found);
      continue;
    }
    if (auto builtin = Relation::named(use)) {
      lang.add(use, *builtin);
      continue;
    }
    throw std::invalid_argument("language " + spec.name + ": unresolved relation name '" + use + "'");
  }
  if (spec.conservative) lang.make_conservative();
  return lang;
}

std::string emit_language(const LanguageSpec& spec) {
  std::ostringstream os;
  os << "language " << spec.name << "\n";
  if (spec.conservative) os << "conservative\n";
  for (const std::string& u : spec.uses) os << "use " << u << "\n";
  return os.str();
}

}  // namespace maxones
