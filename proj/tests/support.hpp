#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "lexpe/driver.hpp"
#include "lexpe/extension.hpp"
#include "lexpe/hierarchy.hpp"
#include "lexpe/feature_structure.hpp"
#include "lexpe/lexicon.hpp"

namespace testing {

inline std::string data_path(const std::string& name) { return std::string(LEXPE_DATA_DIR) + "/" + name; }

// Small adjective-flavoured type system shared by most unit tests.
inline const std::string kHeader = R"(
sort cat = a | n | v.
sort cdegree = pos | comp | sup.
sort case = nom | gen | dat | acc.
sort gend = masc | fem | neut.
sort six = s0 | s1 | s2 | s3 | s4 | s5.
type agr = [case: case, gend: gend].
type syn = [cat: cat, cdegree: cdegree, agr: agr, x: six].
type mor = [stem: string, suffix: string, a_stem: string, t: string].
type word = [form: string, lemma: string, mor: mor, syn: syn, gener: string].
)";

/// Lowers `text` as the main section of a throwaway class over kHeader.
class Lab {
 public:
  explicit Lab(std::string header = kHeader) : header_(std::move(header)) {
    lex_ = lexpe::load_lexicon(header_ + "class tmp__ : word.\n");
  }

  const lexpe::TypeSystem& ts() const { return *lex_.types; }
  lexpe::TypeId type(const std::string& name) const { return *ts().find_type(name); }
  lexpe::Path path(const std::string& p) const { return ts().parse_path(p); }

  lexpe::FeatureStructure fs(const std::string& text, const std::string& type = "word") const {
    auto lex = lexpe::load_lexicon(header_ + "class tmp__ : " + type + " main " + text + ".\n");
    return lex.classes[*lex.find("tmp__")].main;
  }

  lexpe::FeatureStructure empty(const std::string& type = "word") const {
    return lexpe::FeatureStructure::empty(this->type(type));
  }

 private:
  std::string header_;
  lexpe::Lexicon lex_;
};

// Random constraint descriptions over kHeader, used by the property tests.
class FsGen {
 public:
  explicit FsGen(std::uint64_t seed) : rng_(seed) {}

  std::string description() {
    static const std::vector<std::string> enum_paths = {"syn^cat", "syn^cdegree", "syn^agr^case", "syn^agr^gend"};
    static const std::vector<std::vector<std::string>> values = {
        {"a", "n", "v"}, {"pos", "comp", "sup"}, {"nom", "gen", "dat", "acc"}, {"masc", "fem", "neut"}};
    static const std::vector<std::string> str_paths = {"form", "lemma", "mor^stem", "mor^suffix", "mor^a_stem",
                                                       "mor^t"};
    static const std::vector<std::string> pieces = {"\"\"", "\"e\"", "\"en\"", "\"klein\"", "\"kleine\""};
    std::vector<std::string> parts;
    const int n = pick(4) + 1;
    for (int i = 0; i < n; ++i) {
      switch (pick(5)) {
        case 0:
        case 1: {
          const auto k = pick(enum_paths.size());
          const auto& vals = values[k];
          std::string v;
          switch (pick(3)) {
            case 0: v = vals[pick(vals.size())]; break;
            case 1: v = vals[0] + " or " + vals[1 + pick(vals.size() - 1)]; break;
            default: v = "not " + vals[pick(vals.size())]; break;
          }
          parts.push_back(enum_paths[k] + " = " + v);
          break;
        }
        case 2:
          parts.push_back(str_paths[pick(str_paths.size())] + " = " + pieces[pick(pieces.size())]);
          break;
        case 3: {
          auto a = str_paths[pick(str_paths.size())], b = str_paths[pick(str_paths.size())];
          if (a != b) parts.push_back(a + " = " + b);
          break;
        }
        default: {
          auto arg = [&] {
            return pick(3) == 0 ? pieces[pick(pieces.size())] : str_paths[pick(str_paths.size())];
          };
          const auto a = arg(), b = arg();
          parts.push_back("concat(" + a + ", " + b + ", " + str_paths[pick(str_paths.size())] + ")");
          break;
        }
      }
    }
    std::string out;
    for (const auto& p : parts) out += (out.empty() ? "" : ", ") + p;
    return out;
  }

  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Random acyclic multiple-inheritance hierarchy over kHeader: class k
/// draws up to three distinct superclasses among the earlier ones.
inline std::string random_hierarchy(std::uint64_t seed, unsigned n) {
  std::mt19937_64 rng(seed);
  std::string out = kHeader;
  for (unsigned k = 0; k < n; ++k) {
    out += "class h" + std::to_string(k) + " : word";
    std::vector<unsigned> supers;
    if (k > 0) {
      const auto want = std::uniform_int_distribution<unsigned>(0, std::min(3u, k))(rng);
      while (supers.size() < want) {
        const auto s = std::uniform_int_distribution<unsigned>(0, k - 1)(rng);
        bool dup = false;
        for (auto x : supers) dup |= x == s;
        if (!dup) supers.push_back(s);
      }
    }
    // mostly most-specific-first lists, which always linearize; the rest
    // are shuffled and may contradict each other
    if (std::uniform_int_distribution<int>(0, 4)(rng) > 0)
      std::sort(supers.begin(), supers.end(), std::greater<>());
    for (std::size_t i = 0; i < supers.size(); ++i) out += (i ? ", h" : " isa h") + std::to_string(supers[i]);
    out += ".\n";
  }
  return out;
}

/// Checks a CPL against the two ordering constraints; returns a description
/// of the first violation, empty when the list is fine.
inline std::string cpl_violation(const lexpe::Lexicon& lex, const lexpe::Cpl& cpl) {
  std::vector<int> pos(lex.classes.size(), -1);
  for (std::size_t i = 0; i < cpl.list.size(); ++i) {
    auto& p = pos[cpl.list[i].cls];
    if (p != -1) return "class listed twice";
    p = static_cast<int>(i);
  }
  if (cpl.list.empty() || cpl.list[0].cls != cpl.cls) return "list does not start with the class";
  // every class reachable through isa links is listed
  std::vector<std::uint32_t> stack{cpl.cls};
  std::vector<char> seen(lex.classes.size(), 0);
  while (!stack.empty()) {
    const auto c = stack.back();
    stack.pop_back();
    if (seen[c]) continue;
    seen[c] = 1;
    if (pos[c] < 0) return "superclass " + lex.classes[c].name + " missing";
    int last = pos[c];
    for (const auto& s : lex.classes[c].supers) {
      if (pos[s.cls] <= pos[c]) return lex.classes[c].name + " does not precede " + lex.classes[s.cls].name;
      if (pos[s.cls] <= last) return "superclass order of " + lex.classes[c].name + " not kept";
      last = pos[s.cls];
      stack.push_back(s.cls);
    }
  }
  for (std::size_t i = 0; i < lex.classes.size(); ++i)
    if (pos[i] >= 0 && !seen[i]) return "unrelated class " + lex.classes[i].name + " listed";
  return {};
}

/// Strict extension straight from the CPL contributions, left to right.
inline lexpe::FeatureStructureSet strict_left_to_right(const lexpe::ResolvedLexicon& lex, std::uint32_t cls) {
  const auto& chain = lex.chain(cls);
  lexpe::FeatureStructureSet acc{lexpe::FeatureStructure::empty(lex.cls(cls).type)};
  for (const auto* c : chain) {
    acc = lexpe::set_unify(acc, {c->main});
    acc = lexpe::set_unify(acc, c->variants);
  }
  return acc;
}

/// The same with the superclass part computed first (left to right) and the
/// class's own structures unified last.
inline lexpe::FeatureStructureSet strict_class_last(const lexpe::ResolvedLexicon& lex, std::uint32_t cls) {
  const auto& chain = lex.chain(cls);
  lexpe::FeatureStructureSet acc{lexpe::FeatureStructure::empty(lex.cls(cls).type)};
  for (std::size_t i = 1; i < chain.size(); ++i) {
    acc = lexpe::set_unify(acc, {chain[i]->main});
    acc = lexpe::set_unify(acc, chain[i]->variants);
  }
  acc = lexpe::set_unify(acc, {chain[0]->main});
  return lexpe::set_unify(acc, chain[0]->variants);
}

}  // namespace testing
