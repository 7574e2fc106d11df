#pragma once

// Full extension of lexical classes, computed directly from the class
// hierarchy. This is both the indexed-inheritance baseline and the reference
// the compiled lexicon is checked against.

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "lexpe/defaults.hpp"
#include "lexpe/fs_set.hpp"
#include "lexpe/hierarchy.hpp"
#include "lexpe/lexicon.hpp"

namespace lexpe {

/// Information of one CPL member, embedded at its location in the host type.
struct Contribution {
  FeatureStructure main;
  FeatureStructureSet variants;
  FeatureStructure defaults;
  DefaultSequence default_atoms;
};

/// A lexicon with every CPL and located contribution precomputed. Read-only
/// (and therefore shareable between threads) once built.
class ResolvedLexicon {
 public:
  explicit ResolvedLexicon(Lexicon lex);

  const Lexicon& lexicon() const { return lex_; }
  const TypeSystem& types() const { return *lex_.types; }
  const LoweredClass& cls(std::uint32_t c) const { return lex_.classes[c]; }
  std::size_t size() const { return lex_.classes.size(); }

  const Cpl& cpl(std::uint32_t c) const { return cpls_[c]; }
  /// Contributions aligned with cpl(c).list.
  const std::vector<const Contribution*>& chain(std::uint32_t c) const { return chains_[c]; }

  std::vector<std::uint32_t> lexical_classes() const;

  /// Adds and resolves a class whose superclasses are already present.
  std::uint32_t add_class(LoweredClass c);

 private:
  void resolve(std::uint32_t c);
  const Contribution* contribution(std::uint32_t cls, TypeId host, const Path& at);

  Lexicon lex_;
  std::vector<Cpl> cpls_;
  std::vector<std::vector<const Contribution*>> chains_;
  std::map<std::tuple<std::uint32_t, TypeId, Path>, std::unique_ptr<Contribution>> pool_;
};

struct ExtensionSet {
  std::uint32_t cls = 0;
  FeatureStructureSet elements;
  /// For each element, the variant chosen at every CPL position.
  std::vector<std::vector<std::uint32_t>> provenance;
};

/// {M_1} ⊓ V_1 ⊓ ... ⊓ {M_n} ⊓ V_n, left to right along the CPL.
ExtensionSet extend_strict(const ResolvedLexicon& lex, std::uint32_t cls, Counters* counters = nullptr);

/// extend_strict followed by the defaults D_1 ... D_n in CPL order.
ExtensionSet extend(const ResolvedLexicon& lex, std::uint32_t cls, Counters* counters = nullptr);

/// Applies the default atoms of the given chain positions in order.
FeatureStructure apply_chain_defaults(const FeatureStructure& f, std::span<const Contribution* const> chain,
                                      Counters* counters = nullptr);

/// Index of the plain indexed-inheritance lexicon: form -> classes.
using PlainIndex = std::unordered_map<std::string, std::vector<std::uint32_t>>;

/// Extends every class the index lists for `word` and keeps the elements
/// whose key feature is `word`.
FeatureStructureSet lookup_indexed(std::string_view word, const PlainIndex& index, const ResolvedLexicon& lex,
                                   const Path& key, Counters* counters = nullptr);

}  // namespace lexpe
