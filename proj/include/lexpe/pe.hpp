#pragma once

// Partially evaluated lexicon. Lexical classes sharing a CPL tail share one
// pe-result: the unified main and variant structures of the superclasses
// (p_f) plus their default structures, left unevaluated (p_d).

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lexpe/extension.hpp"

namespace lexpe {

struct PeKey {
  TypeId type = kNoType;
  std::vector<CplEntry> tail;
  friend bool operator==(const PeKey&, const PeKey&) = default;
  friend auto operator<=>(const PeKey&, const PeKey&) = default;
};

struct PeResult {
  std::uint32_t id = 0;
  PeKey key;
  FeatureStructureSet p_f;
  std::vector<FeatureStructure> p_d;      // located D_2 ... D_n
  std::vector<DefaultSequence> p_d_atoms;  // decomposition of p_d
};

/// Residue of a lexical class: its own sections and its pe-result.
struct PeClass {
  std::uint32_t cls = 0;  // index into the source lexicon
  ClassId id = kNoClassId;
  std::string name;
  TypeId type = kNoType;
  FeatureStructure main;
  FeatureStructureSet variants;
  FeatureStructure defaults;
  DefaultSequence default_atoms;
  std::uint32_t pe_result = 0;
  unsigned depth = 0;
};

struct PeMetadata {
  std::size_t n_l = 0;
  std::size_t n_n = 0;
  std::size_t n_cpl = 0;
  std::size_t n_lfs_original = 0;
  std::size_t n_lfs_pe = 0;
  std::size_t n_generated = 0;
};

struct PeLexicon {
  /// The hierarchy the pe-lexicon was compiled from (kept for the baseline).
  std::shared_ptr<ResolvedLexicon> source;
  std::vector<PeClass> classes;  // ordered by class id
  std::vector<PeResult> results;  // ordered by pe-result id
  PeMetadata meta;
  std::vector<std::string> warnings;

  const TypeSystem& types() const { return source->types(); }
  const PeClass* find(ClassId id) const;
  const PeClass* find(const std::string& name) const;
  const PeResult& result_of(const PeClass& c) const { return results.at(c.pe_result); }

  /// Rebuilds lookup tables after classes were added or reordered.
  void reindex();

 private:
  std::map<ClassId, std::uint32_t> by_id_;
};

struct CompileOptions {
  bool generators = true;
  unsigned generator_depth_limit = 8;
};

PeLexicon pe_compile(Lexicon lex, const CompileOptions& opts = {});

/// Applies every non-delayed generator whose name an extension element
/// carries in its `gener` feature, registering each output as a new lexical
/// class. Repeats on the new classes; throws LexiconError past `depth_limit`.
void expand_generators(PeLexicon& pe, unsigned depth_limit = 8);

/// Recomputes n_l, n_n, n_cpl and the size counts.
void compute_metadata(PeLexicon& pe);

/// Number of non-empty structures among the given ones.
std::size_t count_structures(const FeatureStructure& main, const FeatureStructureSet& variants,
                             const FeatureStructure& defaults);

}  // namespace lexpe
