#pragma once

// Lowered lexicon: every class section turned into typed feature structures.
// This is the "indexed inheritance lexicon" that both the extension oracle
// and the partial evaluator start from.

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lexpe/feature_structure.hpp"
#include "lexpe/fs_set.hpp"
#include "lexpe/lexicon_def.hpp"
#include "lexpe/types.hpp"

namespace lexpe {

using ClassId = std::uint32_t;
inline constexpr ClassId kNoClassId = std::numeric_limits<ClassId>::max();

/// Aggregates diagnostics from lowering and compilation.
class LexiconError : public std::runtime_error {
 public:
  explicit LexiconError(std::vector<Diagnostic> diags);
  explicit LexiconError(const std::string& message);
  const std::vector<Diagnostic>& diagnostics() const { return diags_; }

 private:
  std::vector<Diagnostic> diags_;
};

struct SuperLink {
  std::uint32_t cls = 0;  // index into Lexicon::classes
  Path at;                // locating path, empty for plain inheritance
  friend bool operator==(const SuperLink&, const SuperLink&) = default;
};

struct LoweredClass {
  std::string name;
  bool lexical = false;
  ClassId id = kNoClassId;  // lexical classes only
  TypeId type = kNoType;
  std::vector<SuperLink> supers;
  FeatureStructure main;
  FeatureStructure defaults;
  /// Variant set; {empty structure} when the class declares no variants.
  FeatureStructureSet variants;
  unsigned depth = 0;  // generator derivation depth; 0 for source classes
};

struct LoweredGenerator {
  std::string name;
  TypeId type = kNoType;
  bool delayed = false;
  std::vector<std::uint32_t> supers;
  std::vector<std::pair<Path, Path>> mapping;  // input path -> output path
  FeatureStructure output;                     // fixed material
};

struct Lexicon {
  std::shared_ptr<const TypeSystem> types;
  std::vector<LoweredClass> classes;
  std::vector<LoweredGenerator> generators;

  std::optional<std::uint32_t> find(const std::string& name) const;
  std::optional<std::uint32_t> find_generator(const std::string& name) const;
  std::optional<std::uint32_t> find_id(ClassId id) const;
  std::uint32_t add_class(LoweredClass c);
  void reindex();

 private:
  std::unordered_map<std::string, std::uint32_t> by_name_;
  std::unordered_map<ClassId, std::uint32_t> by_id_;
};

struct LoweredSections {
  FeatureStructure main;
  FeatureStructure defaults;
  FeatureStructureSet variants;
};

/// Lowers the three sections of a class against its type. Predicate calls
/// become delayed residue. Throws LexiconError on type errors.
LoweredSections lower_class(const ClassDef& def, const TypeSystem& ts, TypeId type);

/// Lowers a single section (empty description -> empty structure).
FeatureStructure lower_description(const FsDescription& d, const TypeSystem& ts, TypeId type,
                                   const std::string& what);

TypeSystem build_type_system(const LexiconDef& def);
Lexicon lower_lexicon(const LexiconDef& def);

}  // namespace lexpe
