#pragma once

// Sorts (flat atom enumerations), feature-structure types and feature
// appropriateness. Feature ids are assigned in lexicographic order of the
// feature names so that iterating arcs by id visits paths lexicographically.

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace lexpe {

using SortId = std::uint32_t;
using TypeId = std::uint32_t;
using FeatureId = std::uint32_t;

inline constexpr SortId kStringSort = 0;
inline constexpr TypeId kNoType = std::numeric_limits<TypeId>::max();
inline constexpr std::size_t kMaxSortValues = 64;

using Path = std::vector<FeatureId>;

/// Lexicon content that violates the type system (unknown feature, sort
/// mismatch, bad embedding). This is a lexicon bug, not a unification failure.
class TypeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SortDef {
  std::string name;
  std::vector<std::string> values;  // empty for the string sort
};

struct FeatureDecl {
  FeatureId feature = 0;
  bool atomic = true;
  std::uint32_t target = 0;  // SortId when atomic, TypeId otherwise
};

struct TypeDef {
  std::string name;
  std::vector<FeatureDecl> features;  // sorted by feature id
};

/// Result of walking a path through the type system.
struct PathTarget {
  bool atomic = false;
  std::uint32_t id = 0;  // SortId or TypeId
};

struct TypeDecl {
  std::string name;
  std::vector<std::pair<std::string, std::string>> features;  // feature, sort-or-type name
};

class TypeSystem {
 public:
  /// Builds the tables. Feature ids are ranked by name across all types.
  /// Throws TypeError on duplicates, unknown targets or oversized sorts.
  TypeSystem(std::vector<SortDef> sorts, const std::vector<TypeDecl>& types);
  TypeSystem() : TypeSystem({}, {}) {}

  std::optional<SortId> find_sort(std::string_view name) const;
  std::optional<TypeId> find_type(std::string_view name) const;
  std::optional<FeatureId> find_feature(std::string_view name) const;

  const SortDef& sort(SortId id) const { return sorts_.at(id); }
  const TypeDef& type(TypeId id) const { return types_.at(id); }
  const std::string& feature_name(FeatureId id) const { return features_.at(id); }

  std::size_t sort_count() const { return sorts_.size(); }
  std::size_t type_count() const { return types_.size(); }
  std::size_t feature_count() const { return features_.size(); }

  /// nullptr when the feature is not appropriate for the type.
  const FeatureDecl* appropriate(TypeId type, FeatureId feature) const;

  std::optional<std::uint32_t> value_index(SortId sort, std::string_view value) const;
  std::uint64_t full_mask(SortId sort) const;

  /// Throws TypeError when some step is not appropriate or walks through an atom.
  PathTarget resolve(TypeId root, const Path& path) const;

  /// Parses "a^b^c" against feature names; throws TypeError for unknown names.
  Path parse_path(std::string_view text) const;
  std::string path_string(const Path& path) const;

  const std::vector<SortDef>& sorts() const { return sorts_; }
  const std::vector<TypeDef>& types() const { return types_; }
  const std::vector<std::string>& features() const { return features_; }

 private:
  std::vector<SortDef> sorts_;
  std::vector<TypeDef> types_;
  std::vector<std::string> features_;
  std::unordered_map<std::string, SortId> sort_index_;
  std::unordered_map<std::string, TypeId> type_index_;
  std::unordered_map<std::string, FeatureId> feature_index_;
};

}  // namespace lexpe
