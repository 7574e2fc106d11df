#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <vector>

#include "lexpe/feature_structure.hpp"

namespace lexpe {

/// Work counters filled in by the set-level and default operations.
struct Counters {
  std::size_t unifications = 0;
  std::size_t default_atoms_tried = 0;
  std::size_t default_atoms_skipped = 0;
};

/// Finite set of feature structures; insertion order is kept and elements
/// equivalent to an existing one are dropped.
class FeatureStructureSet {
 public:
  FeatureStructureSet() = default;
  FeatureStructureSet(std::initializer_list<FeatureStructure> items);

  /// Returns false (and keeps the set unchanged) for a duplicate.
  bool insert(const FeatureStructure& fs);
  std::optional<std::size_t> index_of(const FeatureStructure& fs) const;
  bool contains(const FeatureStructure& fs) const { return index_of(fs).has_value(); }

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const FeatureStructure& operator[](std::size_t i) const { return items_[i]; }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }
  const std::vector<FeatureStructure>& elements() const { return items_; }

 private:
  std::vector<FeatureStructure> items_;
  std::vector<std::size_t> hashes_;
};

/// { x ⊓ y | x ∈ a, y ∈ b } without failures; a is the outer loop.
FeatureStructureSet set_unify(const FeatureStructureSet& a, const FeatureStructureSet& b,
                              Counters* counters = nullptr);

/// Same elements regardless of order.
bool set_equivalent(const FeatureStructureSet& a, const FeatureStructureSet& b);

}  // namespace lexpe
