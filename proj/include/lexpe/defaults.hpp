#pragma once

// Prioritized default unification. A default structure is broken into atomic
// defaults (one value assignment per constrained leaf, one coreference per
// additional path to a shared node, one entry per predicate) in
// lexicographic path order. Atoms are added one at a time and skipped when
// they conflict with what is already there, so earlier atoms win.

#include <span>
#include <vector>

#include "lexpe/feature_structure.hpp"
#include "lexpe/fs_set.hpp"

namespace lexpe {

struct AtomicDefault {
  enum class Kind { assign, share, predicate };

  Kind kind = Kind::assign;
  Path path;                       // assign, share (first path)
  Path other;                      // share (second path)
  AtomConstraint value;            // assign
  PredicateId predicate = 0;       // predicate
  std::vector<FsBuilder::Arg> args;
  unsigned priority = 0;           // ordinal of the contributing default structure
  /// The atom as a structure of the host type; invalid when the atom is
  /// unsatisfiable on its own (it is then always skipped).
  FeatureStructure fs;
};

using DefaultSequence = std::vector<AtomicDefault>;

DefaultSequence decompose_default(const TypeSystem& ts, const FeatureStructure& d,
                                  unsigned priority = 0);

/// unify(f, a) when that succeeds, otherwise f. Never fails.
FeatureStructure default_add(const FeatureStructure& f, const AtomicDefault& a,
                             Counters* counters = nullptr);

/// Applies the atoms of each sequence in order (earliest = highest priority).
FeatureStructure apply_defaults(const FeatureStructure& f, std::span<const DefaultSequence> seq,
                                Counters* counters = nullptr);

FeatureStructureSet default_unify_seq(const FeatureStructureSet& s,
                                      std::span<const DefaultSequence> seq,
                                      Counters* counters = nullptr);

/// Convenience overload that decomposes `ds` with priorities 0, 1, ...
FeatureStructureSet default_unify_seq(const TypeSystem& ts, const FeatureStructureSet& s,
                                      std::span<const FeatureStructure> ds);

std::string render_default(const TypeSystem& ts, const AtomicDefault& a);

}  // namespace lexpe
