#pragma once

// Mutable union-find graph used to compute unifications. Structures are
// imported, merged node by node, predicates are solved to a fixpoint and the
// result is emitted in normal form. Not thread-safe; use one per thread.

#include <cstdint>
#include <optional>
#include <vector>

#include "lexpe/feature_structure.hpp"

namespace lexpe {

class Workspace {
 public:
  struct WNode {
    TypeId type = kNoType;
    AtomConstraint atom;
    std::vector<Arc> arcs;  // sorted by feature; targets are workspace ids
    std::uint32_t parent = 0;
  };

  void reset();

  std::uint32_t import(const FeatureStructure& fs);
  /// Imports the sub-DAG below `node` together with the residue predicates
  /// whose node arguments all lie inside it.
  std::uint32_t import_from(const FeatureStructure& fs, std::uint32_t node);

  std::uint32_t add_complex(TypeId type);
  std::uint32_t add_atom(const AtomConstraint& atom);
  void add_arc(std::uint32_t parent, FeatureId feature, std::uint32_t child);
  void add_predicate(Predicate p) { preds_.push_back(std::move(p)); }

  std::uint32_t find(std::uint32_t n);
  /// Child of the representative of `n`, or kNoNode.
  std::uint32_t child(std::uint32_t n, FeatureId feature);
  /// Walks `path` from `n`, creating appropriately typed nodes as needed.
  std::uint32_t ensure_path(const TypeSystem& ts, std::uint32_t n, const Path& path);

  WNode& node(std::uint32_t n) { return nodes_[n]; }

  bool unify(std::uint32_t a, std::uint32_t b);
  bool constrain(std::uint32_t n, const AtomConstraint& atom);

  /// Solves predicates and emits the structure rooted at `root`.
  std::optional<FeatureStructure> finish(std::uint32_t root);

 private:
  std::uint32_t new_node();
  bool solve_predicates();
  bool droppable(std::uint32_t n);

  std::vector<WNode> nodes_;
  std::uint32_t size_ = 0;
  std::vector<Predicate> preds_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> stack_;

  // finish() scratch, indexed by workspace id
  std::vector<std::uint32_t> refs_;
  std::vector<std::uint32_t> out_index_;
  std::vector<std::int8_t> drop_;  // -1 unknown, 0 keep, 1 drop
  std::vector<std::uint8_t> pinned_;
  std::vector<std::uint32_t> order_;
};

/// Per-thread workspace for the hot unification paths. Callers must not nest.
Workspace& scratch_workspace();

}  // namespace lexpe
