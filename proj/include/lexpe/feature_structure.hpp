#pragma once

// Typed, possibly re-entrant feature structures.
//
// A FeatureStructure is an immutable rooted DAG held behind a shared pointer,
// so copies are cheap and values can be shared across threads. Every value is
// kept in normal form: nodes are numbered in depth-first preorder following
// arcs in feature-id order, unconstrained leaves and empty complex nodes that
// are neither shared nor predicate arguments are pruned, and residue
// predicates are sorted. Two structures are equivalent (mutual subsumption up
// to coreference renaming) exactly when their normal forms are identical.

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lexpe/atom.hpp"
#include "lexpe/predicates.hpp"
#include "lexpe/types.hpp"

namespace lexpe {

class Workspace;

inline constexpr std::uint32_t kNoNode = std::numeric_limits<std::uint32_t>::max();

struct Arc {
  FeatureId feature = 0;
  std::uint32_t target = 0;
  friend bool operator==(const Arc&, const Arc&) = default;
};

struct Node {
  TypeId type = kNoType;  // kNoType marks an atomic leaf
  AtomConstraint atom;
  std::uint32_t arc_begin = 0;
  std::uint32_t arc_end = 0;

  bool is_atom() const { return type == kNoType; }
  friend bool operator==(const Node&, const Node&) = default;
};

/// A predicate argument is either a node of the host structure or a string
/// constant written directly in the lexicon.
struct PredArg {
  std::uint32_t node = kNoNode;
  std::string constant;

  bool is_node() const { return node != kNoNode; }
  friend bool operator==(const PredArg&, const PredArg&) = default;
  friend auto operator<=>(const PredArg&, const PredArg&) = default;
};

struct Predicate {
  PredicateId id = 0;
  std::vector<PredArg> args;
  friend bool operator==(const Predicate&, const Predicate&) = default;
  friend auto operator<=>(const Predicate&, const Predicate&) = default;
};

namespace detail {
struct Graph {
  std::vector<Node> nodes;
  std::vector<Arc> arcs;
  std::vector<Predicate> residue;
  std::size_t hash = 0;
};
}  // namespace detail

class FeatureStructure {
 public:
  /// A default-constructed value has no type; only useful as a placeholder.
  FeatureStructure() = default;

  static FeatureStructure empty(TypeId type);

  bool valid() const { return g_ != nullptr; }
  TypeId type() const { return g_->nodes.front().type; }
  /// True for the unit of unification: a bare root without residue.
  bool is_empty() const { return g_->nodes.size() == 1 && g_->residue.empty(); }

  std::span<const Node> nodes() const { return g_->nodes; }
  std::span<const Arc> arcs(std::uint32_t node) const {
    const auto& n = g_->nodes[node];
    return {g_->arcs.data() + n.arc_begin, n.arc_end - n.arc_begin};
  }
  std::span<const Predicate> residue() const { return g_->residue; }
  std::size_t delayed_count() const { return g_->residue.size(); }

  std::uint32_t child(std::uint32_t node, FeatureId feature) const;
  std::optional<std::uint32_t> find(const Path& path) const;
  /// Literal string at path, if the path exists and is bound.
  std::optional<std::string_view> literal_at(const Path& path) const;

  /// Lexicographically smallest path to every node (root: empty path).
  std::vector<Path> first_paths() const;
  /// Number of atomic feature structures: constrained leaves, coreferences
  /// and residue predicates.
  std::size_t atomic_size() const;

  std::size_t hash() const { return g_->hash; }

  friend bool equivalent(const FeatureStructure& a, const FeatureStructure& b);
  friend bool operator==(const FeatureStructure& a, const FeatureStructure& b) {
    return equivalent(a, b);
  }

 private:
  friend class Workspace;
  explicit FeatureStructure(std::shared_ptr<const detail::Graph> g) : g_(std::move(g)) {}
  std::shared_ptr<const detail::Graph> g_;
};

bool equivalent(const FeatureStructure& a, const FeatureStructure& b);

/// Most general structure subsumed by both; nullopt is unification failure
/// (type clash, empty atom intersection or a woken predicate that fails).
std::optional<FeatureStructure> unify(const FeatureStructure& f, const FeatureStructure& g);

/// AVM-style text with numbered coreference tags and the delayed residue.
std::string render_avm(const TypeSystem& ts, const FeatureStructure& fs);

/// Path-driven construction of well-typed structures. Inconsistent
/// constraints make `finish` return nullopt; ill-typed ones throw TypeError.
class FsBuilder {
 public:
  using Arg = std::variant<Path, std::string>;

  FsBuilder(const TypeSystem& ts, TypeId root);
  ~FsBuilder();
  FsBuilder(const FsBuilder&) = delete;
  FsBuilder& operator=(const FsBuilder&) = delete;

  FsBuilder& constrain(const Path& path, const AtomConstraint& value);
  FsBuilder& share(const Path& a, const Path& b);
  FsBuilder& add_predicate(PredicateId id, const std::vector<Arg>& args);
  /// Unifies `fs` in at `path` (whose type must be fs's type).
  FsBuilder& embed(const Path& path, const FeatureStructure& fs);
  /// Copies the substructure of `src` found at `from` to `to`; no-op when
  /// `from` does not exist in `src`.
  FsBuilder& copy(const FeatureStructure& src, const Path& from, const Path& to);

  bool consistent() const { return ok_; }
  std::optional<FeatureStructure> finish();

 private:
  std::uint32_t node_at(const Path& path);

  const TypeSystem& ts_;
  TypeId root_type_;
  std::unique_ptr<Workspace> ws_;
  std::uint32_t root_ = 0;
  bool ok_ = true;
};

/// Embeds `fs` at `path` below an otherwise empty root of type `host`.
/// Empty path is the identity (and requires host == fs.type()).
FeatureStructure locate(const TypeSystem& ts, const FeatureStructure& fs, TypeId host,
                        const Path& path);

/// Visits every (path, node) in lexicographic path order. `first` is false
/// when the node was already reached by an earlier path; its substructure is
/// then not revisited.
void for_each_path(const FeatureStructure& fs,
                   const std::function<void(const Path&, std::uint32_t node, bool first,
                                            const Path& first_path)>& visit);

}  // namespace lexpe
