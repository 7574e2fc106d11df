#pragma once

// Coroutined predicative constraints. A predicate attached to a feature
// structure stays delayed until its arguments are instantiated enough for
// its solver to decide; unification re-checks it every time.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lexpe {

using PredicateId = std::uint32_t;

enum class PredicateStatus { solved, delayed, failure };

struct PredicateOutcome {
  PredicateStatus status = PredicateStatus::delayed;
  /// Argument slot -> value to bind, only for `solved`.
  std::vector<std::pair<std::size_t, std::string>> bindings;
};

/// Each slot is the literal value of the argument if it has one.
using PredicateSolver = PredicateOutcome (*)(std::span<const std::optional<std::string_view>>);

struct PredicateSpec {
  std::string name;
  std::size_t arity = 0;
  PredicateSolver solve = nullptr;
};

/// Wakes when the first two arguments are literal, or when the third and
/// exactly one of the first two are.
PredicateOutcome solve_concat(std::span<const std::optional<std::string_view>> args);

/// The shipped predicate table. Lookups are read-only; `register_predicate`
/// must happen before any lexicon is loaded.
std::optional<PredicateId> find_predicate(std::string_view name);
const PredicateSpec& predicate(PredicateId id);
PredicateId register_predicate(PredicateSpec spec);

}  // namespace lexpe
