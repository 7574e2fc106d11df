#pragma once

// Class precedence lists (CLOS linearization) and locating inheritance.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lexpe/lexicon.hpp"

namespace lexpe {

class HierarchyError : public std::runtime_error {
 public:
  enum class Kind { cycle, linearization, location };
  HierarchyError(Kind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct CplEntry {
  std::uint32_t cls = 0;
  Path at;  // where the class's contributions land in the owner's structure
  friend bool operator==(const CplEntry&, const CplEntry&) = default;
  friend auto operator<=>(const CplEntry&, const CplEntry&) = default;
};

struct Cpl {
  std::uint32_t cls = 0;
  std::vector<CplEntry> list;  // list[0] is the class itself

  /// CPL minus the class itself: the pe-result key.
  std::vector<CplEntry> key() const { return {list.begin() + 1, list.end()}; }
};

/// CLOS topological sort over a plain superclass graph. `supers[i]` lists the
/// direct superclasses of i in declaration order. Returns nullopt when the
/// local precedence orders cannot be satisfied; throws on cycles.
std::optional<std::vector<std::uint32_t>> clos_linearize(
    std::uint32_t cls, const std::vector<std::vector<std::uint32_t>>& supers);

/// CPL with composed locating paths. Throws HierarchyError.
Cpl compute_cpl(std::uint32_t cls, const Lexicon& lex);

}  // namespace lexpe
