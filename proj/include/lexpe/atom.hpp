#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "lexpe/types.hpp"

namespace lexpe {

/// Constraint on an atomic value. Enumerated sorts keep the set of allowed
/// values as a bit mask over the sort's declaration order, so a negated set
/// is simply the complement within the sort. The string sort admits either
/// a single literal or no constraint.
class AtomConstraint {
 public:
  AtomConstraint() = default;

  static AtomConstraint unconstrained(const TypeSystem& ts, SortId sort);
  static AtomConstraint any_string() { return AtomConstraint(kStringSort, 0, 0); }
  static AtomConstraint literal(std::string value);
  /// Caller guarantees 0 < mask <= universe.
  static AtomConstraint values(SortId sort, std::uint64_t mask, std::uint64_t universe) {
    return AtomConstraint(sort, mask, universe);
  }

  SortId sort() const { return sort_; }
  bool is_string() const { return sort_ == kStringSort; }
  std::uint64_t mask() const { return mask_; }
  std::uint64_t universe() const { return universe_; }
  const std::optional<std::string>& text() const { return literal_; }

  bool unconstrained() const {
    return is_string() ? !literal_.has_value() : mask_ == universe_;
  }

  /// Set intersection; nullopt when empty (the inconsistent constraint is
  /// never stored).
  static std::optional<AtomConstraint> intersect(const AtomConstraint& a,
                                                 const AtomConstraint& b);

  /// "nom", "nom or acc", "not masc", "\"klein\"", or "*" when unconstrained.
  std::string render(const TypeSystem& ts) const;

  friend bool operator==(const AtomConstraint&, const AtomConstraint&) = default;

 private:
  AtomConstraint(SortId sort, std::uint64_t mask, std::uint64_t universe)
      : sort_(sort), mask_(mask), universe_(universe) {}

  SortId sort_ = kStringSort;
  std::uint64_t mask_ = 0;
  std::uint64_t universe_ = 0;
  std::optional<std::string> literal_;
};

}  // namespace lexpe
