#include "lexpe/atom.hpp"

#include <bit>

namespace lexpe {

AtomConstraint AtomConstraint::unconstrained(const TypeSystem& ts, SortId sort) {
  if (sort == kStringSort) return any_string();
  const auto full = ts.full_mask(sort);
  return AtomConstraint(sort, full, full);
}

AtomConstraint AtomConstraint::literal(std::string value) {
  AtomConstraint a(kStringSort, 0, 0);
  a.literal_ = std::move(value);
  return a;
}

std::optional<AtomConstraint> AtomConstraint::intersect(const AtomConstraint& a,
                                                        const AtomConstraint& b) {
  if (a.sort_ != b.sort_) return std::nullopt;
  if (a.is_string()) {
    if (!a.literal_) return b;
    if (!b.literal_ || *a.literal_ == *b.literal_) return a;
    return std::nullopt;
  }
  const auto m = a.mask_ & b.mask_;
  if (m == 0) return std::nullopt;
  return AtomConstraint(a.sort_, m, a.universe_);
}

std::string AtomConstraint::render(const TypeSystem& ts) const {
  if (is_string()) return literal_ ? "\"" + *literal_ + "\"" : "*";
  if (mask_ == universe_) return "*";
  const auto& vals = ts.sort(sort_).values;
  const auto join = [&](std::uint64_t m) {
    std::string out;
    for (std::size_t i = 0; i < vals.size(); ++i) {
      if (!(m >> i & 1)) continue;
      if (!out.empty()) out += " or ";
      out += vals[i];
    }
    return out;
  };
  const auto neg = universe_ & ~mask_;
  if (std::popcount(neg) < std::popcount(mask_)) {
    return std::popcount(neg) == 1 ? "not " + join(neg) : "not (" + join(neg) + ")";
  }
  return join(mask_);
}

}  // namespace lexpe
