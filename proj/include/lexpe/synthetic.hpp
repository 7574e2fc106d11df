#pragma once

// Seeded generator of well-typed synthetic lexicons. Lexical classes are
// spread round-robin over `paradigms` paradigm classes, so the number of
// distinct CPL tails is exactly min(paradigms, lexical). Every paradigm
// mixes in variant classes whose suffix pieces are joined to the stem by a
// chain of concat predicates.

#include <cstdint>
#include <string>

namespace lexpe {

struct SyntheticProfile {
  unsigned lexical = 10;
  unsigned paradigms = 4;
  unsigned mixins = 6;
  unsigned variants = 3;
  unsigned mixins_per_paradigm = 2;
  unsigned depth = 2;
  double default_conflicts = 0.2;  // share of lexical classes overriding lemma

  static SyntheticProfile from_json(const std::string& text);
  std::string to_json() const;
};

std::string gen_synthetic(const SyntheticProfile& profile, std::uint64_t seed);

}  // namespace lexpe
