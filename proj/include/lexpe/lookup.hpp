#pragma once

// Lookup in a pe-lexicon: fetch the index entry, complete the selected
// pe-result elements with the class's own structures, add the defaults.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "lexpe/form_index.hpp"
#include "lexpe/pe.hpp"

namespace lexpe {

/// Same result as unify(intermediate, small), computed by walking `small`
/// and constraining a copy of `intermediate` in place.
std::optional<FeatureStructure> constrain_unify(const FeatureStructure& intermediate, const FeatureStructure& small);

struct LookupStats {
  Counters counters;
  std::size_t elements = 0;       // pe-result elements completed
  std::size_t delayed_before = 0;  // delayed predicates in those elements
  std::size_t delayed_after = 0;   // residue left in the results
};

struct Completed {
  FeatureStructure fs;
  std::uint32_t pf_index = 0;  // 0-based position in p_f
};

/// Completes the given p_f elements (0-based) of the class's pe-result:
/// {M_c} ⊓ V_c ⊓ PE, then D_c, then the pe-result defaults.
std::vector<Completed> complete(const PeLexicon& pe, const PeClass& c, std::span<const std::uint32_t> selection,
                                LookupStats* stats = nullptr);
std::vector<Completed> complete_all(const PeLexicon& pe, const PeClass& c, LookupStats* stats = nullptr);

/// Every structure for `word`; empty for unknown words. Throws
/// std::runtime_error when the index names a class the lexicon lacks.
FeatureStructureSet lookup_pe(std::string_view word, const PeLexicon& pe, const FormIndex& index,
                              LookupStats* stats = nullptr);

}  // namespace lexpe
