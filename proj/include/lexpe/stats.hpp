#pragma once

// Size statistics of a compiled lexicon and per-word work metrics.

#include <cstddef>
#include <string>
#include <string_view>

#include "lexpe/form_index.hpp"
#include "lexpe/pe.hpp"

namespace lexpe {

struct StatsReport {
  std::size_t n_l = 0;
  std::size_t n_n = 0;
  std::size_t n_cpl = 0;
  std::size_t n_lfs_original = 0;
  std::size_t n_lfs_pe = 0;
  double size_ratio = 0;
  double t_e = 0;  // compile seconds; NaN when unknown (loaded artifact)
  std::size_t n_generated = 0;
  std::size_t n_forms = 0;

  std::string table() const;
  std::string json() const;
};

StatsReport make_stats(const PeLexicon& pe, const FormIndex& index, double t_e);

/// Work a lookup of one word does, summed over its index entries.
///   n_s    superclasses (CPL length minus one)
///   n_fs   structures the indexed lexicon adds from superclasses (|p_f|)
///   n_afs  their atomic structures
///   pe_n_fs, pe_n_afs  the same for the pe-lexicon: selected p_f elements
///          plus the class's own non-empty structures
///   n_dp   delayed predicates in the selected p_f elements
struct WordMetrics {
  bool found = false;
  std::size_t n_s = 0;
  std::size_t n_fs = 0;
  std::size_t n_afs = 0;
  std::size_t pe_n_fs = 0;
  std::size_t pe_n_afs = 0;
  std::size_t n_dp = 0;
};

WordMetrics word_metrics(const PeLexicon& pe, const FormIndex& index, std::string_view word);

}  // namespace lexpe
