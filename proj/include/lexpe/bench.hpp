#pragma once

// Lookup benchmark: indexed-inheritance lookup against pe-lookup (and,
// optionally, a full-form table) over a word list.

#include <string>
#include <vector>

#include "lexpe/form_index.hpp"
#include "lexpe/pe.hpp"
#include "lexpe/stats.hpp"

namespace lexpe {

struct BenchOptions {
  unsigned reps = 21;
  unsigned warmup = 2;
  bool indexed = true;
  bool pe = true;
  bool fullform = false;
  unsigned threads = 0;  // > 0: also run the words concurrently and compare
};

struct BenchRow {
  std::string word;
  WordMetrics metrics;
  std::size_t results = 0;
  double t_indexed_us = 0;
  double t_pe_us = 0;
  double t_full_us = 0;
  double speedup = 0;
  bool agree = true;  // strategies returned equivalent sets
};

struct BenchAverage {
  std::size_t words = 0;
  double n_s = 0, n_fs = 0, n_afs = 0, pe_n_fs = 0, pe_n_afs = 0, n_dp = 0;
  double t_indexed_us = 0, t_pe_us = 0, t_full_us = 0;
  double speedup = 0;  // ratio of the average times
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::vector<std::string> missing;  // words absent from the index
  BenchAverage average;              // over found words
  bool parallel_ok = true;
  bool fullform = false;

  std::string csv() const;
  std::string table() const;
};

/// Median of `reps` timed runs per word after `warmup` untimed ones.
BenchReport run_bench(const PeLexicon& pe, const FormIndex& index, const std::vector<std::string>& words,
                      const BenchOptions& opts = {});

std::vector<std::string> read_wordlist(const std::string& text);

}  // namespace lexpe
