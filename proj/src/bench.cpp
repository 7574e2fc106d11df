#include "lexpe/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <sstream>
#include <thread>

#include "lexpe/extension.hpp"
#include "lexpe/lookup.hpp"

namespace lexpe {

namespace {

using Clock = std::chrono::steady_clock;

template <class Fn>
double median_us(unsigned warmup, unsigned reps, Fn&& fn) {
  for (unsigned i = 0; i < warmup; ++i) fn();
  std::vector<double> t;
  t.reserve(reps);
  for (unsigned i = 0; i < std::max(1u, reps); ++i) {
    const auto start = Clock::now();
    fn();
    t.push_back(std::chrono::duration<double, std::micro>(Clock::now() - start).count());
  }
  std::nth_element(t.begin(), t.begin() + t.size() / 2, t.end());
  return t[t.size() / 2];
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

BenchReport run_bench(const PeLexicon& pe, const FormIndex& index, const std::vector<std::string>& words,
                      const BenchOptions& opts) {
  BenchReport report;
  report.fullform = opts.fullform;
  const auto plain = index.plain(pe);
  const auto& lex = *pe.source;
  const auto& key = index.key();

  std::unordered_map<std::string, FeatureStructureSet> full;
  if (opts.fullform) {
    for (const auto& c : pe.classes)
      for (const auto& e : complete_all(pe, c))
        if (auto f = e.fs.literal_at(key)) full[std::string(*f)].insert(e.fs);
  }

  std::vector<FeatureStructureSet> pe_results;
  for (const auto& w : words) {
    if (index.lookup(w).empty()) {
      report.missing.push_back(w);
      continue;
    }
    BenchRow row;
    row.word = w;
    row.metrics = word_metrics(pe, index, w);
    FeatureStructureSet r_pe, r_idx;
    std::size_t sink = 0;
    if (opts.pe) {
      r_pe = lookup_pe(w, pe, index);
      row.t_pe_us = median_us(opts.warmup, opts.reps, [&] { sink += lookup_pe(w, pe, index).size(); });
    }
    if (opts.indexed) {
      r_idx = lookup_indexed(w, plain, lex, key);
      row.t_indexed_us =
          median_us(opts.warmup, opts.reps, [&] { sink += lookup_indexed(w, plain, lex, key).size(); });
    }
    if (opts.fullform) {
      row.t_full_us = median_us(opts.warmup, opts.reps, [&] {
        auto it = full.find(w);
        sink += it == full.end() ? 0 : it->second.size();
      });
      auto it = full.find(w);
      const FeatureStructureSet r_full = it == full.end() ? FeatureStructureSet{} : it->second;
      if (opts.pe && !set_equivalent(r_full, r_pe)) row.agree = false;
    }
    if (opts.pe && opts.indexed) {
      row.agree = row.agree && set_equivalent(r_idx, r_pe);
      row.speedup = row.t_pe_us > 0 ? row.t_indexed_us / row.t_pe_us : 0.0;
    }
    row.results = opts.pe ? r_pe.size() : r_idx.size();
    if (sink == static_cast<std::size_t>(-1)) row.results = 0;  // keeps the timed calls observable
    pe_results.push_back(std::move(r_pe));
    report.rows.push_back(std::move(row));
  }

  auto& a = report.average;
  a.words = report.rows.size();
  if (a.words) {
    for (const auto& r : report.rows) {
      a.n_s += double(r.metrics.n_s);
      a.n_fs += double(r.metrics.n_fs);
      a.n_afs += double(r.metrics.n_afs);
      a.pe_n_fs += double(r.metrics.pe_n_fs);
      a.pe_n_afs += double(r.metrics.pe_n_afs);
      a.n_dp += double(r.metrics.n_dp);
      a.t_indexed_us += r.t_indexed_us;
      a.t_pe_us += r.t_pe_us;
      a.t_full_us += r.t_full_us;
    }
    const double n = double(a.words);
    for (double* v : {&a.n_s, &a.n_fs, &a.n_afs, &a.pe_n_fs, &a.pe_n_afs, &a.n_dp, &a.t_indexed_us, &a.t_pe_us,
                      &a.t_full_us})
      *v /= n;
    a.speedup = a.t_pe_us > 0 ? a.t_indexed_us / a.t_pe_us : 0.0;
  }

  if (opts.threads > 0 && opts.pe && !report.rows.empty()) {
    std::vector<char> ok(opts.threads, 1);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < opts.threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t i = 0; i < report.rows.size(); ++i) {
          const auto& row = report.rows[(i + t) % report.rows.size()];
          const auto& expect = pe_results[(i + t) % report.rows.size()];
          if (!set_equivalent(lookup_pe(row.word, pe, index), expect)) ok[t] = 0;
        }
      });
    }
    for (auto& th : pool) th.join();
    report.parallel_ok = std::all_of(ok.begin(), ok.end(), [](char c) { return c != 0; });
  }
  return report;
}

std::string BenchReport::csv() const {
  std::ostringstream out;
  out << "word,n_s,n_fs,n_afs,n_dp,t_indexed_us,t_pe_us,speedup\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, ",%zu,%zu,%zu,%zu,%.3f,%.3f,%.2f\n", r.metrics.n_s, r.metrics.n_fs,
                  r.metrics.n_afs, r.metrics.n_dp, r.t_indexed_us, r.t_pe_us, r.speedup);
    out << csv_field(r.word) << buf;
  }
  if (average.words) {
    std::snprintf(buf, sizeof buf, "average,%.2f,%.2f,%.2f,%.2f,%.3f,%.3f,%.2f\n", average.n_s, average.n_fs,
                  average.n_afs, average.n_dp, average.t_indexed_us, average.t_pe_us, average.speedup);
    out << buf;
  }
  return out.str();
}

namespace {

// Left-justifies by code points so that umlauts do not shift the columns.
std::string pad_word(const std::string& w, std::size_t width) {
  std::size_t cps = 0;
  for (unsigned char ch : w) cps += (ch & 0xC0) != 0x80;
  return cps >= width ? w : w + std::string(width - cps, ' ');
}

}  // namespace

std::string BenchReport::table() const {
  std::ostringstream out;
  char buf[320];
  std::snprintf(buf, sizeof buf, "%-16s | %6s %7s %8s %12s | %6s %7s %5s %12s | %8s%s\n", "word", "n_s", "n_fs",
                "n_afs", "t_l(us)", "n_fs", "n_afs", "n_dp", "t_l(us)", "speedup", fullform ? " | full(us)" : "");
  out << buf;
  out << std::string(fullform ? 118 : 106, '-') << '\n';
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%s | %6zu %7zu %8zu %12.2f | %6zu %7zu %5zu %12.2f | %8.1f", pad_word(r.word, 16).c_str(),
                  r.metrics.n_s, r.metrics.n_fs, r.metrics.n_afs, r.t_indexed_us, r.metrics.pe_n_fs,
                  r.metrics.pe_n_afs, r.metrics.n_dp, r.t_pe_us, r.speedup);
    out << buf;
    if (fullform) {
      std::snprintf(buf, sizeof buf, " | %8.2f", r.t_full_us);
      out << buf;
    }
    if (!r.agree) out << "  MISMATCH";
    out << '\n';
  }
  if (average.words) {
    std::snprintf(buf, sizeof buf, "%-16s | %6.2f %7.1f %8.1f %12.2f | %6.2f %7.2f %5.2f %12.2f | %8.1f\n",
                  ("average (" + std::to_string(average.words) + ")").c_str(), average.n_s, average.n_fs,
                  average.n_afs, average.t_indexed_us, average.pe_n_fs, average.pe_n_afs, average.n_dp,
                  average.t_pe_us, average.speedup);
    out << buf;
  }
  for (const auto& w : missing) out << "not in index: " << w << '\n';
  return out.str();
}

std::vector<std::string> read_wordlist(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto b = line.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t");
    out.push_back(line.substr(b, e - b + 1));
  }
  return out;
}

}  // namespace lexpe
