#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>

#include "CLI11.hpp"
#include "lexpe/artifact.hpp"
#include "lexpe/bench.hpp"
#include "lexpe/driver.hpp"
#include "lexpe/hierarchy.hpp"
#include "lexpe/log.hpp"
#include "lexpe/lookup.hpp"
#include "lexpe/stats.hpp"
#include "lexpe/synthetic.hpp"

using namespace lexpe;

namespace {

std::string summary_line(const TypeSystem& ts, const FeatureStructure& fs) {
  std::string out;
  for_each_path(fs, [&](const Path& p, std::uint32_t n, bool first, const Path& first_path) {
    if (p.empty()) return;
    const auto& node = fs.nodes()[n];
    std::string item;
    if (!first)
      item = ts.path_string(p) + "=" + ts.path_string(first_path);
    else if (node.is_atom() && !node.atom.unconstrained())
      item = ts.path_string(p) + "=" + node.atom.render(ts);
    if (item.empty()) return;
    if (!out.empty()) out += ' ';
    out += item;
  });
  if (fs.delayed_count()) out += " (+" + std::to_string(fs.delayed_count()) + " delayed)";
  return out;
}

void print_lookup(const Artifact& art, const std::string& word, const std::string& format) {
  LookupStats stats;
  const auto results = lookup_pe(word, art.pe, art.index, &stats);
  const auto& ts = art.pe.types();
  std::cout << word << ": " << results.size() << " result(s)\n";
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (format == "avm") {
      std::cout << "-- " << i + 1 << '\n' << render_avm(ts, results[i]);
    } else {
      std::cout << "  " << i + 1 << ": " << summary_line(ts, results[i]) << '\n';
    }
  }
  std::cout << "  [unifications " << stats.counters.unifications << ", default atoms "
            << stats.counters.default_atoms_tried << " (" << stats.counters.default_atoms_skipped
            << " skipped), delayed " << stats.delayed_before << " -> " << stats.delayed_after << "]\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lexpe: compiler and lookup engine for default-inheritance lexicons"};
  app.require_subcommand(1);

  auto* compile = app.add_subcommand("compile", "compile lexicon sources into a .pel artifact");
  std::vector<std::string> sources;
  std::string output;
  bool no_generators = false, compile_json = false;
  compile->add_option("sources", sources, "lexicon source files (.ibl)")->required()->check(CLI::ExistingFile);
  compile->add_option("-o,--output", output, "artifact path")->required();
  compile->add_flag("--no-generators", no_generators, "do not expand generators");
  compile->add_flag("--json", compile_json, "print statistics as JSON");

  auto* lookup = app.add_subcommand("lookup", "look up word forms");
  std::string art_path, word, format = "summary", batch;
  lookup->add_option("artifact", art_path)->required()->check(CLI::ExistingFile);
  lookup->add_option("word", word);
  lookup->add_option("--format", format)->check(CLI::IsMember({"avm", "summary"}));
  lookup->add_option("--batch", batch, "file with one form per line")->check(CLI::ExistingFile);

  auto* stats = app.add_subcommand("stats", "print lexicon statistics");
  bool stats_json = false;
  stats->add_option("artifact", art_path)->required()->check(CLI::ExistingFile);
  stats->add_flag("--json", stats_json);

  auto* index = app.add_subcommand("index", "dump the word-form index");
  index->add_option("artifact", art_path)->required()->check(CLI::ExistingFile);

  auto* bench = app.add_subcommand("bench", "compare indexed and pe lookup times");
  std::string wordlist, csv_out, strategies = "indexed,pe";
  BenchOptions bopts;
  unsigned parallel = 0;
  bench->add_option("artifact", art_path)->required()->check(CLI::ExistingFile);
  bench->add_option("wordlist", wordlist)->required()->check(CLI::ExistingFile);
  bench->add_option("--reps", bopts.reps, "timed repetitions per word")->check(CLI::Range(1u, 100000u));
  bench->add_option("--warmup", bopts.warmup, "untimed repetitions per word");
  bench->add_option("--csv", csv_out, "write per-word rows as CSV");
  bench->add_option("--strategies", strategies, "comma list of indexed, pe, full");
  bench->add_option("--parallel", parallel, "also run lookups on N threads and compare results")
      ->expected(0, 1)
      ->default_str("4");

  auto* gen = app.add_subcommand("gen", "generate a synthetic lexicon");
  std::string profile_path, gen_out;
  std::uint64_t seed = 1;
  gen->add_option("--profile", profile_path, "JSON profile")->required()->check(CLI::ExistingFile);
  gen->add_option("--seed", seed);
  gen->add_option("-o,--output", gen_out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*compile) {
      std::vector<std::filesystem::path> files(sources.begin(), sources.end());
      CompileOptions opts;
      opts.generators = !no_generators;
      auto compiled = compile_files(files, opts);
      for (const auto& w : compiled.warnings) log_info(w);
      write_artifact(output, compiled.pe, compiled.index);
      const auto report = make_stats(compiled.pe, compiled.index, compiled.seconds);
      std::cout << (compile_json ? report.json() + "\n" : report.table());
      return 0;
    }
    if (*gen) {
      const auto profile = SyntheticProfile::from_json(read_file(profile_path));
      const auto text = gen_synthetic(profile, seed);
      if (gen_out.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(gen_out, std::ios::binary);
        out << text;
        if (!out) throw std::runtime_error("cannot write '" + gen_out + "'");
      }
      return 0;
    }

    const auto art = read_artifact(art_path);
    if (*lookup) {
      if (word.empty() && batch.empty()) throw CLI::ValidationError("lookup", "give a word or --batch");
      if (!word.empty()) print_lookup(art, word, format);
      if (!batch.empty())
        for (const auto& w : read_wordlist(read_file(batch))) print_lookup(art, w, format);
    } else if (*stats) {
      const auto report = make_stats(art.pe, art.index, std::numeric_limits<double>::quiet_NaN());
      std::cout << (stats_json ? report.json() + "\n" : report.table());
    } else if (*index) {
      std::cout << art.index.dump();
    } else if (*bench) {
      bopts.indexed = strategies.find("indexed") != std::string::npos;
      bopts.pe = strategies.find("pe") != std::string::npos;
      bopts.fullform = strategies.find("full") != std::string::npos;
      if (bench->count("--parallel")) bopts.threads = parallel ? parallel : 4;
      const auto report = run_bench(art.pe, art.index, read_wordlist(read_file(wordlist)), bopts);
      std::cout << report.table();
      if (bopts.threads) std::cout << "parallel lookups: " << (report.parallel_ok ? "consistent" : "MISMATCH") << '\n';
      if (!csv_out.empty()) {
        std::ofstream out(csv_out);
        out << report.csv();
        if (!out) throw std::runtime_error("cannot write '" + csv_out + "'");
      }
      for (const auto& r : report.rows)
        if (!r.agree) return 1;
      if (!report.parallel_ok) return 1;
    }
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const LexiconError& e) {
    if (e.diagnostics().empty()) {
      std::cerr << "lexpe: error: " << e.what() << '\n';
    } else {
      for (const auto& d : e.diagnostics()) std::cerr << d.str() << '\n';
    }
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "lexpe: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
