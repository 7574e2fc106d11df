#include <cmath>
#include <sstream>

#include "doctest.h"
#include "lexpe/bench.hpp"
#include "lexpe/lookup.hpp"
#include "lexpe/stats.hpp"
#include "lexpe/synthetic.hpp"
#include "support.hpp"

using namespace lexpe;

TEST_CASE("bench CSV has the fixed columns") {
  auto c = compile_files({testing::data_path("klein.ibl")});
  BenchOptions o;
  o.reps = 3;
  o.warmup = 0;
  auto rep = run_bench(c.pe, c.index, {"kleine", "kleiner", "xyz"}, o);
  REQUIRE(rep.rows.size() == 2);
  CHECK(rep.missing == std::vector<std::string>{"xyz"});
  CHECK(rep.average.words == 2);
  std::istringstream in(rep.csv());
  std::string line;
  std::getline(in, line);
  CHECK(line == "word,n_s,n_fs,n_afs,n_dp,t_indexed_us,t_pe_us,speedup");
  std::getline(in, line);
  CHECK(line.rfind("kleine,3,18,", 0) == 0);
  std::size_t commas = 0;
  for (char ch : line) commas += ch == ',';
  CHECK(commas == 7);
  std::getline(in, line);
  CHECK(line.rfind("kleiner,", 0) == 0);
  std::getline(in, line);
  CHECK(line.rfind("average,", 0) == 0);
  for (const auto& r : rep.rows) {
    CHECK(r.agree);
    CHECK(r.speedup == doctest::Approx(r.t_indexed_us / r.t_pe_us));
  }
  CHECK(rep.average.speedup == doctest::Approx(rep.average.t_indexed_us / rep.average.t_pe_us));
  CHECK(rep.table().find("not in index: xyz") != std::string::npos);
}

TEST_CASE("results do not depend on repetitions") {
  auto c = compile_files({testing::data_path("table2.ibl")});
  BenchOptions one, many;
  one.reps = 1;
  one.warmup = 0;
  many.reps = 101;
  many.fullform = true;
  many.threads = 2;
  const std::vector<std::string> words{"wegen", "Kreises"};
  auto a = run_bench(c.pe, c.index, words, one);
  auto b = run_bench(c.pe, c.index, words, many);
  CHECK(b.parallel_ok);
  for (std::size_t i = 0; i < words.size(); ++i) {
    CHECK(a.rows[i].results == b.rows[i].results);
    CHECK(a.rows[i].agree);
    CHECK(b.rows[i].agree);
    CHECK(b.rows[i].t_full_us > 0);
  }
}

TEST_CASE("word metrics of the benchmark models") {
  auto c = compile_files({testing::data_path("table2.ibl")});
  struct Row {
    const char* word;
    std::size_t n_s, n_fs, n_dp;
  };
  for (auto row : {Row{"wegen", 1, 4, 1}, Row{"Kreises", 2, 18, 1}, Row{"schönste", 4, 90, 2},
                   Row{"laufe", 7, 648, 1}}) {
    auto m = word_metrics(c.pe, c.index, row.word);
    CHECK(m.found);
    CHECK_MESSAGE(m.n_s == row.n_s, row.word);
    CHECK_MESSAGE(m.n_fs == row.n_fs, row.word);
    CHECK_MESSAGE(m.n_dp == row.n_dp, row.word);
    CHECK(m.pe_n_fs < m.n_fs);
  }
  CHECK_FALSE(word_metrics(c.pe, c.index, "xyz").found);
}

TEST_CASE("stats") {
  auto c = compile_files({testing::data_path("klein.ibl")});
  auto s = make_stats(c.pe, c.index, 0.5);
  CHECK(s.n_l == 1);
  CHECK(s.n_n == 3);
  CHECK(s.n_cpl == 1);
  CHECK(s.n_forms == 16);
  CHECK(s.size_ratio == doctest::Approx(double(s.n_lfs_pe) / double(s.n_lfs_original)));
  CHECK(s.json().find("\"n_cpl\": 1") != std::string::npos);
  auto nan = make_stats(c.pe, c.index, std::nan(""));
  CHECK(nan.json().find("\"t_e\": null") != std::string::npos);
  CHECK(nan.table().find("n_cpl") != std::string::npos);
}

TEST_CASE("synthetic lexicons") {
  SyntheticProfile p;
  p.lexical = 10;
  CHECK(gen_synthetic(p, 1) == gen_synthetic(p, 1));
  CHECK(gen_synthetic(p, 1) != gen_synthetic(p, 2));

  p.lexical = 120;
  p.paradigms = 7;
  auto c = compile_text(gen_synthetic(p, 3));
  CHECK(c.pe.meta.n_l == 120);
  CHECK(c.pe.meta.n_cpl == 7);
  CHECK(c.warnings.empty());

  SyntheticProfile none;
  none.lexical = 0;
  auto e = compile_text(gen_synthetic(none, 1));
  CHECK(e.pe.classes.empty());
  CHECK(e.pe.results.empty());

  auto q = SyntheticProfile::from_json(p.to_json());
  CHECK(q.lexical == 120);
  CHECK(q.paradigms == 7);
  CHECK_THROWS(SyntheticProfile::from_json(R"({"variants": 0})"));
  CHECK_THROWS(SyntheticProfile::from_json("not json"));
  auto shipped = SyntheticProfile::from_json(read_file(testing::data_path("profile_small.json")));
  CHECK(shipped.lexical == 200);
}

TEST_CASE("pe size grows with distinct tails, not with lexical classes") {
  auto growth = [](unsigned lexical, unsigned paradigms) {
    SyntheticProfile p;
    p.lexical = lexical;
    p.paradigms = paradigms;
    p.default_conflicts = 0;
    auto pe = pe_compile(load_lexicon(gen_synthetic(p, 5)));
    return static_cast<long>(pe.meta.n_lfs_pe) - static_cast<long>(pe.meta.n_lfs_original);
  };
  const auto base = growth(100, 10);
  CHECK(growth(400, 10) == base);
  CHECK(growth(400, 20) > base);
}

TEST_CASE("wordlists") {
  CHECK(read_wordlist("a\n\nb\r\n  c  \n") == std::vector<std::string>{"a", "b", "c"});
  CHECK(read_wordlist("").empty());
}
