#include "doctest.h"
#include "lexpe/lookup.hpp"
#include "lexpe/pe.hpp"
#include "support.hpp"

using namespace lexpe;

namespace {

const char* kNominal = R"(
class adj : word
  main syn^cat = a, concat(mor^stem, mor^suffix, form)
  default gener = "nominalize"
  variant mor^suffix = "" variant mor^suffix = "e".
class noun : word
  main syn^cat = n, concat(mor^stem, mor^suffix, form)
  variant mor^suffix = "e", syn^agr^case = nom
  variant mor^suffix = "en", syn^agr^case = dat.
class klein lexical id 466 isa adj main mor^stem = "klein".
generator nominalize : word isa noun
  map mor^stem -> mor^stem, mor^stem -> lemma
  main syn^agr^gend = neut.
)";

// Every lexical class completed through its pe-result equals its extension.
void check_against_oracle(const PeLexicon& pe) {
  for (const auto& c : pe.classes) {
    FeatureStructureSet completed;
    for (const auto& x : complete_all(pe, c)) completed.insert(x.fs);
    auto oracle = extend(*pe.source, c.cls).elements;
    CHECK_MESSAGE(set_equivalent(completed, oracle), c.name);
  }
}

}  // namespace

TEST_CASE("klein pe-result") {
  auto pe = pe_compile(load_lexicon(read_file(testing::data_path("klein.ibl"))));
  REQUIRE(pe.results.size() == 1);
  REQUIRE(pe.classes.size() == 1);
  const auto& r = pe.results[0];
  CHECK(r.p_f.size() == 18);
  REQUIRE(r.p_d.size() == 2);
  const auto& ts = pe.types();
  // p_d = <d_a_forms, lemma = mor^stem>
  CHECK(r.p_d_atoms[0].size() == 3);
  REQUIRE(r.p_d_atoms[1].size() == 1);
  CHECK(r.p_d_atoms[1][0].kind == AtomicDefault::Kind::share);
  CHECK(ts.path_string(r.p_d_atoms[1][0].path) == "lemma");
  // the a_decl main is folded in, the concat is still waiting for a stem
  for (const auto& f : r.p_f) {
    CHECK(f.delayed_count() >= 1);
    auto p0 = f.find(ts.parse_path("mor^pred_0"));
    REQUIRE(p0);
    CHECK(f.nodes()[*p0].atom.render(ts) == "+");
  }
  const auto& k = pe.classes[0];
  CHECK(k.id == 466);
  CHECK(k.name == "klein");
  CHECK(k.pe_result == 0);
  CHECK(pe.find(466) == &k);
  CHECK(pe.find("klein") == &k);
  CHECK(pe.find(1) == nullptr);
  CHECK(pe.meta.n_l == 1);
  CHECK(pe.meta.n_n == 3);
  CHECK(pe.meta.n_cpl == 1);
  check_against_oracle(pe);
}

TEST_CASE("pe-results are shared by classes with the same tail") {
  auto text = read_file(testing::data_path("klein.ibl")) + R"(
class schoen lexical isa a_decl main mor^stem = "schön".
class solo lexical : word main mor^stem = "solo".
class solo2 lexical : word main mor^stem = "solo2".
class ag : agr main case = nom.
class solo3 lexical : agr main gend = fem.
class odd lexical isa a_forms main mor^stem = "odd".
)";
  auto pe = pe_compile(load_lexicon(text));
  CHECK(pe.classes.size() == 6);
  // klein+schoen, solo+solo2, solo3 (other type), odd
  CHECK(pe.results.size() == 4);
  CHECK(pe.find("klein")->pe_result == pe.find("schoen")->pe_result);
  CHECK(pe.find("solo")->pe_result == pe.find("solo2")->pe_result);
  CHECK(pe.find("solo")->pe_result != pe.find("solo3")->pe_result);
  const auto& empty_tail = pe.result_of(*pe.find("solo"));
  REQUIRE(empty_tail.p_f.size() == 1);
  CHECK(empty_tail.p_f[0].is_empty());
  CHECK(empty_tail.p_d.empty());
  CHECK(pe.meta.n_cpl == 4);
  check_against_oracle(pe);
}

TEST_CASE("size accounting") {
  auto pe = pe_compile(load_lexicon(read_file(testing::data_path("klein.ibl"))));
  // a: main, default, 3 variants; a_forms: default, 8 variants; a_decl: main; klein: main
  CHECK(pe.meta.n_lfs_original == 5 + 9 + 1 + 1);
  // klein residue 1, p_f 18, p_d 2
  CHECK(pe.meta.n_lfs_pe == 1 + 18 + 2);
}

TEST_CASE("generators derive new lexical classes") {
  testing::Lab lab;
  auto pe = pe_compile(load_lexicon(testing::kHeader + kNominal));
  REQUIRE(pe.classes.size() == 2);
  const auto* n = pe.find("klein.nominalize");
  REQUIRE(n);
  CHECK(n->id == 467);
  CHECK(n->depth == 1);
  // hand-applied mapping on any klein element: stem copied twice, gend fixed
  CHECK(n->main == lab.fs("mor^stem = \"klein\", lemma = \"klein\", syn^agr^gend = neut"));
  CHECK(pe.meta.n_generated == 1);
  CHECK(pe.meta.n_l == 2);
  const auto& r = pe.result_of(*n);
  CHECK(r.p_f.size() == 2);
  check_against_oracle(pe);

  auto idx = build_index(pe);
  auto res = lookup_pe("kleinen", pe, idx);
  REQUIRE(res.size() == 1);
  CHECK(res[0].literal_at(lab.path("lemma")) == "klein");

  auto off = pe_compile(load_lexicon(testing::kHeader + kNominal), CompileOptions{false, 8});
  CHECK(off.classes.size() == 1);
}

TEST_CASE("no generator trigger leaves the lexicon alone") {
  auto text = testing::kHeader + kNominal;
  text.replace(text.find("default gener = \"nominalize\""), 28, "default lemma = mor^stem    ");
  auto pe = pe_compile(load_lexicon(text));
  CHECK(pe.classes.size() == 1);
  CHECK(pe.meta.n_generated == 0);
}

TEST_CASE("delayed generators are not expanded") {
  auto text = testing::kHeader + kNominal;
  text.replace(text.find("generator nominalize"), 20, "generator nominalize delayed");
  auto pe = pe_compile(load_lexicon(text));
  CHECK(pe.classes.size() == 1);
}

TEST_CASE("self-triggering generator hits the depth limit") {
  auto text = testing::kHeader + R"(
class x lexical : word main mor^stem = "x", gener = "loop".
generator loop : word map mor^stem -> mor^stem main gener = "loop".
)";
  try {
    pe_compile(load_lexicon(text));
    FAIL("expected a depth-limit error");
  } catch (const LexiconError& e) {
    const std::string what = e.what();
    CHECK(what.find("'loop'") != std::string::npos);
    CHECK(what.find("8") != std::string::npos);
  }
  try {
    pe_compile(load_lexicon(text), CompileOptions{true, 3});
    FAIL("expected a depth-limit error");
  } catch (const LexiconError& e) {
    CHECK(std::string(e.what()).find("limit of 3") != std::string::npos);
  }
}
