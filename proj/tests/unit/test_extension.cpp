#include "doctest.h"
#include "lexpe/extension.hpp"
#include "lexpe/form_index.hpp"
#include "support.hpp"

using namespace lexpe;

namespace {

ResolvedLexicon klein() { return ResolvedLexicon(load_lexicon(read_file(testing::data_path("klein.ibl")))); }

}  // namespace

TEST_CASE("klein has 18 strict elements in figure order") {
  auto lex = klein();
  const auto k = *lex.lexicon().find("klein");
  auto ext = extend_strict(lex, k);
  REQUIRE(ext.elements.size() == 18);
  const auto& ts = lex.types();
  const auto form = ts.parse_path("form");
  std::vector<std::string> forms;
  for (const auto& e : ext.elements) {
    auto f = e.literal_at(form);
    forms.push_back(f ? std::string(*f) : "?");
  }
  // no stems yet: the positive stem comes from the a_forms default
  for (const auto& f : forms) CHECK(f == "?");

  auto full = extend(lex, k);
  REQUIRE(full.elements.size() == 18);
  // CPL order: the a_forms variants are the outer loop here
  const std::vector<std::string> expect{
      "kleine",  "kleinere",  "kleinste",  "kleinem", "kleinerem", "kleinstem",
      "kleinen", "kleineren", "kleinsten", "kleiner", "kleinerer", "kleinster",
      "kleines", "kleineres", "kleinstes", "klein",   "kleiner",   "kleinsten"};
  for (std::size_t i = 0; i < 18; ++i) {
    CHECK(full.elements[i].literal_at(form) == expect[i]);
    CHECK(full.elements[i].literal_at(ts.parse_path("lemma")) == "klein");
    CHECK(full.elements[i].delayed_count() == 0);
  }
  REQUIRE(full.provenance.size() == 18);
  // positions: klein, a_decl, a_forms, a
  CHECK(full.provenance[0] == std::vector<std::uint32_t>{0, 0, 0, 0});
  CHECK(full.provenance[17] == std::vector<std::uint32_t>{0, 0, 7, 2});
}

TEST_CASE("strict extension edge cases") {
  testing::Lab lab;
  ResolvedLexicon lex(load_lexicon(testing::kHeader + R"(
class solo lexical : word main syn^cat = a.
class sup : word main syn^cat = n variant syn^cdegree = pos.
class clash lexical isa sup variant syn^cat = a variant syn^cat = n, syn^cdegree = comp variant mor^suffix = "e".
class nodefaults lexical isa sup.
)"));
  auto solo = extend_strict(lex, *lex.lexicon().find("solo"));
  REQUIRE(solo.elements.size() == 1);
  CHECK(solo.elements[0] == lab.fs("syn^cat = a"));

  auto clash = extend_strict(lex, *lex.lexicon().find("clash"));
  REQUIRE(clash.elements.size() == 1);
  CHECK(clash.elements[0] == lab.fs("syn^cat = n, syn^cdegree = pos, mor^suffix = \"e\""));
  CHECK(clash.provenance[0] == std::vector<std::uint32_t>{2, 0});

  const auto nd = *lex.lexicon().find("nodefaults");
  CHECK(set_equivalent(extend(lex, nd).elements, extend_strict(lex, nd).elements));
}

TEST_CASE("subclass default overrides the inherited one") {
  ResolvedLexicon lex(load_lexicon(testing::kHeader + R"(
class base : word default lemma = mor^stem.
class odd lexical isa base main mor^stem = "klein" default lemma = "special".
class plain lexical isa base main mor^stem = "klein".
)"));
  const auto& ts = lex.types();
  auto odd = extend(lex, *lex.lexicon().find("odd"));
  REQUIRE(odd.elements.size() == 1);
  CHECK(odd.elements[0].literal_at(ts.parse_path("lemma")) == "special");
  auto plain = extend(lex, *lex.lexicon().find("plain"));
  CHECK(plain.elements[0].literal_at(ts.parse_path("lemma")) == "klein");
}

TEST_CASE("located contributions") {
  testing::Lab lab;
  ResolvedLexicon lex(load_lexicon(testing::kHeader + R"(
class ag : agr variant case = nom variant case = dat, gend = fem.
class w lexical : word isa ag@syn^agr main syn^cat = n.
)"));
  auto ext = extend(lex, *lex.lexicon().find("w"));
  REQUIRE(ext.elements.size() == 2);
  CHECK(ext.elements[0] == lab.fs("syn^cat = n, syn^agr^case = nom"));
  CHECK(ext.elements[1] == lab.fs("syn^cat = n, syn^agr^case = dat, syn^agr^gend = fem"));
}

TEST_CASE("indexed lookup baseline") {
  auto c = compile_files({testing::data_path("klein.ibl")});
  const auto& lex = *c.pe.source;
  auto plain = c.index.plain(c.pe);
  const auto key = c.index.key();
  const auto& ts = lex.types();

  auto kleine = lookup_indexed("kleine", plain, lex, key);
  REQUIRE(kleine.size() == 1);
  CHECK(kleine[0].literal_at(ts.parse_path("mor^suffix")) == "e");
  auto deg = kleine[0].find(ts.parse_path("syn^cdegree"));
  REQUIRE(deg);
  CHECK(kleine[0].nodes()[*deg].atom.render(ts) == "pos");

  CHECK(lookup_indexed("kleiner", plain, lex, key).size() == 2);
  CHECK(lookup_indexed("xyz", plain, lex, key).empty());

  Counters a, b;
  lookup_indexed("kleiner", plain, lex, key, &a);
  lookup_indexed("kleiner", plain, lex, key, &b);
  CHECK(a.unifications == b.unifications);
  CHECK(a.unifications > 18);
}
