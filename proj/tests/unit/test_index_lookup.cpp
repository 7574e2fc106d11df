#include "doctest.h"
#include "lexpe/form_index.hpp"
#include "lexpe/lookup.hpp"
#include "support.hpp"

using namespace lexpe;

namespace {

std::string entry_text(std::span<const IndexEntry> es) {
  std::string out;
  for (const auto& e : es) {
    out += std::to_string(e.cls) + ":";
    for (auto i : e.s) out += std::to_string(i) + ".";
    out += " ";
  }
  return out;
}

}  // namespace

TEST_CASE("klein index matches the figure") {
  auto c = compile_files({testing::data_path("klein.ibl")});
  const auto& idx = c.index;
  CHECK(idx.size() == 16);
  CHECK(entry_text(idx.lookup("kleine")) == "466:1. ");
  CHECK(entry_text(idx.lookup("klein")) == "466:6. ");
  CHECK(entry_text(idx.lookup("kleiner")) == "466:4.12. ");
  CHECK(entry_text(idx.lookup("kleinsten")) == "466:15.18. ");
  CHECK(entry_text(idx.lookup("kleinerem")) == "466:8. ");
  CHECK(idx.lookup("xyz").empty());
  CHECK(idx.lookup("").empty());

  const std::string dump =
      "klein\t466,{6}\n"
      "kleine\t466,{1}\n"
      "kleinem\t466,{2}\n"
      "kleinen\t466,{3}\n"
      "kleiner\t466,{4,12}\n"
      "kleinere\t466,{7}\n"
      "kleinerem\t466,{8}\n"
      "kleineren\t466,{9}\n"
      "kleinerer\t466,{10}\n"
      "kleineres\t466,{11}\n"
      "kleines\t466,{5}\n"
      "kleinste\t466,{13}\n"
      "kleinstem\t466,{14}\n"
      "kleinsten\t466,{15,18}\n"
      "kleinster\t466,{16}\n"
      "kleinstes\t466,{17}\n";
  CHECK(idx.dump() == dump);
  CHECK(idx.forms().front() == "klein");
}

TEST_CASE("homographs from two classes share a key") {
  auto text = read_file(testing::data_path("klein.ibl")) + R"(
class kleinst lexical id 9 isa a_decl main mor^stem = "kleinst".
class lit lexical id 3 : word main form = "", syn^cat = n.
)";
  auto c = compile_text(text);
  auto e = c.index.lookup("kleinste");
  REQUIRE(e.size() == 2);
  CHECK(e[0].cls == 9);
  CHECK(e[0].s == std::vector<std::uint32_t>{1});
  CHECK(e[1].cls == 466);
  CHECK(e[1].s == std::vector<std::uint32_t>{13});
  CHECK(lookup_pe("kleinste", c.pe, c.index).size() == 2);
  // a literally empty form is indexed like any other
  REQUIRE(c.index.lookup("").size() == 1);
  CHECK(lookup_pe("", c.pe, c.index).size() == 1);
  auto plain = c.index.plain(c.pe);
  CHECK(plain.at("kleinste").size() == 2);
}

TEST_CASE("index completeness and no stale entries") {
  auto c = compile_files({testing::data_path("table2.ibl")});
  const auto& ts = c.pe.types();
  const auto key = c.index.key();
  for (const auto& cls : c.pe.classes) {
    for (const auto& done : complete_all(c.pe, cls)) {
      auto w = done.fs.literal_at(key);
      REQUIRE(w);
      bool found = false;
      for (const auto& e : c.index.lookup(*w))
        if (e.cls == cls.id)
          for (auto i : e.s) found |= i == done.pf_index + 1;
      CHECK_MESSAGE(found, std::string(*w));
    }
  }
  for (const auto& form : c.index.forms())
    for (const auto& e : c.index.lookup(form)) {
      CHECK_FALSE(e.s.empty());
      const auto* cls = c.pe.find(e.cls);
      REQUIRE(cls);
      std::vector<std::uint32_t> sel;
      for (auto i : e.s) sel.push_back(i - 1);
      for (const auto& done : complete(c.pe, *cls, sel)) CHECK(done.fs.literal_at(key) == form);
    }
  (void)ts;
}

TEST_CASE("lookup kleine and kleiner") {
  testing::Lab lab(read_file(testing::data_path("klein.ibl")));
  auto c = compile_files({testing::data_path("klein.ibl")});
  LookupStats stats;
  auto r = lookup_pe("kleine", c.pe, c.index, &stats);
  REQUIRE(r.size() == 1);
  const auto& f = r[0];
  CHECK(f.literal_at(lab.path("form")) == "kleine");
  CHECK(f.literal_at(lab.path("lemma")) == "klein");
  CHECK(f.literal_at(lab.path("mor^comp_stem")) == "kleiner");
  CHECK(f.delayed_count() == 0);
  CHECK(unify(f, lab.fs("syn^cat = a, syn^cdegree = pos, syn^use = attr")) == f);
  CHECK(stats.elements == 1);
  CHECK(stats.delayed_before > 0);
  CHECK(stats.delayed_after == 0);
  // lemma and stem are one node
  CHECK(f.find(lab.path("lemma")) == f.find(lab.path("mor^stem")));

  auto er = lookup_pe("kleiner", c.pe, c.index);
  REQUIRE(er.size() == 2);
  CHECK(lookup_pe("xyz", c.pe, c.index).empty());
}

TEST_CASE("lookup work bound") {
  auto c = compile_files({testing::data_path("klein.ibl")});
  LookupStats stats;
  lookup_pe("kleiner", c.pe, c.index, &stats);
  const auto* k = c.pe.find(466);
  // |S| * (1 + |V_c|) structure unifications before the defaults
  CHECK(stats.counters.unifications <= 2 * (1 + k->variants.size()));
}

TEST_CASE("constrain_unify agrees with unify") {
  testing::Lab lab;
  std::vector<FeatureStructure> fs{
      lab.empty(),
      lab.fs("syn^cat = a, concat(mor^a_stem, mor^suffix, form)"),
      lab.fs("mor^stem = \"klein\", lemma = mor^stem"),
      lab.fs("mor^a_stem = \"klein\", mor^suffix = \"e\""),
      lab.fs("form = \"kleine\""),
      lab.fs("syn^cat = n"),
      lab.fs("syn^agr^case = nom or acc, syn^agr^gend = not masc"),
      lab.fs("syn^agr^case = dat"),
      lab.fs("mor^a_stem = mor^stem, mor^suffix = \"\""),
      lab.fs("form = lemma, lemma = mor^t"),
      lab.fs("concat(mor^stem, \"er\", mor^t), lemma = mor^t"),
  };
  for (const auto& a : fs)
    for (const auto& b : fs) {
      auto u = unify(a, b);
      auto cu = constrain_unify(a, b);
      REQUIRE(u.has_value() == cu.has_value());
      if (u) CHECK(*u == *cu);
    }
  CHECK(constrain_unify(fs[1], lab.empty()) == fs[1]);
  CHECK_FALSE(constrain_unify(fs[1], fs[5]));
}

TEST_CASE("dangling index entries are a consistency fault") {
  auto c = compile_files({testing::data_path("klein.ibl")});
  FormIndex bad(c.index.key());
  bad.add("ghost", 999, 1);
  CHECK_THROWS_AS(lookup_pe("ghost", c.pe, bad), std::runtime_error);
  FormIndex range(c.index.key());
  range.add("ghost", 466, 19);
  CHECK_THROWS_AS(lookup_pe("ghost", c.pe, range), std::runtime_error);
}
