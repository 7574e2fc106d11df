#include "doctest.h"
#include "lexpe/fs_set.hpp"
#include "support.hpp"

using namespace lexpe;

namespace {

using Slots = std::vector<std::optional<std::string_view>>;

PredicateOutcome concat(Slots s) { return solve_concat(s); }

}  // namespace

TEST_CASE("unify: unit, set intersection, negation") {
  testing::Lab lab;
  auto f = lab.fs("syn^cat = a, mor^stem = \"klein\", lemma = mor^stem");
  CHECK(unify(f, lab.empty()) == f);
  CHECK(unify(lab.empty(), f) == f);

  auto r = unify(lab.fs("syn^agr^case = nom or acc"), lab.fs("syn^agr^case = not acc"));
  REQUIRE(r);
  CHECK(*r == lab.fs("syn^agr^case = nom"));

  auto fem = unify(lab.fs("syn^agr^gend = fem"), lab.fs("syn^agr^gend = not masc"));
  REQUIRE(fem);
  CHECK(*fem == lab.fs("syn^agr^gend = fem"));
  CHECK_FALSE(unify(lab.fs("syn^agr^gend = masc"), lab.fs("syn^agr^gend = not masc")));
}

TEST_CASE("unify merges sharing") {
  testing::Lab lab;
  auto r = unify(lab.fs("lemma = mor^stem"), lab.fs("mor^stem = \"klein\""));
  REQUIRE(r);
  CHECK(r->literal_at(lab.path("lemma")) == "klein");
  CHECK_FALSE(unify(*r, lab.fs("lemma = \"gross\"")));
  // sharing with two different literals on each side
  CHECK_FALSE(unify(lab.fs("lemma = mor^stem, lemma = \"a\""), lab.fs("mor^stem = \"b\"")));
}

TEST_CASE("type clash fails") {
  testing::Lab lab;
  auto a = FeatureStructure::empty(lab.type("word"));
  auto b = FeatureStructure::empty(lab.type("mor"));
  CHECK_FALSE(unify(a, b));
}

TEST_CASE("concat solver modes") {
  CHECK(concat({"klein", "e", std::nullopt}).status == PredicateStatus::solved);
  CHECK(concat({"klein", "e", std::nullopt}).bindings.front().second == "kleine");
  CHECK(concat({std::nullopt, "e", std::nullopt}).status == PredicateStatus::delayed);
  CHECK(concat({"klein", "e", "kleinere"}).status == PredicateStatus::failure);
  CHECK(concat({"klein", "e", "kleine"}).status == PredicateStatus::solved);

  auto mid = concat({"klein", std::nullopt, "kleinste"});
  REQUIRE(mid.status == PredicateStatus::solved);
  CHECK(mid.bindings.front() == std::pair<std::size_t, std::string>{1, "ste"});
  CHECK(concat({"gross", std::nullopt, "kleinste"}).status == PredicateStatus::failure);

  auto head = concat({std::nullopt, "ste", "kleinste"});
  REQUIRE(head.status == PredicateStatus::solved);
  CHECK(head.bindings.front() == std::pair<std::size_t, std::string>{0, "klein"});
  CHECK(concat({std::nullopt, "er", "kleinste"}).status == PredicateStatus::failure);
  CHECK(concat({std::nullopt, std::nullopt, "kleinste"}).status == PredicateStatus::delayed);
}

TEST_CASE("concat inside structures: delayed, woken, failing") {
  testing::Lab lab;
  auto f = lab.fs("concat(mor^stem, mor^suffix, form)");
  CHECK(f.delayed_count() == 1);
  auto g = unify(f, lab.fs("mor^suffix = \"e\""));
  REQUIRE(g);
  CHECK(g->delayed_count() == 1);
  auto h = unify(*g, lab.fs("mor^stem = \"klein\""));
  REQUIRE(h);
  CHECK(h->delayed_count() == 0);
  CHECK(h->literal_at(lab.path("form")) == "kleine");
  CHECK_FALSE(unify(*g, lab.fs("mor^stem = \"klein\", form = \"kleinere\"")));

  // backward mode through unification
  auto b = unify(*g, lab.fs("form = \"kleine\""));
  REQUIRE(b);
  CHECK(b->literal_at(lab.path("mor^stem")) == "klein");
  CHECK(b->delayed_count() == 0);

  // constants in argument positions
  auto c = lab.fs("mor^stem = \"klein\", concat(mor^stem, \"er\", mor^t)");
  CHECK(c.delayed_count() == 0);
  CHECK(c.literal_at(lab.path("mor^t")) == "kleiner");
}

TEST_CASE("chained concats wake in cascade") {
  testing::Lab lab;
  auto f = lab.fs("concat(mor^stem, mor^suffix, mor^t), concat(mor^t, \"st\", form)");
  CHECK(f.delayed_count() == 2);
  auto g = unify(f, lab.fs("mor^stem = \"klein\", mor^suffix = \"\""));
  REQUIRE(g);
  CHECK(g->delayed_count() == 0);
  CHECK(g->literal_at(lab.path("form")) == "kleinst");
}

TEST_CASE("equivalence ignores how structures were built") {
  testing::Lab lab;
  auto a = lab.fs("lemma = mor^stem, mor^stem = \"x\", syn^cat = a");
  auto b = lab.fs("syn^cat = a, mor^stem = \"x\", mor^stem = lemma");
  CHECK(a == b);
  CHECK(a.hash() == b.hash());
  CHECK_FALSE(a == lab.fs("lemma = mor^stem, mor^stem = \"x\", syn^cat = a, syn^cdegree = pos"));
  // a shared pair differs from the same values without sharing
  CHECK_FALSE(lab.fs("lemma = mor^stem") == lab.fs("lemma = \"\""));
  CHECK_FALSE(lab.fs("lemma = mor^stem, lemma = \"x\"") == lab.fs("lemma = \"x\", mor^stem = \"x\""));
}

TEST_CASE("set_unify") {
  testing::Lab lab;
  auto f = lab.fs("syn^cat = a");
  CHECK(set_equivalent(set_unify({f}, {lab.empty()}), {f}));
  CHECK(set_unify({lab.fs("syn^cat = a")}, {lab.fs("syn^cat = n")}).empty());

  FeatureStructureSet degrees{lab.fs("syn^cdegree = pos"), lab.fs("syn^cdegree = comp"),
                              lab.fs("syn^cdegree = sup")};
  FeatureStructureSet suffixes;
  for (auto s : {"e", "em", "en", "er", "es", ""}) suffixes.insert(lab.fs(std::string("mor^suffix = \"") + s + "\""));
  auto all = set_unify(degrees, suffixes);
  CHECK(all.size() == 18);
  // outer loop is the left operand
  CHECK(all[0] == lab.fs("syn^cdegree = pos, mor^suffix = \"e\""));
  CHECK(all[6] == lab.fs("syn^cdegree = comp, mor^suffix = \"e\""));

  Counters c;
  set_unify(degrees, suffixes, &c);
  CHECK(c.unifications == 18);
}

TEST_CASE("sets drop duplicates and keep order") {
  testing::Lab lab;
  FeatureStructureSet s;
  CHECK(s.insert(lab.fs("syn^cat = a")));
  CHECK(s.insert(lab.fs("syn^cat = n")));
  CHECK_FALSE(s.insert(lab.fs("syn^cat = a")));
  CHECK(s.size() == 2);
  CHECK(s.index_of(lab.fs("syn^cat = n")) == 1u);
  FeatureStructureSet t{lab.fs("syn^cat = n"), lab.fs("syn^cat = a")};
  CHECK(set_equivalent(s, t));
}

TEST_CASE("locate embeds at a path") {
  testing::Lab lab;
  auto agr = lab.fs("case = nom, gend = fem", "agr");
  auto w = locate(lab.ts(), agr, lab.type("word"), lab.path("syn^agr"));
  CHECK(w == lab.fs("syn^agr^case = nom, syn^agr^gend = fem"));
  CHECK(locate(lab.ts(), agr, lab.type("agr"), {}) == agr);
  CHECK_THROWS_AS(locate(lab.ts(), agr, lab.type("word"), lab.path("mor")), TypeError);

  auto syn = locate(lab.ts(), agr, lab.type("syn"), lab.path("agr"));
  CHECK(locate(lab.ts(), locate(lab.ts(), agr, lab.type("syn"), lab.path("agr")), lab.type("word"),
               lab.path("syn")) == locate(lab.ts(), agr, lab.type("word"), lab.path("syn^agr")));
  CHECK(syn.type() == lab.type("syn"));
}

TEST_CASE("first paths, atomic size and rendering") {
  testing::Lab lab;
  auto f = lab.fs("lemma = mor^stem, syn^cat = a, concat(mor^stem, mor^suffix, form)");
  // leaf syn^cat, one coreference, one predicate
  CHECK(f.atomic_size() == 3);
  auto text = render_avm(lab.ts(), f);
  CHECK(text.find("concat(") != std::string::npos);
  CHECK(text.find("% delayed") != std::string::npos);
  CHECK(lab.empty().atomic_size() == 0);
  CHECK(lab.empty().is_empty());
}

TEST_CASE("builder rejects ill-typed paths") {
  testing::Lab lab;
  FsBuilder b(lab.ts(), lab.type("word"));
  CHECK_THROWS_AS(b.constrain({*lab.ts().find_feature("case")}, AtomConstraint::literal("x")), TypeError);
  CHECK_THROWS_AS(lab.ts().parse_path("syn^nope"), TypeError);
}
