#include "doctest.h"
#include "lexpe/hierarchy.hpp"
#include "support.hpp"

using namespace lexpe;

namespace {

std::vector<std::string> cpl_names(const Lexicon& lex, const std::string& cls) {
  std::vector<std::string> out;
  for (const auto& e : compute_cpl(*lex.find(cls), lex).list) out.push_back(lex.classes[e.cls].name);
  return out;
}

using Names = std::vector<std::string>;

}  // namespace

TEST_CASE("klein chain") {
  auto lex = load_lexicon(read_file(testing::data_path("klein.ibl")));
  CHECK(cpl_names(lex, "klein") == Names{"klein", "a_decl", "a_forms", "a"});
  auto cpl = compute_cpl(*lex.find("klein"), lex);
  CHECK(cpl.key().size() == 3);
  CHECK(cpl.list[0].cls == *lex.find("klein"));
  CHECK(cpl_names(lex, "a") == Names{"a"});
}

TEST_CASE("diamond and the classic pie hierarchy") {
  auto lex = load_lexicon(testing::kHeader + R"(
class A : word.
class B isa A.
class C isa A.
class D isa B, C.
class food : word.
class fruit isa food.
class spice isa food.
class apple isa fruit.
class cinnamon isa spice.
class pie isa apple, cinnamon.
)");
  CHECK(cpl_names(lex, "D") == Names{"D", "B", "C", "A"});
  CHECK(cpl_names(lex, "pie") == Names{"pie", "apple", "fruit", "cinnamon", "spice", "food"});
}

TEST_CASE("raw linearization") {
  // 0 isa 1, 2; 1 isa 3; 2 isa 3
  std::vector<std::vector<std::uint32_t>> g{{1, 2}, {3}, {3}, {}};
  CHECK(clos_linearize(0, g) == std::vector<std::uint32_t>{0, 1, 2, 3});
  // 0 isa 1, 2; 3 isa 2, 1; 4 isa 0, 3: contradicting local orders
  std::vector<std::vector<std::uint32_t>> bad{{1, 2}, {}, {}, {2, 1}, {0, 3}};
  CHECK_FALSE(clos_linearize(4, bad));
  std::vector<std::vector<std::uint32_t>> cyc{{1}, {0}};
  CHECK_THROWS_AS(clos_linearize(0, cyc), HierarchyError);
}

TEST_CASE("unlinearizable hierarchy is an error") {
  auto lex = load_lexicon(testing::kHeader + R"(
class A : word.
class B : word.
class X isa A, B.
class Y isa B, A.
class Z isa X, Y.
)");
  try {
    compute_cpl(*lex.find("Z"), lex);
    FAIL("expected a linearization error");
  } catch (const HierarchyError& e) {
    CHECK(e.kind() == HierarchyError::Kind::linearization);
  }
}

TEST_CASE("locating paths compose down the hierarchy") {
  testing::Lab lab;
  auto lex = load_lexicon(testing::kHeader + R"(
class ag : agr main case = dat.
class sy : syn isa ag@agr.
class w : word isa sy@syn.
class v : word isa ag@syn^agr.
)");
  auto cpl = compute_cpl(*lex.find("w"), lex);
  REQUIRE(cpl.list.size() == 3);
  CHECK(cpl.list[1].at == lab.path("syn"));
  CHECK(cpl.list[2].at == lab.path("syn^agr"));
  CHECK(cpl.list[2].cls == *lex.find("ag"));
  // same class at the same location: same key tail entry
  CHECK(compute_cpl(*lex.find("v"), lex).list[1] == cpl.list[2]);
}

TEST_CASE("one class at two locations is rejected") {
  auto lex = load_lexicon(testing::kHeader + R"(
type two = [l: agr, r: agr].
class ag : agr main case = dat.
class L : two isa ag@l.
class both : two isa L, ag@r.
class same : two isa L, ag@l.
)");
  try {
    compute_cpl(*lex.find("both"), lex);
    FAIL("expected a location error");
  } catch (const HierarchyError& e) {
    CHECK(e.kind() == HierarchyError::Kind::location);
    CHECK(std::string(e.what()).find("ag") != std::string::npos);
  }
  CHECK(compute_cpl(*lex.find("same"), lex).list.size() == 3);
}
