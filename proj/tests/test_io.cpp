#include <doctest.h>

#include <string>

#include "cpt/ci.hpp"
#include "cpt/io.hpp"
#include "cpt/model.hpp"
#include "cpt/oracle.hpp"
#include "cpt/poset.hpp"
#include "helpers.hpp"

using cpt::CptModel;
using cpt::HostTree;
using cpt::Poset;

namespace {

Poset fence4() {
  return Poset::from_pairs({"1", "2", "3", "4"},
                           {{"1", "2"}, {"3", "2"}, {"3", "4"}});
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("poset text survives a print and parse round trip") {
  for (int n = 1; n <= 4; ++n)
    for (const Poset& p : cpt::enumerate_posets(n))
      CHECK(cpt::parse_poset(cpt::print_poset(p)) == p);
  CHECK(cpt::parse_poset(cpt::print_poset(fence4())) == fence4());
}

TEST_CASE("poset parser closes relations and skips comments") {
  Poset p = cpt::parse_poset(
      "# three stacked elements\n"
      "elements: a b c   # ground set\n"
      "a < b\n"
      "\n"
      "b < c\n");
  CHECK(p.less("a", "c"));
  CHECK(p == Poset::chain({"a", "b", "c"}));
}

TEST_CASE("poset parser reports position on bad input") {
  CHECK_THROWS_AS(cpt::parse_poset(""), cpt::ParseError);
  CHECK_THROWS_AS(cpt::parse_poset("order: a b\n"), cpt::ParseError);
  try {
    cpt::parse_poset("elements: a b\n# filler\na b\n");
    FAIL("expected a parse error");
  } catch (const cpt::ParseError& e) {
    CHECK(e.line == 3);
    CHECK(e.column == 1);
    CHECK(std::string(e.what()).find("x < y") != std::string::npos);
  }
  CHECK_THROWS_AS(cpt::parse_poset("elements: a\na < b\n"), cpt::UnknownElementError);
}

TEST_CASE("model text survives a print and parse round trip") {
  CptModel bowtie(testgen::line_tree(6),
                  {{"a", {2, 3}}, {"b", {2, 3}}, {"c", {1, 4}}, {"d", {1, 4}}});
  std::string text = cpt::print_model(bowtie);
  CHECK(cpt::print_model(cpt::parse_model(text)) == text);

  // negative vertex ids appear in interval built models
  CptModel grid = cpt::ci_to_cpt(
      cpt::ci_model_from_realizer(fence4(), *cpt::ci_recognize(fence4())));
  std::string grid_text = cpt::print_model(grid);
  CptModel back = cpt::parse_model(grid_text);
  CHECK(cpt::print_model(back) == grid_text);
  CHECK(cpt::realized_poset(back) == fence4());
}

TEST_CASE("a bare id stands for the one vertex tree") {
  CptModel m = cpt::parse_model("tree: 7\npath x: 7 7\n");
  CHECK(m.tree().vertex_count() == 1);
  CHECK(m.path_of("x").trivial());
  CHECK(cpt::print_model(cpt::parse_model(cpt::print_model(m))) == cpt::print_model(m));
}

TEST_CASE("model parser reports position on bad input") {
  CHECK_THROWS_AS(cpt::parse_model(""), cpt::ParseError);
  CHECK_THROWS_AS(cpt::parse_model("elements: a\n"), cpt::ParseError);
  CHECK_THROWS_AS(cpt::parse_model("tree: 0 1\n"), cpt::ParseError);
  CHECK_THROWS_AS(cpt::parse_model("tree: 0-x\n"), cpt::ParseError);
  CHECK_THROWS_AS(cpt::parse_model("tree: 0-1\npath x 0 1\n"), cpt::ParseError);
  try {
    cpt::parse_model("tree: 0-1 1-2\npath x: 0 1\npath x: 1 2\n");
    FAIL("expected a parse error");
  } catch (const cpt::ParseError& e) {
    CHECK(e.line == 3);
    CHECK(std::string(e.what()).find("duplicate") != std::string::npos);
  }
  CHECK_THROWS_AS(cpt::parse_model("tree: 0-1\npath x: 0 5\n"),
                  cpt::VertexNotInTreeError);
}

TEST_CASE("dot exports name the pieces they draw") {
  std::string hasse = cpt::poset_to_dot(fence4());
  CHECK(hasse.find("digraph hasse") != std::string::npos);
  CHECK(hasse.find("rankdir=BT") != std::string::npos);
  CHECK(hasse.find("\"1\" -> \"2\"") != std::string::npos);
  CHECK(hasse.find("\"3\" -> \"4\"") != std::string::npos);
  CHECK(hasse.find("\"1\" -> \"4\"") == std::string::npos);

  CptModel m(testgen::line_tree(4), {{"a", {1, 2}}, {"t", {3, 3}}});
  std::string host = cpt::model_to_dot(m);
  CHECK(host.find("graph host") != std::string::npos);
  CHECK(host.find("0 -- 1") != std::string::npos);
  CHECK(host.find("a: 1..2") != std::string::npos);
  CHECK(host.find("t: 3") != std::string::npos);
}

}  // TEST_SUITE
