#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <sstream>

#include "tagbank/syntax_tree.hpp"

using namespace tagbank;

namespace {
std::string read_file(const std::string& name) {
  std::ifstream in(std::string(TEST_DATA_DIR) + "/" + name, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}
}  // namespace

TEST_CASE("label parsing splits category, function tags and coindex") {
  Label l = parse_label("NP-SBJ-1");
  CHECK(l.category == "NP");
  CHECK(l.ftags == std::vector<std::string>{"SBJ"});
  CHECK(l.coindex == 1);
  CHECK(l.str() == "NP-SBJ-1");
  CHECK(l.has_ftag("SBJ"));

  CHECK(parse_label("PP-CLR").str() == "PP-CLR");
  CHECK(parse_label("-LRB-").category == "-LRB-");
  CHECK(parse_label("-LRB-").ftags.empty());
  // Unknown suffixes stay part of the category.
  CHECK(parse_label("NP-FOO").category == "NP-FOO");
}

TEST_CASE("simple tree parses with indexed tokens") {
  auto trees = parse_corpus("(S (NP (NN dogs)) (VP (VBP bark)))");
  REQUIRE(trees.size() == 1);
  const SyntaxTree& t = trees[0];
  CHECK(t.label.category == "S");
  REQUIRE(t.children.size() == 2);
  const SyntaxTree& nn = t.children[0].children[0];
  CHECK(nn.is_preterminal());
  CHECK(nn.token == "dogs");
  CHECK(nn.index == 1);
  CHECK(t.children[1].children[0].token == "bark");
  CHECK(t.children[1].children[0].index == 2);
  CHECK(t.first_token() == 1);
  CHECK(t.last_token() == 2);
  CHECK(t.leaves().size() == 2);
}

TEST_CASE("outer wrapper and comments are tolerated") {
  auto trees = parse_corpus("# a comment\n( (S (NP (NN dogs)) (VP (VBP bark))) )\n");
  REQUIRE(trees.size() == 1);
  CHECK(trees[0].label.category == "S");
}

TEST_CASE("multiple trees restart token numbering") {
  auto trees = parse_corpus("((NP (NN cat)))\n((NP (NN dog)))");
  REQUIRE(trees.size() == 2);
  CHECK(trees[1].children[0].index == 1);
}

TEST_CASE("serialize round-trips through the parser") {
  std::string text = read_file("vinken.mrg");
  auto trees = parse_corpus(text);
  REQUIRE(trees.size() == 1);
  std::string flat = serialize(trees[0]);
  auto again = parse_corpus(flat);
  REQUIRE(again.size() == 1);
  CHECK(again[0] == trees[0]);
  CHECK(serialize(again[0]) == flat);
}

TEST_CASE("parse errors carry codes and positions") {
  CHECK_THROWS_AS(parse_corpus("(S (NP (NN dogs))"), TreebankError);
  CHECK_THROWS_AS(parse_corpus("(S (NP (NN dogs))))"), TreebankError);
  CHECK_THROWS_AS(parse_corpus("(S ())"), TreebankError);
  try {
    parse_corpus("(S (NP (NN dogs))");
    FAIL("expected TreebankError");
  } catch (const TreebankError& e) {
    CHECK(e.code() == TreebankError::Code::UnbalancedBrackets);
  }
}

TEST_CASE("split_corpus isolates malformed neighbours") {
  auto parts = split_corpus("((NP (NN a)))\n((NP (NN b)))\n");
  REQUIRE(parts.size() == 2);
  CHECK(parse_corpus(parts[0]).size() == 1);
  CHECK(parse_corpus(parts[1]).size() == 1);
}

TEST_CASE("empty corpus yields no trees") {
  CHECK(parse_corpus("").empty());
  CHECK(parse_corpus("# only a comment\n").empty());
  CHECK(split_corpus("").empty());
}
