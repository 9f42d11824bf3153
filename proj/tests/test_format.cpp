#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <set>
#include <sstream>

#include "tagbank/format.hpp"
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

SyntaxTree one_tree(const std::string& text) {
  auto trees = parse_corpus(text);
  REQUIRE(trees.size() == 1);
  return trees[0];
}

}  // namespace

TEST_CASE("linearize emits no brackets for a lone pre-terminal layer") {
  auto fields = linearize(one_tree("(NP (NN dogs))"));
  REQUIRE(fields.size() == 1);
  CHECK(fields[0].first == "(NP");
  CHECK(fields[0].second == ")NP");
}

TEST_CASE("linearize places openers ancestors-first and closers innermost-first") {
  auto fields = linearize(
      one_tree("(S (S (NP-SBJ (NN kim)) (VP (VBZ sleeps))) (PUNCT .))"));
  REQUIRE(fields.size() == 3);
  CHECK(fields[0].first == "(S (S (NP-SBJ");
  CHECK(fields[0].second == ")NP-SBJ");
  CHECK(fields[1].first == "(VP");
  CHECK(fields[1].second == ")VP )S");
  CHECK(fields[2].first.empty());
  CHECK(fields[2].second == ")S");
}

TEST_CASE("linearize reproduces the gold bracket columns") {
  auto fields = linearize(one_tree(read_file("vinken_normalized.mrg")));
  REQUIRE(fields.size() == 18);
  CHECK(fields[0].first == "(S (S (NP-SBJ (NP-SBJ (NP (NP");
  CHECK(fields[3].first == "(ADJP (NP");
  CHECK(fields[5].second == ")ADJP )NP-SBJ");
  CHECK(fields[14].second == ")NP )NP )PP-CLR )VP");
  CHECK(fields[16].second == ")NP-TMP )VP )VP )S");
  CHECK(fields[17].second == ")S");
}

TEST_CASE("emit_canonical formats tab-separated rows with a blank terminator") {
  TagbankRow row{"1", "dogs", "nn", "0", "alpha", "(NP", ")NP"};
  CHECK(emit_canonical({row}) == "1\tdogs\tnn\t0\talpha\t(NP\t)NP\n\n");
  CHECK(emit_canonical({}) == "");
}

TEST_CASE("emit_mwe inserts span rows and blanks continuation elems") {
  auto sentences = parse_tagbank(read_file("vinken.gold.tb"));
  REQUIRE(sentences.size() == 1);
  std::string mwe = emit_mwe(sentences[0].rows, {{5, 6}});
  CHECK(mwe == read_file("vinken_mwe.gold.tb"));
  CHECK(emit_mwe(sentences[0].rows, {}) == read_file("vinken.gold.tb"));
  CHECK_THROWS_AS(emit_mwe(sentences[0].rows, {{2, 3}, {3, 4}}), FormatError);
}

TEST_CASE("parse after emit is the identity on rows") {
  auto sentences = parse_tagbank(read_file("vinken.gold.tb"));
  REQUIRE(sentences.size() == 1);
  REQUIRE(sentences[0].rows.size() == 18);
  CHECK(sentences[0].rows[1].lex == "vinken");
  CHECK(sentences[0].rows[8].hd == "0");
  CHECK(emit_canonical(sentences[0].rows) == read_file("vinken.gold.tb"));

  auto again = parse_tagbank(emit_canonical(sentences[0].rows));
  REQUIRE(again.size() == 1);
  CHECK(again[0].rows == sentences[0].rows);
}

TEST_CASE("parse reconstructs the derived tree minus casing") {
  auto sentences = parse_tagbank(read_file("vinken.gold.tb"));
  REQUIRE(sentences.size() == 1);
  const SyntaxTree& t = sentences[0].tree;
  CHECK(t.label.category == "S");
  CHECK(t.leaves().size() == 18);
  // Same shape as the normalized source, tokens/POS lowercased.
  std::string flat = serialize(t);
  CHECK(flat.find("(NP-SBJ (NP-SBJ (NP (NP (NNP pierre)") != std::string::npos);
  CHECK(flat.find("(PP-CLR (IN as)") != std::string::npos);
}

TEST_CASE("parse errors carry codes") {
  CHECK_THROWS_AS(parse_tagbank("1\tdogs\tnn\t0\talpha\t(NP\n\n"), FormatError);
  try {
    parse_tagbank("1\tdogs\tnn\t0\talpha\t(NP\n\n");
    FAIL("expected ColumnCount");
  } catch (const FormatError& e) {
    CHECK(e.code() == FormatError::Code::ColumnCount);
  }
  try {
    parse_tagbank("2\tdogs\tnn\t0\talpha\t(NP\t)NP\n\n");
    FAIL("expected BadIndex");
  } catch (const FormatError& e) {
    CHECK(e.code() == FormatError::Code::BadIndex);
  }
  try {
    parse_tagbank("1\tdogs\tnn\t0\talpha\t(NP\t)VP\n\n");
    FAIL("expected UnbalancedFormat");
  } catch (const FormatError& e) {
    CHECK(e.code() == FormatError::Code::UnbalancedFormat);
  }
}

TEST_CASE("validator accepts the gold files") {
  CHECK(validate_file(read_file("vinken.gold.tb")).ok());
  CHECK(validate_file(read_file("vinken_mwe.gold.tb")).ok());
  ValidationReport r = validate_file(read_file("vinken.gold.tb"));
  CHECK(r.sentences == 1);
}

TEST_CASE("validator flags structural corruption") {
  std::string two_roots =
      "1\ta\tdt\t0\talpha\t(NP\t_\n2\tdog\tnn\t0\talpha\t_\t)NP\n\n";
  ValidationReport r = validate_file(two_roots);
  CHECK_FALSE(r.ok());
  bool found = false;
  for (const auto& f : r.findings) found |= f.code == "root-count";
  CHECK(found);

  std::string unbalanced = "1\tdogs\tnn\t0\talpha\t(NP\t_\n\n";
  CHECK_FALSE(validate_file(unbalanced).ok());

  std::string bad_cols = "1\tdogs\tnn\t0\talpha\t(NP\n\n";
  CHECK_FALSE(validate_file(bad_cols).ok());

  std::string cycle =
      "1\ta\tdt\t2\talpha\t(NP\t_\n2\tdog\tnn\t1\talpha\t_\t)NP\n\n";
  CHECK_FALSE(validate_file(cycle).ok());

  std::string bad_elem =
      "1\tdogs\tnn\t0\tgamma\t(NP\t)NP\n\n";
  CHECK_FALSE(validate_file(bad_elem).ok());

  std::string idx_gap =
      "1\ta\tdt\t2\talpha\t(NP\t_\n3\tdog\tnn\t0\talpha\t_\t)NP\n\n";
  CHECK_FALSE(validate_file(idx_gap).ok());
}

TEST_CASE("opening and closing label multisets agree on valid files") {
  auto sentences = parse_tagbank(read_file("vinken.gold.tb"));
  std::multiset<std::string> open, close;
  for (const auto& r : sentences[0].rows) {
    std::istringstream rhs(r.rhs == "_" ? "" : r.rhs), lhs(r.lhs == "_" ? "" : r.lhs);
    std::string item;
    while (rhs >> item) open.insert(item.substr(1));
    while (lhs >> item) close.insert(item.substr(1));
  }
  CHECK(open == close);
}
