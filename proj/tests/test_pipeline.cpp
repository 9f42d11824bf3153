#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <sstream>

#include "tagbank/pipeline.hpp"

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

TEST_CASE("single-sentence analysis reproduces the gold rows") {
  RuleTables tables = RuleTables::defaults();
  auto trees = parse_corpus(read_file("vinken.mrg"));
  REQUIRE(trees.size() == 1);
  SentenceAnalysis a = analyze_sentence(trees[0], tables);
  CHECK(emit_canonical(a.rows) == read_file("vinken.gold.tb"));
}

TEST_CASE("preserve-case keeps the original surface forms") {
  RuleTables tables = RuleTables::defaults();
  auto trees = parse_corpus(read_file("vinken.mrg"));
  SentenceAnalysis a = analyze_sentence(trees[0], tables, /*preserve_case=*/true);
  CHECK(a.rows[0].lex == "Pierre");
  CHECK(a.rows[15].lex == "Nov.");
  CHECK(a.rows[15].pos == "nnp");
}

TEST_CASE("corpus conversion produces the gold file") {
  RuleTables tables = RuleTables::defaults();
  RunConfig config;
  ConvertOutcome out = convert_corpus(read_file("vinken.mrg"), tables, config);
  CHECK(out.converted == 1);
  CHECK(out.failed == 0);
  CHECK(out.text == read_file("vinken.gold.tb"));
}

TEST_CASE("mwe conversion matches lexicon phrases into spans") {
  RuleTables tables = RuleTables::defaults();
  RunConfig config;
  config.mode = OutputMode::Mwe;
  auto lexicon = load_mwe_lexicon("# phrases\nyears old\n");
  REQUIRE(lexicon.size() == 1);
  ConvertOutcome out = convert_corpus(read_file("vinken.mrg"), tables, config, lexicon);
  CHECK(out.text == read_file("vinken_mwe.gold.tb"));
}

TEST_CASE("failed sentences are isolated and logged") {
  RuleTables tables = RuleTables::defaults();
  RunConfig config;
  // The middle tree is balanced but malformed (empty phrase node).
  std::string corpus =
      "((NP (NN cats)))\n((S (NN) (NP (NN cats))))\n((NP (NN dogs)))\n";
  ConvertOutcome out = convert_corpus(corpus, tables, config);
  CHECK(out.converted == 2);
  CHECK(out.failed == 1);
  REQUIRE(out.errors.size() == 1);
  CHECK(out.errors[0].find("sentence#2") != std::string::npos);
  // Two healthy sentences, each one row block.
  CHECK(parse_tagbank(out.text).size() == 2);
}

TEST_CASE("conversion output is identical across worker counts") {
  RuleTables tables = RuleTables::defaults();
  std::string corpus;
  for (int i = 0; i < 12; ++i) corpus += read_file("vinken.mrg");
  RunConfig serial;
  serial.jobs = 1;
  RunConfig parallel;
  parallel.jobs = 4;
  ConvertOutcome a = convert_corpus(corpus, tables, serial);
  ConvertOutcome b = convert_corpus(corpus, tables, parallel);
  CHECK(a.text == b.text);
  CHECK(a.converted == 12);
  CHECK(b.converted == 12);
}

TEST_CASE("grammar census counts delexicalized templates") {
  RuleTables tables = RuleTables::defaults();
  GrammarCensus census = grammar_census(read_file("vinken.mrg"), tables);
  CHECK(census.alpha_instances == 7);
  CHECK(census.beta_instances == 11);
  long total = 0;
  for (const auto& [tmpl, count] : census.counts) total += count;
  CHECK(total == 18);

  // Linearity: a doubled corpus exactly doubles every count.
  GrammarCensus twice =
      grammar_census(read_file("vinken.mrg") + read_file("vinken.mrg"), tables);
  for (const auto& [tmpl, count] : census.counts)
    CHECK(twice.counts.at(tmpl) == 2 * count);

  GrammarCensus empty = grammar_census("", tables);
  CHECK(empty.counts.empty());
}

TEST_CASE("corpus statistics summarize sentences, tokens and operations") {
  RuleTables tables = RuleTables::defaults();
  CorpusStats s = corpus_stats(read_file("vinken.mrg"), tables);
  CHECK(s.sentences == 1);
  CHECK(s.tokens == 18);
  CHECK(s.alpha == 7);
  CHECK(s.beta == 11);
  CHECK(s.substitutions + s.adjunctions == 17);
  CHECK(s.failures == 0);

  CorpusStats zero = corpus_stats("", tables);
  CHECK(zero.sentences == 0);
  CHECK(zero.tokens == 0);
}

TEST_CASE("mwe matching is greedy, leftmost and case-insensitive") {
  std::vector<TagbankRow> rows;
  const char* toks[] = {"He", "kicked", "the", "bucket", "list"};
  for (int i = 0; i < 5; ++i) {
    TagbankRow r;
    r.idx = std::to_string(i + 1);
    r.lex = toks[i];
    rows.push_back(r);
  }
  auto lex = load_mwe_lexicon("kicked the bucket\nbucket list\n");
  auto spans = match_mwe_spans(rows, lex);
  REQUIRE(spans.size() == 1);
  CHECK(spans[0] == std::pair<int, int>(2, 4));
}
