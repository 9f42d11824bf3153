#ifndef TAGBANK_PIPELINE_HPP
#define TAGBANK_PIPELINE_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tagbank/derivation.hpp"
#include "tagbank/extractor.hpp"
#include "tagbank/format.hpp"
#include "tagbank/rule_tables.hpp"
#include "tagbank/syntax_tree.hpp"

namespace tagbank {

enum class OutputMode { Canonical, Mwe };

struct RunConfig {
  std::vector<std::string> inputs;
  std::string output;              // empty = stdout
  std::string tables = "default";  // directory of table files, or "default"
  OutputMode mode = OutputMode::Canonical;
  std::string mwe_lexicon;         // path; required for mwe mode
  bool preserve_case = false;
  int jobs = 1;
  bool fail_fast = false;
};

struct SentenceAnalysis {
  SyntaxTree normalized;
  ExtractionResult extraction;
  DerivationTree derivation;
  std::vector<TagbankRow> rows;
};

// Full single-sentence pipeline: normalize, extract, compose, check that the
// recomposed derived tree equals the normalized tree, then build token rows.
// Throws on any stage failure.
SentenceAnalysis analyze_sentence(const SyntaxTree& tree, const RuleTables& tables,
                                  bool preserve_case = false);

// Lowercased multiword phrases, one per line ("#" comments allowed).
std::vector<std::vector<std::string>> load_mwe_lexicon(const std::string& text);

// Greedy leftmost-longest non-overlapping matching of lexicon phrases against
// the sentence's (case-folded) tokens.
std::vector<std::pair<int, int>> match_mwe_spans(
    const std::vector<TagbankRow>& rows,
    const std::vector<std::vector<std::string>>& lexicon);

struct ConvertOutcome {
  std::string text;                 // concatenated sentence blocks
  int converted = 0;
  int failed = 0;
  std::vector<std::string> errors;  // "sentence#N: message"
};

// Converts one corpus string; per-sentence failures are isolated and logged,
// never corrupting neighboring output. Deterministic for any jobs value.
ConvertOutcome convert_corpus(const std::string& corpus_text,
                              const RuleTables& tables, const RunConfig& config,
                              const std::vector<std::vector<std::string>>& lexicon = {});

struct GrammarCensus {
  // template -> count, reported sorted by count desc then lexicographic.
  std::map<std::string, long> counts;
  long alpha_instances = 0;
  long beta_instances = 0;
  std::string str() const;
};

GrammarCensus grammar_census(const std::string& corpus_text, const RuleTables& tables);

struct CorpusStats {
  long sentences = 0;
  long tokens = 0;
  long alpha = 0;
  long beta = 0;
  long substitutions = 0;
  long adjunctions = 0;
  long failures = 0;
  std::string str() const;
};

CorpusStats corpus_stats(const std::string& corpus_text, const RuleTables& tables);

}  // namespace tagbank

#endif
