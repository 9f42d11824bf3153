#include "tagbank/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace tagbank {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return s;
}

void collect_preterminals(const SyntaxTree& t, std::vector<const SyntaxTree*>& out) {
  if (t.is_preterminal()) {
    out.push_back(&t);
    return;
  }
  for (const auto& c : t.children) collect_preterminals(c, out);
}

}  // namespace

SentenceAnalysis analyze_sentence(const SyntaxTree& tree, const RuleTables& tables,
                                  bool preserve_case) {
  SentenceAnalysis out;
  out.normalized = normalize(tree, tables);
  out.extraction = extract(out.normalized, tables);

  ComposeResult comp =
      compose(out.extraction.etrees, out.extraction.records, out.extraction.root_anchor);
  if (!(comp.derived == out.normalized))
    throw std::runtime_error("recomposed derived tree differs from the normalized source");
  out.derivation = std::move(comp.derivation);

  std::vector<const SyntaxTree*> pres;
  collect_preterminals(out.normalized, pres);
  auto fields = linearize(out.normalized);
  auto heads = heads_from_derivation(out.derivation);
  if (pres.size() != fields.size() || pres.size() != heads.size())
    throw std::runtime_error("token bookkeeping mismatch in analysis");

  for (std::size_t i = 0; i < pres.size(); ++i) {
    const SyntaxTree* pre = pres[i];
    TagbankRow row;
    row.idx = std::to_string(i + 1);
    row.lex = preserve_case ? pre->token : lower(pre->token);
    row.pos = lower(pre->label.str());
    row.hd = std::to_string(heads[i]);
    const ElementaryTree* e = out.extraction.by_anchor(static_cast<int>(i + 1));
    row.elem = e ? (e->kind == EtreeKind::Alpha ? "alpha" : "beta") : "_";
    row.rhs = fields[i].first.empty() ? "_" : fields[i].first;
    row.lhs = fields[i].second.empty() ? "_" : fields[i].second;
    out.rows.push_back(std::move(row));
  }
  return out;
}

std::vector<std::vector<std::string>> load_mwe_lexicon(const std::string& text) {
  std::vector<std::vector<std::string>> lexicon;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::istringstream words(line);
    std::vector<std::string> phrase;
    std::string w;
    while (words >> w) phrase.push_back(lower(w));
    if (phrase.size() >= 2) lexicon.push_back(std::move(phrase));
  }
  return lexicon;
}

std::vector<std::pair<int, int>> match_mwe_spans(
    const std::vector<TagbankRow>& rows,
    const std::vector<std::vector<std::string>>& lexicon) {
  std::vector<std::string> toks;
  for (const auto& r : rows) toks.push_back(lower(r.lex));

  std::vector<std::pair<int, int>> spans;
  std::size_t i = 0;
  while (i < toks.size()) {
    std::size_t best = 0;
    for (const auto& phrase : lexicon) {
      if (phrase.size() <= best || i + phrase.size() > toks.size()) continue;
      bool hit = true;
      for (std::size_t k = 0; k < phrase.size(); ++k)
        if (toks[i + k] != phrase[k]) {
          hit = false;
          break;
        }
      if (hit) best = phrase.size();
    }
    if (best > 0) {
      spans.emplace_back(static_cast<int>(i + 1), static_cast<int>(i + best));
      i += best;
    } else {
      ++i;
    }
  }
  return spans;
}

ConvertOutcome convert_corpus(const std::string& corpus_text,
                              const RuleTables& tables, const RunConfig& config,
                              const std::vector<std::vector<std::string>>& lexicon) {
  std::vector<std::string> segments = split_corpus(corpus_text);
  std::vector<std::string> blocks(segments.size());
  std::vector<std::string> errors(segments.size());

  auto work = [&](std::size_t i) {
    try {
      auto trees = parse_corpus(segments[i]);
      std::string block;
      for (const auto& t : trees) {
        SentenceAnalysis a = analyze_sentence(t, tables, config.preserve_case);
        if (config.mode == OutputMode::Mwe)
          block += emit_mwe(a.rows, match_mwe_spans(a.rows, lexicon));
        else
          block += emit_canonical(a.rows);
      }
      blocks[i] = std::move(block);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  };

  int jobs = std::max(1, config.jobs);
  if (jobs == 1 || segments.size() <= 1) {
    for (std::size_t i = 0; i < segments.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    int n = std::min<std::size_t>(static_cast<std::size_t>(jobs), segments.size());
    for (int t = 0; t < n; ++t)
      pool.emplace_back([&]() {
        for (std::size_t i = next.fetch_add(1); i < segments.size();
             i = next.fetch_add(1))
          work(i);
      });
    for (auto& t : pool) t.join();
  }

  ConvertOutcome out;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (!errors[i].empty()) {
      ++out.failed;
      out.errors.push_back("sentence#" + std::to_string(i + 1) + ": " + errors[i]);
    } else {
      ++out.converted;
      out.text += blocks[i];
    }
  }
  return out;
}

GrammarCensus grammar_census(const std::string& corpus_text, const RuleTables& tables) {
  GrammarCensus census;
  for (const auto& segment : split_corpus(corpus_text)) {
    for (const auto& t : parse_corpus(segment)) {
      SyntaxTree norm = normalize(t, tables);
      ExtractionResult ex = extract(norm, tables);
      for (const auto& e : ex.etrees) {
        ++census.counts[delexicalize(e)];
        if (e.kind == EtreeKind::Alpha)
          ++census.alpha_instances;
        else
          ++census.beta_instances;
      }
    }
  }
  return census;
}

std::string GrammarCensus::str() const {
  std::vector<std::pair<std::string, long>> rows(counts.begin(), counts.end());
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::ostringstream out;
  for (const auto& [tmpl, count] : rows) out << count << '\t' << tmpl << '\n';
  out << "# templates: " << rows.size() << ", instances: "
      << alpha_instances + beta_instances << " (alpha " << alpha_instances
      << ", beta " << beta_instances << ")\n";
  return out.str();
}

CorpusStats corpus_stats(const std::string& corpus_text, const RuleTables& tables) {
  CorpusStats s;
  for (const auto& segment : split_corpus(corpus_text)) {
    try {
      for (const auto& t : parse_corpus(segment)) {
        SentenceAnalysis a = analyze_sentence(t, tables);
        ++s.sentences;
        s.tokens += static_cast<long>(a.rows.size());
        for (const auto& e : a.extraction.etrees)
          (e.kind == EtreeKind::Alpha ? s.alpha : s.beta) += 1;
        for (const auto& r : a.extraction.records)
          (r.op == AttachOp::Substitution ? s.substitutions : s.adjunctions) += 1;
      }
    } catch (const std::exception&) {
      ++s.failures;
    }
  }
  return s;
}

std::string CorpusStats::str() const {
  std::ostringstream out;
  out << "sentences\t" << sentences << '\n'
      << "tokens\t" << tokens << '\n'
      << "alpha\t" << alpha << '\n'
      << "beta\t" << beta << '\n'
      << "substitutions\t" << substitutions << '\n'
      << "adjunctions\t" << adjunctions << '\n'
      << "failures\t" << failures << '\n';
  return out.str();
}

}  // namespace tagbank
