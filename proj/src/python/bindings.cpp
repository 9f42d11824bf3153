#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tagbank/format.hpp"
#include "tagbank/pipeline.hpp"
#include "tagbank/rule_tables.hpp"

namespace py = pybind11;
using namespace tagbank;

namespace {

RuleTables tables_from(const std::string& head, const std::string& arg,
                       const std::string& tagset) {
  if (head.empty() && arg.empty() && tagset.empty()) return RuleTables::defaults();
  return RuleTables::from_strings(head, arg, tagset);
}

}  // namespace

PYBIND11_MODULE(_tagbank, m) {
  m.doc() = "Treebank to Tree-Adjoining Grammar conversion core";

  m.def(
      "convert",
      [](const std::string& corpus, const std::string& mode,
         const std::string& mwe_lexicon, bool preserve_case, int jobs,
         const std::string& head, const std::string& arg, const std::string& tagset) {
        RuleTables tables = tables_from(head, arg, tagset);
        RunConfig config;
        config.mode = mode == "mwe" ? OutputMode::Mwe : OutputMode::Canonical;
        config.preserve_case = preserve_case;
        config.jobs = jobs;
        auto lexicon = load_mwe_lexicon(mwe_lexicon);
        ConvertOutcome out = convert_corpus(corpus, tables, config, lexicon);
        return py::make_tuple(out.text, out.converted, out.failed, out.errors);
      },
      py::arg("corpus"), py::arg("mode") = "canonical",
      py::arg("mwe_lexicon") = "", py::arg("preserve_case") = false,
      py::arg("jobs") = 1, py::arg("head_rules") = "", py::arg("arg_rules") = "",
      py::arg("tagset") = "",
      "Convert bracketed treebank text to the tabular derivation format. "
      "Returns (text, converted, failed, errors).");

  m.def(
      "validate",
      [](const std::string& text) {
        ValidationReport r = validate_file(text);
        return py::make_tuple(r.ok(), r.sentences, r.str());
      },
      py::arg("text"), "Validate tabular text; returns (ok, sentences, report).");

  m.def(
      "grammar",
      [](const std::string& corpus) {
        GrammarCensus c = grammar_census(corpus, RuleTables::defaults());
        py::dict counts;
        for (const auto& [tmpl, count] : c.counts) counts[py::str(tmpl)] = count;
        return py::make_tuple(counts, c.alpha_instances, c.beta_instances);
      },
      py::arg("corpus"),
      "Template census over a corpus; returns (counts, alpha, beta).");

  m.def(
      "stats",
      [](const std::string& corpus) {
        CorpusStats s = corpus_stats(corpus, RuleTables::defaults());
        py::dict d;
        d["sentences"] = s.sentences;
        d["tokens"] = s.tokens;
        d["alpha"] = s.alpha;
        d["beta"] = s.beta;
        d["substitutions"] = s.substitutions;
        d["adjunctions"] = s.adjunctions;
        d["failures"] = s.failures;
        return d;
      },
      py::arg("corpus"), "Corpus conversion statistics as a dict.");

  m.def("default_tables", []() {
    RuleTables t = RuleTables::defaults();
    return py::make_tuple(t.dump_head_rules(), t.dump_arg_rules(), t.dump_tagset());
  });
}
