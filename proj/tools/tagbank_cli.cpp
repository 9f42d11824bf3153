#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tagbank/format.hpp"
#include "tagbank/pipeline.hpp"
#include "tagbank/rule_tables.hpp"

namespace fs = std::filesystem;
using namespace tagbank;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spill(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

// "default" resolves to the built-in tables unless TAGBANK_TABLES points at a
// directory holding head_rules.txt / arg_rules.txt / tagset.txt.
RuleTables resolve_tables(const std::string& spec) {
  std::string dir = spec;
  if (dir == "default") {
    if (const char* env = std::getenv("TAGBANK_TABLES"))
      dir = env;
    else
      return RuleTables::defaults();
  }
  return RuleTables::load((fs::path(dir) / "head_rules.txt").string(),
                          (fs::path(dir) / "arg_rules.txt").string(),
                          (fs::path(dir) / "tagset.txt").string());
}

int run_convert(const RunConfig& config) {
  RuleTables tables = resolve_tables(config.tables);

  std::vector<std::vector<std::string>> lexicon;
  if (config.mode == OutputMode::Mwe) {
    if (config.mwe_lexicon.empty())
      std::cerr << "warning: mwe mode without --mwe-lexicon produces canonical output\n";
    else
      lexicon = load_mwe_lexicon(slurp(config.mwe_lexicon));
  }

  bool multi_out = config.inputs.size() > 1 && !config.output.empty();
  if (multi_out) fs::create_directories(config.output);

  int total_failed = 0, total_ok = 0;
  for (const auto& input : config.inputs) {
    ConvertOutcome outcome =
        convert_corpus(slurp(input), tables, config, lexicon);
    for (const auto& e : outcome.errors)
      std::cerr << input << ":" << e << '\n';
    total_failed += outcome.failed;
    total_ok += outcome.converted;
    if (config.fail_fast && outcome.failed > 0) return 1;

    if (config.output.empty())
      std::cout << outcome.text;
    else if (multi_out)
      spill((fs::path(config.output) / (fs::path(input).filename().string() + ".tb"))
                .string(),
            outcome.text);
    else
      spill(config.output, outcome.text);
  }
  if (total_failed == 0) return 0;
  return total_ok > 0 ? 0 : 1;
}

int run_validate(const std::vector<std::string>& paths) {
  bool all_ok = true;
  for (const auto& p : paths) {
    ValidationReport report = validate_file(slurp(p));
    std::cout << "== " << p << " ==\n" << report.str();
    if (!report.ok()) all_ok = false;
  }
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Treebank to TAG derivation converter"};
  app.require_subcommand(1);

  RunConfig config;
  std::string mode = "canonical";
  std::vector<std::string> paths;
  std::string out_dir;

  auto* convert = app.add_subcommand("convert", "Convert bracketed trees to TAGbank");
  convert->add_option("inputs", config.inputs, "Treebank files")->required();
  convert->add_option("-o,--output", config.output, "Output file (or directory for multiple inputs)");
  convert->add_option("--tables", config.tables, "Table directory or 'default'");
  convert->add_option("--mode", mode, "canonical|mwe")
      ->check(CLI::IsMember({"canonical", "mwe"}));
  convert->add_option("--mwe-lexicon", config.mwe_lexicon, "Multiword phrase list");
  convert->add_flag("--preserve-case", config.preserve_case, "Keep original token case");
  convert->add_option("-j,--jobs", config.jobs, "Worker threads")->check(CLI::PositiveNumber);
  convert->add_flag("--fail-fast", config.fail_fast, "Stop on first failed sentence");

  auto* validate = app.add_subcommand("validate", "Validate TAGbank files");
  validate->add_option("paths", paths, "TAGbank files")->required();

  auto* grammar = app.add_subcommand("grammar", "Extract template frequency table");
  grammar->add_option("paths", paths, "Treebank files")->required();
  grammar->add_option("--tables", config.tables, "Table directory or 'default'");

  auto* stats = app.add_subcommand("stats", "Corpus conversion statistics");
  stats->add_option("paths", paths, "Treebank files")->required();
  stats->add_option("--tables", config.tables, "Table directory or 'default'");

  auto* dump = app.add_subcommand("dump-tables", "Print or export the built-in tables");
  dump->add_option("--tables", config.tables, "Table directory or 'default'");
  dump->add_option("--out", out_dir, "Write head_rules.txt/arg_rules.txt/tagset.txt here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (convert->parsed()) {
      config.mode = (mode == "mwe") ? OutputMode::Mwe : OutputMode::Canonical;
      return run_convert(config);
    }
    if (validate->parsed()) return run_validate(paths);
    if (grammar->parsed()) {
      RuleTables tables = resolve_tables(config.tables);
      GrammarCensus census;
      for (const auto& p : paths) {
        GrammarCensus one = grammar_census(slurp(p), tables);
        for (const auto& [tmpl, count] : one.counts) census.counts[tmpl] += count;
        census.alpha_instances += one.alpha_instances;
        census.beta_instances += one.beta_instances;
      }
      std::cout << census.str();
      return 0;
    }
    if (stats->parsed()) {
      RuleTables tables = resolve_tables(config.tables);
      CorpusStats total;
      for (const auto& p : paths) {
        CorpusStats one = corpus_stats(slurp(p), tables);
        total.sentences += one.sentences;
        total.tokens += one.tokens;
        total.alpha += one.alpha;
        total.beta += one.beta;
        total.substitutions += one.substitutions;
        total.adjunctions += one.adjunctions;
        total.failures += one.failures;
      }
      std::cout << total.str();
      return 0;
    }
    if (dump->parsed()) {
      RuleTables tables = resolve_tables(config.tables);
      if (out_dir.empty()) {
        std::cout << "## head_rules.txt\n" << tables.dump_head_rules()
                  << "## arg_rules.txt\n" << tables.dump_arg_rules()
                  << "## tagset.txt\n" << tables.dump_tagset();
      } else {
        fs::create_directories(out_dir);
        spill((fs::path(out_dir) / "head_rules.txt").string(), tables.dump_head_rules());
        spill((fs::path(out_dir) / "arg_rules.txt").string(), tables.dump_arg_rules());
        spill((fs::path(out_dir) / "tagset.txt").string(), tables.dump_tagset());
      }
      return 0;
    }
  } catch (const TableError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
