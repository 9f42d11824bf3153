#ifndef TAGBANK_FORMAT_HPP
#define TAGBANK_FORMAT_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tagbank/syntax_tree.hpp"

namespace tagbank {

// One token row of the tabular format. Span rows ("5-6") carry the joined
// surface form and "_" everywhere else. Fields are kept as rendered strings
// so emit/parse is the identity on rows.
struct TagbankRow {
  std::string idx;
  std::string lex;
  std::string pos = "_";
  std::string hd = "_";
  std::string elem = "_";
  std::string rhs = "_";
  std::string lhs = "_";

  bool is_span() const { return idx.find('-') != std::string::npos; }
  bool operator==(const TagbankRow&) const = default;
};

class FormatError : public std::runtime_error {
 public:
  enum class Code { ColumnCount, BadIndex, UnbalancedFormat, OverlappingSpans };
  FormatError(Code code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

// Per-token opening/closing bracket fields of the derived tree,
// pre-terminals excluded: "(cat" strings ancestors-first on a constituent's
// first token, ")cat" strings innermost-first on its last token.
std::vector<std::pair<std::string, std::string>> linearize(const SyntaxTree& derived);

std::string emit_canonical(const std::vector<TagbankRow>& rows);

// MWE variant: a composite-index row before each span, continuation members
// pointing at the span's first token with elem "_".
std::string emit_mwe(const std::vector<TagbankRow>& rows,
                     const std::vector<std::pair<int, int>>& spans);

struct ParsedSentence {
  std::vector<TagbankRow> rows;
  SyntaxTree tree;  // derived tree with pre-terminals reattached
};

std::vector<ParsedSentence> parse_tagbank(const std::string& text);

struct ValidationFinding {
  int line = 0;
  bool error = true;  // false = warning
  std::string code;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationFinding> findings;
  int sentences = 0;
  bool ok() const {
    for (const auto& f : findings)
      if (f.error) return false;
    return true;
  }
  std::string str() const;
};

ValidationReport validate_file(const std::string& text);

}  // namespace tagbank

#endif
