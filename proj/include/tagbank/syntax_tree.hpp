#ifndef TAGBANK_SYNTAX_TREE_HPP
#define TAGBANK_SYNTAX_TREE_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tagbank {

// Phrase label: category plus Penn-style function tags and an optional
// coindex, e.g. "NP-SBJ-1" -> {NP, [SBJ], 1}.
struct Label {
  std::string category;
  std::vector<std::string> ftags;
  std::optional<int> coindex;

  Label() = default;
  explicit Label(std::string cat) : category(std::move(cat)) {}

  std::string str() const;
  bool has_ftag(const std::string& tag) const;
  bool operator==(const Label& other) const {
    return category == other.category && ftags == other.ftags &&
           coindex == other.coindex;
  }
};

// A bracketed constituency tree. A node is a pre-terminal iff it carries a
// token; otherwise it is a phrase over >= 1 children. Elementary-tree shapes
// reuse the same type with frontier marks.
struct SyntaxTree {
  enum class Mark { None, SubstSite, Foot };

  Label label;              // phrase label; POS tag for pre-terminals (raw)
  std::string token;        // surface form, pre-terminals only
  int index = 0;            // 1-based token index, pre-terminals only
  int node_id = -1;         // stable id assigned by normalize()
  Mark mark = Mark::None;
  std::vector<SyntaxTree> children;

  bool is_preterminal() const { return !token.empty(); }
  bool is_phrase() const { return token.empty() && mark == Mark::None; }

  int first_token() const;
  int last_token() const;
  void yield(std::vector<const SyntaxTree*>& out) const;
  std::vector<const SyntaxTree*> leaves() const;

  bool operator==(const SyntaxTree& other) const;
};

class TreebankError : public std::runtime_error {
 public:
  enum class Code { UnbalancedBrackets, EmptyPhrase, BadLabel };
  TreebankError(Code code, std::size_t position, const std::string& what);
  Code code() const { return code_; }
  std::size_t position() const { return position_; }

 private:
  Code code_;
  std::size_t position_;
};

// Splits a raw node label into category / function tags / coindex. Suffixes
// are split off only when numeric or in the known ftag inventory, so labels
// like "-LRB-" survive intact.
Label parse_label(const std::string& raw, std::size_t position = 0);

// Parses a stream of bracketed trees. "#" lines between trees are skipped;
// an extra outer "( ... )" wrapper per tree is tolerated. Token indices are
// assigned 1..n left to right per tree.
std::vector<SyntaxTree> parse_corpus(const std::string& text);

// Splits corpus text into balanced top-level segments without parsing them,
// so one malformed tree does not take down its neighbours.
std::vector<std::string> split_corpus(const std::string& text);

// Single-line bracketed rendering; parse_corpus(serialize(t)) == t.
std::string serialize(const SyntaxTree& tree);

}  // namespace tagbank

#endif
