#ifndef TAGBANK_RULE_TABLES_HPP
#define TAGBANK_RULE_TABLES_HPP

#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tagbank/syntax_tree.hpp"

namespace tagbank {

enum class ChildRole { Head, Argument, Modifier, Punct };

class TableError : public std::runtime_error {
 public:
  enum class Code { TableSyntaxError, MissingCatchAll };
  TableError(Code code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

// The three conversion knowledge tables: head percolation, argument vs.
// modifier classification, and POS/tagset mapping. Immutable after load.
class RuleTables {
 public:
  struct HeadGroup {
    bool scan_right = false;            // true: scan children right-to-left
    std::vector<std::string> categories;  // "*" matches any non-punct child
  };
  struct ArgRule {
    std::string parent;  // bare category pattern, "*" wildcard
    std::string child;
    std::string ftag;    // function-tag pattern, "*" = any (incl. none)
    bool argument = false;
  };
  struct TagMapping {
    std::string pos;     // output POS for the token row
    std::string phrase;  // replacement node label ("PUNCT"), may be empty
  };

  static RuleTables defaults();
  static RuleTables load(const std::string& head_path,
                         const std::string& arg_path,
                         const std::string& tagset_path);
  static RuleTables from_strings(const std::string& head_text,
                                 const std::string& arg_text,
                                 const std::string& tagset_text);

  // Index of the head child. Scans priority groups in order, each group in
  // its direction; unknown parents fall back to the leftmost non-punct child.
  std::size_t head_child(const Label& parent,
                         std::span<const Label> children) const;
  std::size_t head_child(const Label& parent,
                         const std::vector<SyntaxTree>& children) const;

  ChildRole classify_child(const Label& parent, const Label& child,
                           bool child_is_preterminal, bool is_head) const;
  ChildRole classify_child(const Label& parent, const SyntaxTree& child,
                           bool is_head) const;

  bool is_punct_pos(const std::string& pos) const { return punct_pos_.count(pos) > 0; }
  const TagMapping* tag_mapping(const std::string& pos) const;

  std::string dump_head_rules() const;
  std::string dump_arg_rules() const;
  std::string dump_tagset() const;

 private:
  std::map<std::string, std::vector<HeadGroup>> head_rules_;
  std::vector<ArgRule> arg_rules_;
  std::map<std::string, TagMapping> tagset_;
  std::set<std::string> punct_pos_;

  void parse_head_rules(const std::string& text, const std::string& file);
  void parse_arg_rules(const std::string& text, const std::string& file);
  void parse_tagset(const std::string& text, const std::string& file);
};

}  // namespace tagbank

#endif
