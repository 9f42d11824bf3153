#include "tagbank/rule_tables.hpp"

#include <fstream>
#include <sstream>

namespace tagbank {

namespace {

// Collins-style head percolation rules. Directions are per priority group;
// groups are scanned in order and the first category hit wins. Two local
// amendments: ADJP prefers an NP child (predicative "61 years old" heads on
// the noun), and VP prefers an inner VP over the modal so auxiliaries come
// out as modifiers.
const char* kDefaultHeadRules = R"(# parent  dir cats... ; dir cats... ; ...
S      left VP ; left S SBAR ADJP UCP NP ; left TO IN ; left *
SBAR   left S SBAR ; left IN DT WHNP WHPP WHADVP WHADJP ; left FRAG ; left *
SBARQ  left SQ S SINV SBARQ FRAG ; left *
SINV   left VBZ VBD VBP VB MD VP ; left S SINV ADJP NP ; left *
SQ     left VBZ VBD VBP VB MD VP SQ ; left *
VP     left VBD VBN VBZ VBG VBP VB ; left VP ; left ADJP NN NNS NP ; left TO MD ; left *
NP     right NN NNS NNP NNPS NX POS JJR ; left NP ; right ADJP PRN ; right CD ; right JJ JJS RB QP ; right *
NX     right NN NNS NNP NNPS NX ; right *
ADJP   left NP NNS NN QP ; right JJ VBN VBG ADJP JJR JJS DT FW RBR RBS SBAR RB ; left *
ADVP   right RB RBR RBS FW ADVP TO CD JJR JJ IN NP JJS NN ; right *
PP     right IN TO VBG VBN RP FW ; left NP ; left *
PRT    right RP ; right *
QP     left $ IN NNS NN JJ RB DT CD QP JJR JJS ; left *
WHNP   left WDT WP WP$ WHADJP WHPP WHNP ; left *
WHPP   right IN TO FW ; right *
WHADJP left CC WRB JJ ADJP ; left *
WHADVP right CC WRB ; right *
PRN    left S SBAR NP VP ADJP PP ; left *
NAC    left NN NNS NNP NNPS NP NAC EX $ CD QP PRP VBG JJ JJS JJR ADJP FW ; left *
CONJP  right CC RB IN ; right *
LST    right LS : ; right *
UCP    left *
FRAG   left *
INTJ   left *
X      left *
)";

// Argument/modifier classification, first match wins. Function-tag rules
// come first, then category defaults, then the mandatory catch-all.
const char* kDefaultArgRules = R"(# parent child ftag -> ARG|MOD
*    *    SBJ -> ARG
*    *    CLR -> ARG
*    *    PRD -> ARG
*    *    DTV -> ARG
*    *    OBJ -> ARG
*    *    TMP -> MOD
*    *    LOC -> MOD
*    *    ADV -> MOD
*    *    MNR -> MOD
*    *    DIR -> MOD
*    *    PRP -> MOD
*    *    EXT -> MOD
*    ADJP *   -> MOD
*    ADVP *   -> MOD
*    PRN  *   -> MOD
S    NP   *   -> ARG
S    SBAR *   -> ARG
SBAR S    *   -> ARG
SBAR NP   *   -> ARG
VP   NP   *   -> ARG
VP   PP   *   -> ARG
VP   S    *   -> ARG
VP   SBAR *   -> ARG
NP   DT   *   -> ARG
NP   PDT  *   -> ARG
PP   NP   *   -> ARG
PP   PP   *   -> ARG
PP   S    *   -> ARG
PP   SBAR *   -> ARG
*    *    *   -> MOD
)";

// Punctuation POS tags map to a lowercase output tag and the PUNCT node
// label used in derived trees.
const char* kDefaultTagset = R"(# POS -> pos PHRASE
,     -> punct PUNCT
.     -> punct PUNCT
:     -> punct PUNCT
``    -> punct PUNCT
''    -> punct PUNCT
-LRB- -> punct PUNCT
-RRB- -> punct PUNCT
)";

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::string strip_comment(const std::string& line) {
  if (!line.empty() && line[0] == '#') return "";
  return line;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw TableError(TableError::Code::TableSyntaxError,
                     "cannot open table file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool pattern_match(const std::string& pattern, const std::string& value) {
  return pattern == "*" || pattern == value;
}

}  // namespace

RuleTables RuleTables::from_strings(const std::string& head_text,
                                    const std::string& arg_text,
                                    const std::string& tagset_text) {
  RuleTables t;
  t.parse_head_rules(head_text, "<head-rules>");
  t.parse_arg_rules(arg_text, "<arg-rules>");
  t.parse_tagset(tagset_text, "<tagset>");
  return t;
}

RuleTables RuleTables::defaults() {
  return from_strings(kDefaultHeadRules, kDefaultArgRules, kDefaultTagset);
}

RuleTables RuleTables::load(const std::string& head_path,
                            const std::string& arg_path,
                            const std::string& tagset_path) {
  RuleTables t;
  t.parse_head_rules(read_file(head_path), head_path);
  t.parse_arg_rules(read_file(arg_path), arg_path);
  t.parse_tagset(read_file(tagset_path), tagset_path);
  return t;
}

void RuleTables::parse_head_rules(const std::string& text, const std::string& file) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = strip_comment(line);
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    std::string parent = toks[0];
    std::vector<HeadGroup> groups;
    HeadGroup cur;
    bool expect_dir = true;
    for (std::size_t i = 1; i < toks.size(); ++i) {
      if (toks[i] == ";") {
        if (cur.categories.empty())
          throw TableError(TableError::Code::TableSyntaxError,
                           file + ":" + std::to_string(lineno) + ": empty head group");
        groups.push_back(cur);
        cur = HeadGroup{};
        expect_dir = true;
      } else if (expect_dir) {
        if (toks[i] == "left")
          cur.scan_right = false;
        else if (toks[i] == "right")
          cur.scan_right = true;
        else
          throw TableError(TableError::Code::TableSyntaxError,
                           file + ":" + std::to_string(lineno) +
                               ": expected direction, got " + toks[i]);
        expect_dir = false;
      } else {
        cur.categories.push_back(toks[i]);
      }
    }
    if (cur.categories.empty())
      throw TableError(TableError::Code::TableSyntaxError,
                       file + ":" + std::to_string(lineno) + ": empty head rule");
    groups.push_back(cur);
    head_rules_[parent] = std::move(groups);
  }
}

void RuleTables::parse_arg_rules(const std::string& text, const std::string& file) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool has_catch_all = false;
  while (std::getline(in, line)) {
    ++lineno;
    line = strip_comment(line);
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (toks.size() != 5 || toks[3] != "->" || (toks[4] != "ARG" && toks[4] != "MOD"))
      throw TableError(TableError::Code::TableSyntaxError,
                       file + ":" + std::to_string(lineno) +
                           ": expected \"PARENT CHILD FTAG -> ARG|MOD\"");
    ArgRule r{toks[0], toks[1], toks[2], toks[4] == "ARG"};
    if (r.parent == "*" && r.child == "*" && r.ftag == "*") has_catch_all = true;
    arg_rules_.push_back(std::move(r));
  }
  if (!has_catch_all)
    throw TableError(TableError::Code::MissingCatchAll,
                     file + ": no catch-all \"* * * -> ...\" rule");
}

void RuleTables::parse_tagset(const std::string& text, const std::string& file) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = strip_comment(line);
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (toks.size() < 3 || toks.size() > 4 || toks[1] != "->")
      throw TableError(TableError::Code::TableSyntaxError,
                       file + ":" + std::to_string(lineno) +
                           ": expected \"POS -> pos [PHRASE]\"");
    TagMapping m;
    m.pos = toks[2];
    if (toks.size() == 4) m.phrase = toks[3];
    tagset_[toks[0]] = m;
    if (m.phrase == "PUNCT") punct_pos_.insert(toks[0]);
  }
  // Normalized trees carry the PUNCT label itself as the pre-terminal tag.
  if (!punct_pos_.empty()) punct_pos_.insert("PUNCT");
}

const RuleTables::TagMapping* RuleTables::tag_mapping(const std::string& pos) const {
  auto it = tagset_.find(pos);
  return it == tagset_.end() ? nullptr : &it->second;
}

std::size_t RuleTables::head_child(const Label& parent,
                                   std::span<const Label> children) const {
  if (children.empty()) return 0;
  auto non_punct = [&](std::size_t i) { return !is_punct_pos(children[i].category); };
  auto scan = [&](bool right, const std::string& cat) -> std::ptrdiff_t {
    if (!right) {
      for (std::size_t i = 0; i < children.size(); ++i)
        if ((cat == "*" && non_punct(i)) || (cat != "*" && children[i].category == cat))
          return static_cast<std::ptrdiff_t>(i);
    } else {
      for (std::size_t i = children.size(); i-- > 0;)
        if ((cat == "*" && non_punct(i)) || (cat != "*" && children[i].category == cat))
          return static_cast<std::ptrdiff_t>(i);
    }
    return -1;
  };

  auto it = head_rules_.find(parent.category);
  if (it != head_rules_.end()) {
    for (const auto& group : it->second) {
      for (const auto& cat : group.categories) {
        auto hit = scan(group.scan_right, cat);
        if (hit >= 0) return static_cast<std::size_t>(hit);
      }
    }
  }
  // Fallback: leftmost non-punct child, else leftmost.
  auto hit = scan(false, "*");
  return hit >= 0 ? static_cast<std::size_t>(hit) : 0;
}

std::size_t RuleTables::head_child(const Label& parent,
                                   const std::vector<SyntaxTree>& children) const {
  std::vector<Label> labels;
  labels.reserve(children.size());
  for (const auto& c : children) {
    if (c.is_preterminal())
      labels.push_back(Label(c.label.category));
    else
      labels.push_back(c.label);
  }
  return head_child(parent, labels);
}

ChildRole RuleTables::classify_child(const Label& parent, const Label& child,
                                     bool child_is_preterminal, bool is_head) const {
  if (is_head) return ChildRole::Head;
  (void)child_is_preterminal;
  if (is_punct_pos(child.category)) return ChildRole::Punct;
  for (const auto& r : arg_rules_) {
    if (!pattern_match(r.parent, parent.category)) continue;
    if (!pattern_match(r.child, child.category)) continue;
    if (r.ftag != "*" && !child.has_ftag(r.ftag)) continue;
    return r.argument ? ChildRole::Argument : ChildRole::Modifier;
  }
  return ChildRole::Modifier;  // unreachable: loader enforces a catch-all
}

ChildRole RuleTables::classify_child(const Label& parent, const SyntaxTree& child,
                                     bool is_head) const {
  return classify_child(parent, child.label, child.is_preterminal(), is_head);
}

std::string RuleTables::dump_head_rules() const {
  std::ostringstream out;
  out << "# parent  dir cats... ; dir cats... ; ...\n";
  for (const auto& [parent, groups] : head_rules_) {
    out << parent;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      out << (g == 0 ? " " : " ; ") << (groups[g].scan_right ? "right" : "left");
      for (const auto& c : groups[g].categories) out << ' ' << c;
    }
    out << '\n';
  }
  return out.str();
}

std::string RuleTables::dump_arg_rules() const {
  std::ostringstream out;
  out << "# parent child ftag -> ARG|MOD\n";
  for (const auto& r : arg_rules_)
    out << r.parent << ' ' << r.child << ' ' << r.ftag << " -> "
        << (r.argument ? "ARG" : "MOD") << '\n';
  return out.str();
}

std::string RuleTables::dump_tagset() const {
  std::ostringstream out;
  out << "# POS -> pos PHRASE\n";
  for (const auto& [pos, m] : tagset_) {
    out << pos << " -> " << m.pos;
    if (!m.phrase.empty()) out << ' ' << m.phrase;
    out << '\n';
  }
  return out.str();
}

}  // namespace tagbank
