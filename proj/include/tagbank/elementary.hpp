#ifndef TAGBANK_ELEMENTARY_HPP
#define TAGBANK_ELEMENTARY_HPP

#include <optional>
#include <string>
#include <vector>

#include "tagbank/syntax_tree.hpp"

namespace tagbank {

// Path of 0-based child indices; empty path = root.
struct GornAddress {
  std::vector<int> path;
  bool operator==(const GornAddress& o) const { return path == o.path; }
  std::string str() const;
};

const SyntaxTree* node_at(const SyntaxTree& tree, const GornAddress& addr);
SyntaxTree* node_at(SyntaxTree& tree, const GornAddress& addr);

// Finds the first node satisfying a predicate; returns true and fills addr.
bool find_node(const SyntaxTree& tree, const GornAddress& prefix,
               GornAddress& out, bool (*pred)(const SyntaxTree&));
bool find_node_by_id(const SyntaxTree& tree, int node_id, GornAddress& out);

enum class EtreeKind { Alpha, Beta };
enum class AttachOp { Substitution, Adjunction };
enum class AdjoinMode { Layered, Sister };

// One lexically anchored elementary tree. Shape nodes reuse SyntaxTree with
// frontier marks: SubstSite nodes are open argument slots, the Foot node
// (beta only) is where the host subtree reattaches. Shape nodes keep the
// stable node ids of the normalized tree they were cut from.
struct ElementaryTree {
  EtreeKind kind = EtreeKind::Alpha;
  SyntaxTree shape;
  int anchor = 0;       // token index of the (first) anchor
  int anchor_end = 0;   // == anchor except for merged MWE trees
  std::optional<GornAddress> foot;
  std::vector<GornAddress> subst_sites;
  std::string name;     // optional template identifier

  bool is_span() const { return anchor_end > anchor; }
};

// Attachment oracle record. parent_anchor is the derivation-tree head (the
// HD column); host_anchor owns the target node, which for punctuation can be
// a different tree than the dependency parent.
struct AttachmentRecord {
  int child_anchor = 0;
  int parent_anchor = 0;
  AttachOp op = AttachOp::Substitution;
  AdjoinMode mode = AdjoinMode::Layered;
  int target_node = -1;      // stable node id of the site / adjunction host
  int host_anchor = 0;       // anchor of the etree whose shape owns target
  GornAddress address;       // address of target within the host's shape
};

struct ExtractedGrammar {
  std::vector<std::string> sigma;      // anchor vocabulary
  std::vector<std::string> nonterminals;
  std::vector<std::pair<std::string, int>> initial;    // template -> count
  std::vector<std::pair<std::string, int>> auxiliary;
  std::string start = "S";
};

// Canonical de-lexicalized template, anchors replaced by a diamond:
// "α:(S NP-SBJ↓ (VP (VB ◇) NP↓ PP-CLR↓))".
std::string delexicalize(const ElementaryTree& etree);

// Lexicalized rendering of the shape (anchors kept), used for debug dumps.
std::string render_shape(const ElementaryTree& etree);

}  // namespace tagbank

#endif
