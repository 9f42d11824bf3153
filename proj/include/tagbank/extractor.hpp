#ifndef TAGBANK_EXTRACTOR_HPP
#define TAGBANK_EXTRACTOR_HPP

#include <utility>
#include <vector>

#include "tagbank/elementary.hpp"
#include "tagbank/rule_tables.hpp"
#include "tagbank/syntax_tree.hpp"

namespace tagbank {

struct NormalizeLog {
  int pruned_empty_elements = 0;
};

// Rewrites a treebank tree into the TAG-compatible derived target shape:
// empty elements pruned, punctuation relabeled and layered onto the maximal
// constituent ending at the preceding token (sentence-final punctuation at
// the root), phrasal modifiers layered head-outward as Chomsky-adjunction
// levels, single-word modifiers left flat, and determiner NPs given an inner
// NP over the remaining pre-head modifiers and head noun. Token indices are
// renumbered contiguously and stable node ids assigned in preorder.
SyntaxTree normalize(const SyntaxTree& tree, const RuleTables& tables,
                     NormalizeLog* log = nullptr);

struct ExtractionResult {
  std::vector<ElementaryTree> etrees;        // in anchor order, one per token
  std::vector<AttachmentRecord> records;
  int root_anchor = 0;                       // the parentless alpha

  const ElementaryTree* by_anchor(int token) const;
};

// Decomposes a normalized tree into one lexically anchored elementary tree
// per token plus the oracle attachment records that rebuild it.
ExtractionResult extract(const SyntaxTree& normalized, const RuleTables& tables);

// MWE mode: merge the canonical per-token trees over the span [first,last]
// into one multi-anchor tree by replaying the attachments internal to the
// span. Fails (returns nullopt) when the span is not a connected piece of
// the derivation.
std::optional<ElementaryTree> merge_span(const ExtractionResult& extraction,
                                         int first, int last);

}  // namespace tagbank

#endif
