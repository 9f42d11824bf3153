#ifndef TAGBANK_DERIVATION_HPP
#define TAGBANK_DERIVATION_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tagbank/elementary.hpp"

namespace tagbank {

class CompositionError : public std::runtime_error {
 public:
  enum class Code {
    CategoryMismatch,
    NotASite,
    BadAddress,
    DisconnectedDerivation,
    OverlappingSpans,
  };
  CompositionError(Code code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

// History of tree combinations: one node per elementary tree (keyed by its
// anchor token), edges carrying the oracle attachments.
struct DerivationTree {
  std::vector<int> anchors;
  std::vector<AttachmentRecord> edges;
  int root_anchor = 0;
};

// Classic substitution: the frontier site at `site` is replaced by the
// filler's shape. Throws NotASite / CategoryMismatch.
SyntaxTree substitute(const SyntaxTree& host, const GornAddress& site,
                      const ElementaryTree& filler);

// Adjunction at an internal node. Layered mode wraps the host subtree in the
// auxiliary tree (visible doubling); sister mode splices the auxiliary's
// non-foot children in flat on the foot's side. Throws CategoryMismatch /
// BadAddress.
SyntaxTree adjoin(const SyntaxTree& host, const GornAddress& node,
                  const ElementaryTree& aux, AdjoinMode mode);

struct ComposeResult {
  DerivationTree derivation;
  SyntaxTree derived;
};

// Replays the oracle records over the elementary trees: substitutions first,
// then adjunctions innermost-out, ties broken by anchor. The derived tree
// equals the normalized source tree exactly.
ComposeResult compose(const std::vector<ElementaryTree>& etrees,
                      const std::vector<AttachmentRecord>& records,
                      int root_anchor);

// Replays records in the given explicit order (indices into `records`);
// returns nullopt if some operation's target is not present when its turn
// comes. Used to check order independence.
std::optional<SyntaxTree> compose_in_order(
    const std::vector<ElementaryTree>& etrees,
    const std::vector<AttachmentRecord>& records, int root_anchor,
    const std::vector<std::size_t>& order);

// Applies the given records onto an existing host shape until fixpoint;
// returns false if any record could not be applied.
bool replay_onto(SyntaxTree& host, const std::vector<ElementaryTree>& etrees,
                 std::vector<AttachmentRecord> records);

// hd(i) = anchor of i's parent elementary tree; the root anchor maps to 0.
std::vector<int> heads_from_derivation(const DerivationTree& d);

// Indented "token <-op@address- parent" debug rendering.
std::string dump_derivation(const DerivationTree& d,
                            const std::vector<ElementaryTree>& etrees);

}  // namespace tagbank

#endif
