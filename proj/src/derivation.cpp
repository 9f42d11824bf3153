#include "tagbank/derivation.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace tagbank {

namespace {

const std::string& bare(const Label& l) { return l.category; }

SyntaxTree* find_by_id(SyntaxTree& t, int node_id) {
  if (t.node_id == node_id && t.mark != SyntaxTree::Mark::Foot) return &t;
  for (auto& c : t.children)
    if (auto* hit = find_by_id(c, node_id)) return hit;
  return nullptr;
}

SyntaxTree* find_foot(SyntaxTree& t) {
  if (t.mark == SyntaxTree::Mark::Foot) return &t;
  for (auto& c : t.children)
    if (auto* hit = find_foot(c)) return hit;
  return nullptr;
}

// Children of a composed node trace back to normalized-tree ids assigned in
// preorder, so sibling surface order == ascending subtree-root id. Sister
// splices keep that order, which makes replay order-independent.
void splice_by_id(SyntaxTree& host, std::vector<SyntaxTree> incoming) {
  for (auto& in : incoming) {
    auto it = std::find_if(host.children.begin(), host.children.end(),
                           [&](const SyntaxTree& c) { return c.node_id > in.node_id; });
    host.children.insert(it, std::move(in));
  }
}

void apply_substitution(SyntaxTree& site, const ElementaryTree& filler) {
  if (site.mark != SyntaxTree::Mark::SubstSite)
    throw CompositionError(CompositionError::Code::NotASite,
                           "substitution target is not an open site");
  if (filler.kind != EtreeKind::Alpha)
    throw CompositionError(CompositionError::Code::NotASite,
                           "substitution filler must be an initial tree");
  if (bare(site.label) != bare(filler.shape.label))
    throw CompositionError(CompositionError::Code::CategoryMismatch,
                           "substitution category mismatch: site " +
                               site.label.str() + " vs " + filler.shape.label.str());
  site = filler.shape;
}

void apply_layered(SyntaxTree& node, const ElementaryTree& aux) {
  if (bare(node.label) != bare(aux.shape.label))
    throw CompositionError(CompositionError::Code::CategoryMismatch,
                           "adjunction category mismatch: host " +
                               node.label.str() + " vs " + aux.shape.label.str());
  SyntaxTree wrapped = aux.shape;
  SyntaxTree* foot = find_foot(wrapped);
  if (!foot)
    throw CompositionError(CompositionError::Code::BadAddress,
                           "auxiliary tree without foot node");
  *foot = std::move(node);
  node = std::move(wrapped);
}

void apply_sister(SyntaxTree& node, const ElementaryTree& aux, bool by_id) {
  if (bare(node.label) != bare(aux.shape.label))
    throw CompositionError(CompositionError::Code::CategoryMismatch,
                           "adjunction category mismatch: host " +
                               node.label.str() + " vs " + aux.shape.label.str());
  std::vector<SyntaxTree> incoming;
  bool foot_left = false;
  bool seen_nonfoot = false;
  for (const auto& c : aux.shape.children) {
    if (c.mark == SyntaxTree::Mark::Foot) {
      foot_left = !seen_nonfoot;
      continue;
    }
    seen_nonfoot = true;
    incoming.push_back(c);
  }
  if (by_id) {
    splice_by_id(node, std::move(incoming));
  } else if (foot_left) {
    for (auto& in : incoming) node.children.push_back(std::move(in));
  } else {
    node.children.insert(node.children.begin(),
                         std::make_move_iterator(incoming.begin()),
                         std::make_move_iterator(incoming.end()));
  }
}

const ElementaryTree* tree_for_anchor(const std::vector<ElementaryTree>& etrees,
                                      int anchor) {
  for (const auto& e : etrees)
    if (e.anchor == anchor) return &e;
  return nullptr;
}

void check_kind_beta(const ElementaryTree& aux) {
  if (aux.kind != EtreeKind::Beta)
    throw CompositionError(CompositionError::Code::BadAddress,
                           "adjunction requires an auxiliary tree");
}

// One replay step; returns false when the record's target is absent.
bool try_apply(SyntaxTree& tree, const AttachmentRecord& r,
               const ElementaryTree& child) {
  SyntaxTree* target = find_by_id(tree, r.target_node);
  if (!target) return false;
  if (r.op == AttachOp::Substitution) {
    if (target->mark != SyntaxTree::Mark::SubstSite) return false;
    apply_substitution(*target, child);
  } else {
    if (target->mark != SyntaxTree::Mark::None || target->is_preterminal())
      return false;
    check_kind_beta(child);
    if (r.mode == AdjoinMode::Layered)
      apply_layered(*target, child);
    else
      apply_sister(*target, child, /*by_id=*/true);
  }
  return true;
}

}  // namespace

SyntaxTree substitute(const SyntaxTree& host, const GornAddress& site,
                      const ElementaryTree& filler) {
  SyntaxTree out = host;
  SyntaxTree* node = node_at(out, site);
  if (!node)
    throw CompositionError(CompositionError::Code::BadAddress,
                           "no node at address " + site.str());
  apply_substitution(*node, filler);
  return out;
}

SyntaxTree adjoin(const SyntaxTree& host, const GornAddress& addr,
                  const ElementaryTree& aux, AdjoinMode mode) {
  SyntaxTree out = host;
  SyntaxTree* node = node_at(out, addr);
  if (!node)
    throw CompositionError(CompositionError::Code::BadAddress,
                           "no node at address " + addr.str());
  if (node->is_preterminal() || node->mark != SyntaxTree::Mark::None)
    throw CompositionError(CompositionError::Code::BadAddress,
                           "adjunction target must be an internal phrase node");
  check_kind_beta(aux);
  if (mode == AdjoinMode::Layered)
    apply_layered(*node, aux);
  else
    apply_sister(*node, aux, /*by_id=*/false);
  return out;
}

bool replay_onto(SyntaxTree& host, const std::vector<ElementaryTree>& etrees,
                 std::vector<AttachmentRecord> records) {
  std::vector<bool> done(records.size(), false);
  std::size_t remaining = records.size();
  while (remaining > 0) {
    bool progressed = false;
    // Substitutions take priority; both passes scan in anchor order.
    for (int pass = 0; pass < 2 && !progressed; ++pass) {
      for (std::size_t i = 0; i < records.size(); ++i) {
        if (done[i]) continue;
        bool is_subst = records[i].op == AttachOp::Substitution;
        if ((pass == 0) != is_subst) continue;
        const ElementaryTree* child = tree_for_anchor(etrees, records[i].child_anchor);
        if (!child) continue;
        if (try_apply(host, records[i], *child)) {
          done[i] = true;
          --remaining;
          progressed = true;
          break;
        }
      }
    }
    if (!progressed) return false;
  }
  return true;
}

ComposeResult compose(const std::vector<ElementaryTree>& etrees,
                      const std::vector<AttachmentRecord>& records,
                      int root_anchor) {
  const ElementaryTree* root = tree_for_anchor(etrees, root_anchor);
  if (!root || root->kind != EtreeKind::Alpha)
    throw CompositionError(CompositionError::Code::DisconnectedDerivation,
                           "no parentless initial tree to start from");
  ComposeResult out;
  out.derived = root->shape;
  std::vector<AttachmentRecord> ordered = records;
  std::sort(ordered.begin(), ordered.end(),
            [](const AttachmentRecord& a, const AttachmentRecord& b) {
              return a.child_anchor < b.child_anchor;
            });
  if (!replay_onto(out.derived, etrees, ordered))
    throw CompositionError(CompositionError::Code::DisconnectedDerivation,
                           "derivation records do not connect to the root tree");

  out.derivation.root_anchor = root_anchor;
  out.derivation.edges = ordered;
  for (const auto& e : etrees) out.derivation.anchors.push_back(e.anchor);
  std::sort(out.derivation.anchors.begin(), out.derivation.anchors.end());
  return out;
}

std::optional<SyntaxTree> compose_in_order(
    const std::vector<ElementaryTree>& etrees,
    const std::vector<AttachmentRecord>& records, int root_anchor,
    const std::vector<std::size_t>& order) {
  const ElementaryTree* root = tree_for_anchor(etrees, root_anchor);
  if (!root) return std::nullopt;
  SyntaxTree tree = root->shape;
  for (std::size_t idx : order) {
    if (idx >= records.size()) return std::nullopt;
    const ElementaryTree* child = tree_for_anchor(etrees, records[idx].child_anchor);
    if (!child) return std::nullopt;
    if (!try_apply(tree, records[idx], *child)) return std::nullopt;
  }
  return tree;
}

std::vector<int> heads_from_derivation(const DerivationTree& d) {
  int n = 0;
  for (int a : d.anchors) n = std::max(n, a);
  std::vector<int> heads(static_cast<std::size_t>(n), 0);
  for (const auto& e : d.edges)
    if (e.child_anchor >= 1 && e.child_anchor <= n)
      heads[e.child_anchor - 1] = e.parent_anchor;
  if (d.root_anchor >= 1 && d.root_anchor <= n) heads[d.root_anchor - 1] = 0;
  return heads;
}

std::string dump_derivation(const DerivationTree& d,
                            const std::vector<ElementaryTree>& etrees) {
  std::map<int, std::vector<const AttachmentRecord*>> by_parent;
  for (const auto& e : d.edges) by_parent[e.parent_anchor].push_back(&e);

  std::ostringstream out;
  auto token_of = [&](int anchor) -> std::string {
    const ElementaryTree* e = tree_for_anchor(etrees, anchor);
    if (!e) return "?";
    for (const auto* leaf : e->shape.leaves())
      if (leaf->index == anchor) return leaf->token;
    return "?";
  };
  auto rec = [&](auto&& self, int anchor, int depth,
                 const AttachmentRecord* via) -> void {
    out << std::string(static_cast<std::size_t>(depth) * 2, ' ') << token_of(anchor);
    if (via) {
      out << " <-"
          << (via->op == AttachOp::Substitution ? "subst" : "adjoin") << "@"
          << via->address.str() << "- " << token_of(via->parent_anchor);
    }
    out << '\n';
    auto it = by_parent.find(anchor);
    if (it == by_parent.end()) return;
    for (const auto* e : it->second) self(self, e->child_anchor, depth + 1, e);
  };
  rec(rec, d.root_anchor, 0, nullptr);
  return out.str();
}

}  // namespace tagbank
