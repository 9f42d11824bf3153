#include "tagbank/extractor.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>

#include "tagbank/derivation.hpp"

namespace tagbank {

namespace {

const std::string& bare(const Label& l) { return l.category; }

bool is_nominal_pos(const std::string& pos) {
  return pos == "NN" || pos == "NNS" || pos == "NNP" || pos == "NNPS";
}

// ---- normalization -------------------------------------------------------

std::optional<SyntaxTree> prune_empties(const SyntaxTree& t, NormalizeLog* log) {
  if (t.is_preterminal()) {
    if (t.label.category == "-NONE-") {
      if (log) ++log->pruned_empty_elements;
      return std::nullopt;
    }
    return t;
  }
  SyntaxTree out;
  out.label = t.label;
  for (const auto& c : t.children) {
    auto r = prune_empties(c, log);
    if (r) out.children.push_back(std::move(*r));
  }
  if (out.children.empty()) return std::nullopt;
  return out;
}

void renumber_tokens(SyntaxTree& t, int& next) {
  if (t.is_preterminal()) {
    t.index = ++next;
    return;
  }
  for (auto& c : t.children) renumber_tokens(c, next);
}

void assign_ids(SyntaxTree& t, int& next) {
  t.node_id = next++;
  for (auto& c : t.children) assign_ids(c, next);
}

// Phrasal restructuring. Punctuation pre-terminals are relabeled and pulled
// out into `puncts` for global re-attachment; returns nullopt if the node
// dissolves (everything under it was punctuation).
std::optional<SyntaxTree> restructure(const SyntaxTree& node, const RuleTables& T,
                                      std::vector<SyntaxTree>& puncts) {
  if (node.is_preterminal()) {
    if (T.is_punct_pos(node.label.category)) {
      SyntaxTree p = node;
      if (const auto* m = T.tag_mapping(node.label.category); m && !m->phrase.empty())
        p.label = Label(m->phrase);
      puncts.push_back(std::move(p));
      return std::nullopt;
    }
    return node;
  }

  std::vector<SyntaxTree> kids;
  int removed = 0;
  for (const auto& c : node.children) {
    auto r = restructure(c, T, puncts);
    if (r)
      kids.push_back(std::move(*r));
    else
      ++removed;
  }
  if (kids.empty()) return std::nullopt;

  std::size_t h = T.head_child(node.label, kids);
  std::vector<SyntaxTree> core_children;
  std::vector<std::pair<std::size_t, SyntaxTree>> layered;  // original position
  std::size_t head_core_pos = 0;
  for (std::size_t i = 0; i < kids.size(); ++i) {
    if (i == h) {
      head_core_pos = core_children.size();
      core_children.push_back(std::move(kids[i]));
      continue;
    }
    ChildRole role = T.classify_child(node.label, kids[i], false);
    if (role == ChildRole::Modifier && !kids[i].is_preterminal())
      layered.emplace_back(i, std::move(kids[i]));
    else
      core_children.push_back(std::move(kids[i]));
  }

  bool extracted_any = !layered.empty() || removed > 0;
  SyntaxTree core;
  if (core_children.size() == 1 && extracted_any &&
      core_children[0].is_phrase() &&
      bare(core_children[0].label) == bare(node.label)) {
    core = std::move(core_children[0]);  // collapse, the layer recreates it
  } else {
    core.label = node.label;
    core.children = std::move(core_children);

    // Determiner NPs: wrap remaining pre-head modifiers plus head noun in an
    // inner NP so the determiner substitutes above the modified nominal.
    if (bare(core.label) == "NP" && core.children.size() >= 3) {
      std::size_t head_i = T.head_child(core.label, core.children);
      const SyntaxTree& hc = core.children[head_i];
      std::ptrdiff_t dt_i = -1;
      for (std::size_t i = 0; i < head_i; ++i) {
        const auto& c = core.children[i];
        if (c.is_preterminal() &&
            (c.label.category == "DT" || c.label.category == "PDT")) {
          dt_i = static_cast<std::ptrdiff_t>(i);
          break;
        }
      }
      bool has_mid_modifier = false;
      if (dt_i >= 0 && hc.is_preterminal() && is_nominal_pos(hc.label.category)) {
        for (std::size_t i = dt_i + 1; i < head_i; ++i)
          if (T.classify_child(core.label, core.children[i], false) ==
              ChildRole::Modifier)
            has_mid_modifier = true;
      }
      if (has_mid_modifier) {
        SyntaxTree inner;
        inner.label = Label(bare(core.label));
        for (std::size_t i = dt_i + 1; i <= head_i; ++i)
          inner.children.push_back(std::move(core.children[i]));
        std::vector<SyntaxTree> rebuilt;
        for (std::size_t i = 0; i <= static_cast<std::size_t>(dt_i); ++i)
          rebuilt.push_back(std::move(core.children[i]));
        rebuilt.push_back(std::move(inner));
        for (std::size_t i = head_i + 1; i < core.children.size(); ++i)
          rebuilt.push_back(std::move(core.children[i]));
        core.children = std::move(rebuilt);
      }
    }
  }

  // Layer phrasal modifiers head-outward; post-head first on distance ties.
  std::sort(layered.begin(), layered.end(),
            [&](const auto& a, const auto& b) {
              auto dist = [&](std::size_t i) {
                return i > h ? i - h : h - i;
              };
              auto da = dist(a.first), db = dist(b.first);
              if (da != db) return da < db;
              return (a.first > h) > (b.first > h);
            });
  SyntaxTree acc = std::move(core);
  for (auto& [pos, mod] : layered) {
    SyntaxTree layer;
    layer.label = node.label;
    if (pos < h) {
      layer.children.push_back(std::move(mod));
      layer.children.push_back(std::move(acc));
    } else {
      layer.children.push_back(std::move(acc));
      layer.children.push_back(std::move(mod));
    }
    acc = std::move(layer);
  }
  return acc;
}

// Highest node whose span ends at `tok` (preorder => outermost first).
SyntaxTree* highest_ending_at(SyntaxTree& t, int tok) {
  if (t.last_token() == tok) return &t;
  for (auto& c : t.children)
    if (c.first_token() <= tok && tok <= c.last_token())
      return highest_ending_at(c, tok);
  return nullptr;
}

SyntaxTree* highest_starting_at(SyntaxTree& t, int tok) {
  if (t.first_token() == tok) return &t;
  for (auto& c : t.children)
    if (c.first_token() <= tok && tok <= c.last_token())
      return highest_starting_at(c, tok);
  return nullptr;
}

void wrap_with_punct(SyntaxTree& target, SyntaxTree punct, bool punct_right) {
  SyntaxTree inner = std::move(target);
  SyntaxTree layer;
  layer.label = inner.is_preterminal() ? Label(inner.label.category) : inner.label;
  if (punct_right) {
    layer.children.push_back(std::move(inner));
    layer.children.push_back(std::move(punct));
  } else {
    layer.children.push_back(std::move(punct));
    layer.children.push_back(std::move(inner));
  }
  target = std::move(layer);
}

}  // namespace

SyntaxTree normalize(const SyntaxTree& tree, const RuleTables& tables,
                     NormalizeLog* log) {
  auto pruned = prune_empties(tree, log);
  SyntaxTree base = pruned ? std::move(*pruned) : tree;
  int tok = 0;
  renumber_tokens(base, tok);
  int ntokens = tok;

  std::vector<SyntaxTree> puncts;
  auto restructured = restructure(base, tables, puncts);

  SyntaxTree out;
  if (!restructured) {
    // Degenerate all-punctuation sentence: chain the tokens back up.
    assert(!puncts.empty());
    out = std::move(puncts.front());
    for (std::size_t i = 1; i < puncts.size(); ++i)
      wrap_with_punct(out, std::move(puncts[i]), true);
  } else {
    out = std::move(*restructured);
    std::sort(puncts.begin(), puncts.end(),
              [](const SyntaxTree& a, const SyntaxTree& b) { return a.index < b.index; });
    for (auto& p : puncts) {
      int t = p.index;
      if (t == ntokens) {
        wrap_with_punct(out, std::move(p), true);  // sentence-final: at root
      } else if (t == 1) {
        SyntaxTree* target = highest_starting_at(out, 2);
        if (!target) target = &out;
        if (target->is_preterminal() && target != &out) {
          // cannot wrap mid-tree pre-terminals cleanly; fall back to root
          target = &out;
        }
        wrap_with_punct(*target, std::move(p), false);
      } else {
        SyntaxTree* target = highest_ending_at(out, t - 1);
        if (!target) target = &out;
        wrap_with_punct(*target, std::move(p), true);
      }
    }
  }

  int id = 0;
  assign_ids(out, id);
  return out;
}

// ---- extraction ----------------------------------------------------------

namespace {

struct ExtractCtx {
  const RuleTables& T;
  std::vector<ElementaryTree> etrees;
  std::vector<AttachmentRecord> records;
  int ntokens = 0;
};

int lexhead(const SyntaxTree& node, const RuleTables& T) {
  if (node.is_preterminal()) return node.index;
  std::size_t h = T.head_child(node.label, node.children);
  return lexhead(node.children[h], T);
}

bool is_layer(const SyntaxTree& node, const RuleTables& T, std::size_t& inner_i,
              std::size_t& mod_i) {
  if (!node.is_phrase() || node.children.size() != 2) return false;
  std::size_t h = T.head_child(node.label, node.children);
  const SyntaxTree& H = node.children[h];
  const SyntaxTree& o = node.children[1 - h];
  if (!H.is_phrase()) return false;
  if (bare(H.label) != bare(node.label)) return false;
  ChildRole role = T.classify_child(node.label, o, false);
  if (role != ChildRole::Modifier && role != ChildRole::Punct) return false;
  inner_i = h;
  mod_i = 1 - h;
  return true;
}

void finalize_etree(ElementaryTree& e);
SyntaxTree spine(const SyntaxTree& node, ElementaryTree& e, ExtractCtx& ctx);

int build_alpha(const SyntaxTree& node, ExtractCtx& ctx) {
  ElementaryTree e;
  e.kind = EtreeKind::Alpha;
  e.shape = spine(node, e, ctx);
  finalize_etree(e);
  ctx.etrees.push_back(std::move(e));
  return ctx.etrees.back().anchor;
}

int punct_parent(int punct_tok, const SyntaxTree& modified, ExtractCtx& ctx) {
  if (punct_tok == ctx.ntokens) return lexhead(modified, ctx.T);  // at the root
  if (punct_tok > 1) return punct_tok - 1;
  return punct_tok + 1 <= ctx.ntokens ? punct_tok + 1 : lexhead(modified, ctx.T);
}

// Sister beta for a flat modifier (or stray punctuation) child of `node`.
void build_beta_sister(const SyntaxTree& node, const SyntaxTree& child,
                       std::size_t child_i, std::size_t head_i, ExtractCtx& ctx,
                       bool punct) {
  ElementaryTree b;
  b.kind = EtreeKind::Beta;
  SyntaxTree foot;
  foot.label = Label(bare(node.label));
  foot.mark = SyntaxTree::Mark::Foot;
  foot.node_id = node.node_id;
  SyntaxTree mod_shape = spine(child, b, ctx);
  SyntaxTree root;
  root.label = node.label;
  root.node_id = node.node_id;
  if (child_i < head_i) {
    root.children.push_back(std::move(mod_shape));
    root.children.push_back(std::move(foot));
  } else {
    root.children.push_back(std::move(foot));
    root.children.push_back(std::move(mod_shape));
  }
  b.shape = std::move(root);
  finalize_etree(b);

  AttachmentRecord r;
  r.child_anchor = b.anchor;
  r.parent_anchor = punct ? punct_parent(b.anchor, node, ctx) : lexhead(node, ctx.T);
  r.op = AttachOp::Adjunction;
  r.mode = AdjoinMode::Sister;
  r.target_node = node.node_id;
  ctx.etrees.push_back(std::move(b));
  ctx.records.push_back(r);
}

// Layered beta for a Chomsky-adjunction level (layer node owned by the
// modifier's anchor; the inner child continues the host spine).
void build_beta_layer(const SyntaxTree& node, const SyntaxTree& inner,
                      const SyntaxTree& mod, bool inner_left, ExtractCtx& ctx) {
  bool punct = mod.is_preterminal() && ctx.T.is_punct_pos(mod.label.category);
  ElementaryTree b;
  b.kind = EtreeKind::Beta;
  SyntaxTree foot;
  foot.label = Label(bare(node.label));
  foot.mark = SyntaxTree::Mark::Foot;
  foot.node_id = inner.node_id;
  SyntaxTree mod_shape = spine(mod, b, ctx);
  SyntaxTree root;
  root.label = node.label;
  root.node_id = node.node_id;
  if (inner_left) {
    root.children.push_back(std::move(foot));
    root.children.push_back(std::move(mod_shape));
  } else {
    root.children.push_back(std::move(mod_shape));
    root.children.push_back(std::move(foot));
  }
  b.shape = std::move(root);
  finalize_etree(b);

  AttachmentRecord r;
  r.child_anchor = b.anchor;
  r.parent_anchor = punct ? punct_parent(b.anchor, inner, ctx) : lexhead(inner, ctx.T);
  r.op = AttachOp::Adjunction;
  r.mode = AdjoinMode::Layered;
  r.target_node = inner.node_id;
  ctx.etrees.push_back(std::move(b));
  ctx.records.push_back(r);
}

SyntaxTree spine(const SyntaxTree& node, ElementaryTree& e, ExtractCtx& ctx) {
  if (node.is_preterminal()) {
    if (e.anchor == 0) e.anchor = node.index;
    return node;
  }
  std::size_t inner_i = 0, mod_i = 0;
  if (is_layer(node, ctx.T, inner_i, mod_i)) {
    build_beta_layer(node, node.children[inner_i], node.children[mod_i],
                     inner_i < mod_i, ctx);
    return spine(node.children[inner_i], e, ctx);
  }

  std::size_t h = ctx.T.head_child(node.label, node.children);
  SyntaxTree out;
  out.label = node.label;
  out.node_id = node.node_id;
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    const SyntaxTree& c = node.children[i];
    if (i == h) {
      out.children.push_back(spine(c, e, ctx));
      continue;
    }
    ChildRole role = ctx.T.classify_child(node.label, c, false);
    if (role == ChildRole::Argument) {
      SyntaxTree site;
      site.label = c.is_preterminal() ? Label(c.label.category) : c.label;
      site.mark = SyntaxTree::Mark::SubstSite;
      site.node_id = c.node_id;
      out.children.push_back(std::move(site));

      int child_anchor = build_alpha(c, ctx);
      AttachmentRecord r;
      r.child_anchor = child_anchor;
      r.parent_anchor = lexhead(node, ctx.T);
      r.op = AttachOp::Substitution;
      r.target_node = c.node_id;
      ctx.records.push_back(r);
    } else {
      build_beta_sister(node, c, i, h, ctx, role == ChildRole::Punct);
    }
  }
  return out;
}

void walk_addresses(const SyntaxTree& t, GornAddress& cur, ElementaryTree& e) {
  if (t.mark == SyntaxTree::Mark::Foot) {
    e.foot = cur;
    return;
  }
  if (t.mark == SyntaxTree::Mark::SubstSite) {
    e.subst_sites.push_back(cur);
    return;
  }
  for (std::size_t i = 0; i < t.children.size(); ++i) {
    cur.path.push_back(static_cast<int>(i));
    walk_addresses(t.children[i], cur, e);
    cur.path.pop_back();
  }
}

void finalize_etree(ElementaryTree& e) {
  e.anchor_end = e.anchor;
  e.foot.reset();
  e.subst_sites.clear();
  GornAddress cur;
  walk_addresses(e.shape, cur, e);
}

void collect_owned(const SyntaxTree& t, int anchor, GornAddress& cur,
                   std::map<int, std::pair<int, GornAddress>>& node_owner,
                   std::map<int, std::pair<int, GornAddress>>& site_owner) {
  if (t.mark == SyntaxTree::Mark::Foot) return;
  if (t.mark == SyntaxTree::Mark::SubstSite) {
    site_owner[t.node_id] = {anchor, cur};
    return;
  }
  node_owner[t.node_id] = {anchor, cur};
  for (std::size_t i = 0; i < t.children.size(); ++i) {
    cur.path.push_back(static_cast<int>(i));
    collect_owned(t.children[i], anchor, cur, node_owner, site_owner);
    cur.path.pop_back();
  }
}

}  // namespace

const ElementaryTree* ExtractionResult::by_anchor(int token) const {
  for (const auto& e : etrees)
    if (e.anchor == token) return &e;
  return nullptr;
}

ExtractionResult extract(const SyntaxTree& normalized, const RuleTables& tables) {
  ExtractCtx ctx{tables, {}, {}, 0};
  for (const auto* leaf : normalized.leaves())
    ctx.ntokens = std::max(ctx.ntokens, leaf->index);

  ExtractionResult out;
  out.root_anchor = build_alpha(normalized, ctx);
  out.etrees = std::move(ctx.etrees);
  out.records = std::move(ctx.records);

  std::sort(out.etrees.begin(), out.etrees.end(),
            [](const ElementaryTree& a, const ElementaryTree& b) {
              return a.anchor < b.anchor;
            });
  std::sort(out.records.begin(), out.records.end(),
            [](const AttachmentRecord& a, const AttachmentRecord& b) {
              return a.child_anchor < b.child_anchor;
            });

  std::map<int, std::pair<int, GornAddress>> node_owner, site_owner;
  for (const auto& e : out.etrees) {
    GornAddress cur;
    collect_owned(e.shape, e.anchor, cur, node_owner, site_owner);
  }
  for (auto& r : out.records) {
    const auto& owners = r.op == AttachOp::Substitution ? site_owner : node_owner;
    auto it = owners.find(r.target_node);
    if (it != owners.end()) {
      r.host_anchor = it->second.first;
      r.address = it->second.second;
    }
  }
  return out;
}

std::optional<ElementaryTree> merge_span(const ExtractionResult& extraction,
                                         int first, int last) {
  if (first >= last) return std::nullopt;
  auto in_span = [&](int a) { return a >= first && a <= last; };

  int top = 0;
  std::vector<const AttachmentRecord*> internal;
  for (int a = first; a <= last; ++a) {
    if (!extraction.by_anchor(a)) return std::nullopt;
    bool has_parent_inside = false;
    for (const auto& r : extraction.records)
      if (r.child_anchor == a && in_span(r.parent_anchor)) {
        has_parent_inside = true;
        if (!in_span(r.host_anchor)) return std::nullopt;
        internal.push_back(&r);
      }
    if (!has_parent_inside) {
      if (top != 0) return std::nullopt;  // disconnected span
      top = a;
    }
  }
  if (top == 0) return std::nullopt;

  ElementaryTree merged = *extraction.by_anchor(top);
  std::vector<ElementaryTree> members;
  std::vector<AttachmentRecord> recs;
  for (int a = first; a <= last; ++a) members.push_back(*extraction.by_anchor(a));
  for (const auto* r : internal) recs.push_back(*r);
  if (!replay_onto(merged.shape, members, recs)) return std::nullopt;
  merged.anchor = first;
  merged.anchor_end = last;
  GornAddress cur;
  merged.foot.reset();
  merged.subst_sites.clear();
  walk_addresses(merged.shape, cur, merged);
  return merged;
}

}  // namespace tagbank
