#include "tagbank/elementary.hpp"

#include <sstream>

namespace tagbank {

std::string GornAddress::str() const {
  if (path.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(path[i]);
  }
  return out;
}

const SyntaxTree* node_at(const SyntaxTree& tree, const GornAddress& addr) {
  const SyntaxTree* cur = &tree;
  for (int step : addr.path) {
    if (step < 0 || static_cast<std::size_t>(step) >= cur->children.size())
      return nullptr;
    cur = &cur->children[step];
  }
  return cur;
}

SyntaxTree* node_at(SyntaxTree& tree, const GornAddress& addr) {
  return const_cast<SyntaxTree*>(node_at(std::as_const(tree), addr));
}

namespace {

bool find_rec(const SyntaxTree& t, GornAddress& cur, GornAddress& out,
              bool (*pred)(const SyntaxTree&)) {
  if (pred(t)) {
    out = cur;
    return true;
  }
  for (std::size_t i = 0; i < t.children.size(); ++i) {
    cur.path.push_back(static_cast<int>(i));
    if (find_rec(t.children[i], cur, out, pred)) return true;
    cur.path.pop_back();
  }
  return false;
}

bool find_id_rec(const SyntaxTree& t, int node_id, GornAddress& cur,
                 GornAddress& out) {
  if (t.node_id == node_id) {
    out = cur;
    return true;
  }
  for (std::size_t i = 0; i < t.children.size(); ++i) {
    cur.path.push_back(static_cast<int>(i));
    if (find_id_rec(t.children[i], node_id, cur, out)) return true;
    cur.path.pop_back();
  }
  return false;
}

}  // namespace

bool find_node(const SyntaxTree& tree, const GornAddress& prefix, GornAddress& out,
               bool (*pred)(const SyntaxTree&)) {
  GornAddress cur = prefix;
  return find_rec(tree, cur, out, pred);
}

bool find_node_by_id(const SyntaxTree& tree, int node_id, GornAddress& out) {
  GornAddress cur;
  return find_id_rec(tree, node_id, cur, out);
}

namespace {

void render_rec(const SyntaxTree& t, bool delex, std::string& out) {
  switch (t.mark) {
    case SyntaxTree::Mark::SubstSite:
      out += t.label.str();
      out += "↓";  // ↓
      return;
    case SyntaxTree::Mark::Foot:
      out += t.label.category;
      out += '*';
      return;
    case SyntaxTree::Mark::None:
      break;
  }
  if (t.is_preterminal()) {
    out += '(';
    out += t.label.category;
    out += ' ';
    out += delex ? "◇" : t.token;  // ◇
    out += ')';
    return;
  }
  out += '(';
  out += t.label.str();
  for (const auto& c : t.children) {
    out += ' ';
    render_rec(c, delex, out);
  }
  out += ')';
}

std::string render(const ElementaryTree& e, bool delex) {
  std::string out = e.kind == EtreeKind::Alpha ? "α:" : "β:";  // α/β
  render_rec(e.shape, delex, out);
  return out;
}

}  // namespace

std::string delexicalize(const ElementaryTree& etree) { return render(etree, true); }

std::string render_shape(const ElementaryTree& etree) { return render(etree, false); }

}  // namespace tagbank
