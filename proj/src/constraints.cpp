#include "cgd/constraints.hpp"

#include <algorithm>
#include <functional>

#include "cgd/error.hpp"

namespace cgd {

// Booth-Lueker reduction in its plain recursive form: label the pertinent
// subtree bottom-up and rewrite it with the P/Q templates. Nothing here is
// tuned for speed; the sets involved are skeleton-sized.

PQTree::PQTree(const std::vector<int>& universe) : elements_(universe) {
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  std::vector<int> leaves;
  for (int e : elements_) {
    nodes_.push_back({Type::Leaf, e, {}});
    leaves.push_back(static_cast<int>(nodes_.size()) - 1);
  }
  leaf_of_ = leaves;
  if (leaves.size() == 1)
    root_ = leaves[0];
  else if (!leaves.empty())
    root_ = make(Type::P, leaves);
}

int PQTree::make(Type t, std::vector<int> children) {
  nodes_.push_back({t, -1, std::move(children)});
  count_.push_back(0);
  size_.push_back(0);
  return static_cast<int>(nodes_.size()) - 1;
}

int PQTree::group(const std::vector<int>& kids) {
  if (kids.size() == 1) return kids[0];
  return make(Type::P, kids);
}

int PQTree::tally(int x, const std::vector<char>& in) {
  if (nodes_[x].type == Type::Leaf) {
    size_[x] = 1;
    count_[x] = in[x] ? 1 : 0;
    return count_[x];
  }
  count_[x] = size_[x] = 0;
  for (int c : nodes_[x].children) {
    count_[x] += tally(c, in);
    size_[x] += size_[c];
  }
  return count_[x];
}

PQTree::Label PQTree::process(int x, bool is_root) {
  std::vector<Label> lab;
  for (int c : nodes_[x].children) {
    if (count_[c] == 0) {
      lab.push_back(Label::Empty);
    } else if (count_[c] == size_[c]) {
      lab.push_back(Label::Full);
    } else {
      if (process(c, false) == Label::Fail) return Label::Fail;
      lab.push_back(Label::Partial);
    }
  }
  std::vector<int> kids = nodes_[x].children;

  // Partial Q children are stored empty-side first, full-side last.
  auto flatten_into = [&](std::vector<int>& out, int y, bool reversed) {
    std::vector<int> ch = nodes_[y].children;
    if (reversed) std::reverse(ch.begin(), ch.end());
    out.insert(out.end(), ch.begin(), ch.end());
  };

  if (nodes_[x].type == Type::P) {
    std::vector<int> empties, fulls, partials;
    for (size_t i = 0; i < kids.size(); ++i) {
      if (lab[i] == Label::Empty) empties.push_back(kids[i]);
      if (lab[i] == Label::Full) fulls.push_back(kids[i]);
      if (lab[i] == Label::Partial) partials.push_back(kids[i]);
    }
    if (partials.size() > 2 || (partials.size() == 2 && !is_root)) return Label::Fail;
    if (partials.empty()) {
      int full_group = group(fulls);
      if (is_root) {
        empties.push_back(full_group);
        nodes_[x].children = empties;
      } else {
        int empty_group = group(empties);
        nodes_[x].type = Type::Q;
        nodes_[x].children = {empty_group, full_group};
      }
      return Label::Partial;
    }
    if (partials.size() == 1) {
      int y = partials[0];
      if (!fulls.empty()) {
        int g = group(fulls);
        nodes_[y].children.push_back(g);
      }
      if (is_root) {
        if (empties.empty()) {
          nodes_[x] = nodes_[y];
        } else {
          empties.push_back(y);
          nodes_[x].children = empties;
        }
      } else {
        std::vector<int> seq;
        if (!empties.empty()) seq.push_back(group(empties));
        flatten_into(seq, y, false);
        nodes_[x].type = Type::Q;
        nodes_[x].children = seq;
      }
      return Label::Partial;
    }
    std::vector<int> seq;
    flatten_into(seq, partials[0], false);
    if (!fulls.empty()) seq.push_back(group(fulls));
    flatten_into(seq, partials[1], true);
    if (empties.empty()) {
      nodes_[x].type = Type::Q;
      nodes_[x].children = seq;
    } else {
      empties.push_back(make(Type::Q, seq));
      nodes_[x].children = empties;
    }
    return Label::Partial;
  }

  // Q-node.
  if (is_root) {
    int a = -1, b = -1;
    for (int i = 0; i < static_cast<int>(kids.size()); ++i)
      if (lab[i] != Label::Empty) {
        if (a < 0) a = i;
        b = i;
      }
    for (int i = a + 1; i < b; ++i)
      if (lab[i] != Label::Full) return Label::Fail;
    std::vector<int> seq(kids.begin(), kids.begin() + a);
    for (int i = a; i <= b; ++i) {
      if (lab[i] != Label::Partial)
        seq.push_back(kids[i]);
      else
        flatten_into(seq, kids[i], i == b && a != b);
    }
    seq.insert(seq.end(), kids.begin() + b + 1, kids.end());
    nodes_[x].children = seq;
    return Label::Partial;
  }

  // Non-root Q: empties, at most one partial, then fulls, in one of the two
  // directions.
  auto fits = [](const std::vector<Label>& s) {
    size_t i = 0;
    while (i < s.size() && s[i] == Label::Empty) ++i;
    if (i < s.size() && s[i] == Label::Partial) ++i;
    while (i < s.size() && s[i] == Label::Full) ++i;
    return i == s.size() && s.back() != Label::Empty;
  };
  if (!fits(lab)) {
    std::reverse(kids.begin(), kids.end());
    std::reverse(lab.begin(), lab.end());
    if (!fits(lab)) return Label::Fail;
  }
  std::vector<int> seq;
  for (size_t i = 0; i < kids.size(); ++i) {
    if (lab[i] == Label::Partial)
      flatten_into(seq, kids[i], false);
    else
      seq.push_back(kids[i]);
  }
  nodes_[x].children = seq;
  return Label::Partial;
}

bool PQTree::reduce(const std::vector<int>& set) {
  if (broken_) return false;
  std::vector<char> in(nodes_.size(), 0);
  int k = 0;
  for (int e : set) {
    auto it = std::lower_bound(elements_.begin(), elements_.end(), e);
    if (it == elements_.end() || *it != e)
      throw Error(ErrorKind::BadParameter, "constraint element outside the universe");
    int leaf = leaf_of_[it - elements_.begin()];
    if (!in[leaf]) ++k;
    in[leaf] = 1;
  }
  if (k <= 1 || k == static_cast<int>(elements_.size())) return true;
  count_.assign(nodes_.size(), 0);
  size_.assign(nodes_.size(), 0);
  tally(root_, in);
  int x = root_;
  for (bool moved = true; moved;) {
    moved = false;
    for (int c : nodes_[x].children)
      if (count_[c] == k) {
        x = c;
        moved = true;
        break;
      }
  }
  if (count_[x] == size_[x]) return true;
  if (process(x, true) == Label::Fail) {
    broken_ = true;
    return false;
  }
  return true;
}

void PQTree::collect(int x, std::vector<int>& out) const {
  if (nodes_[x].type == Type::Leaf) {
    out.push_back(nodes_[x].element);
    return;
  }
  for (int c : nodes_[x].children) collect(c, out);
}

std::vector<int> PQTree::frontier() const {
  std::vector<int> out;
  if (root_ >= 0) collect(root_, out);
  return out;
}

std::optional<std::vector<int>> pq_reduce(const ConsecutivityProblem& p) {
  PQTree tree(p.universe);
  auto universe = p.universe;
  std::sort(universe.begin(), universe.end());
  universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
  for (const auto& c : p.constraints) {
    if (c.empty()) throw Error(ErrorKind::BadParameter, "empty consecutivity constraint");
    if (!tree.reduce(c)) return std::nullopt;
  }
  if (p.pinned) {
    if (!std::binary_search(universe.begin(), universe.end(), *p.pinned))
      throw Error(ErrorKind::BadParameter, "pinned element outside the universe");
    std::vector<int> rest;
    for (int e : universe)
      if (e != *p.pinned) rest.push_back(e);
    if (!tree.reduce(rest)) return std::nullopt;
  }
  auto order = tree.frontier();
  if (p.pinned && !order.empty() && order.front() != *p.pinned) std::reverse(order.begin(), order.end());
  return order;
}

std::optional<std::vector<bool>> two_sat_solve(const TwoSatProblem& p) {
  const int n = p.variables;
  auto node = [](Literal l) { return 2 * l.var + (l.positive ? 0 : 1); };
  std::vector<std::vector<int>> imp(2 * n);
  for (const auto& [a, b] : p.clauses) {
    if (a.var < 0 || a.var >= n || b.var < 0 || b.var >= n)
      throw Error(ErrorKind::BadParameter, "clause references an undeclared variable");
    imp[node(!a)].push_back(node(b));
    imp[node(!b)].push_back(node(a));
  }
  // Tarjan; components come out in reverse topological order.
  std::vector<int> index(2 * n, -1), low(2 * n, 0), comp(2 * n, -1), stack;
  std::vector<char> on_stack(2 * n, 0);
  int counter = 0, comps = 0;
  std::function<void(int)> strong = [&](int x) {
    index[x] = low[x] = counter++;
    stack.push_back(x);
    on_stack[x] = 1;
    for (int y : imp[x]) {
      if (index[y] == -1) {
        strong(y);
        low[x] = std::min(low[x], low[y]);
      } else if (on_stack[y]) {
        low[x] = std::min(low[x], index[y]);
      }
    }
    if (low[x] == index[x]) {
      for (;;) {
        int y = stack.back();
        stack.pop_back();
        on_stack[y] = 0;
        comp[y] = comps;
        if (y == x) break;
      }
      ++comps;
    }
  };
  for (int x = 0; x < 2 * n; ++x)
    if (index[x] == -1) strong(x);
  std::vector<bool> value(n);
  for (int v = 0; v < n; ++v) {
    if (comp[2 * v] == comp[2 * v + 1]) return std::nullopt;
    value[v] = comp[2 * v] < comp[2 * v + 1];
  }
  return value;
}

}  // namespace cgd
