// Copyright 2026 The score-eval Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SCORE_TREE_EDIT_HPP
#define SCORE_TREE_EDIT_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace score {

template <typename Label>
struct OrderedTree {
  Label label;
  std::vector<OrderedTree> children;

  std::size_t size() const {
    std::size_t n = 1;
    for (const auto& c : children) n += c.size();
    return n;
  }
};

namespace detail {

template <typename Label>
struct PostorderIndex {
  std::vector<const Label*> labels;  // 1-based, labels[0] unused
  std::vector<std::size_t> leftmost;  // leftmost leaf descendant, 1-based
  std::vector<std::size_t> keyroots;

  explicit PostorderIndex(const OrderedTree<Label>& root) {
    labels.push_back(nullptr);
    leftmost.push_back(0);
    visit(root);
    const std::size_t n = labels.size() - 1;
    // A keyroot is the highest-numbered node for each distinct leftmost leaf.
    std::vector<char> seen(n + 1, 0);
    for (std::size_t i = n; i >= 1; --i) {
      if (!seen[leftmost[i]]) {
        seen[leftmost[i]] = 1;
        keyroots.push_back(i);
      }
    }
    std::sort(keyroots.begin(), keyroots.end());
  }

 private:
  std::size_t visit(const OrderedTree<Label>& node) {
    std::size_t first_leaf = 0;
    for (const auto& child : node.children) {
      const std::size_t child_leftmost = visit(child);
      if (first_leaf == 0) first_leaf = child_leftmost;
    }
    labels.push_back(&node.label);
    const std::size_t self = labels.size() - 1;
    leftmost.push_back(first_leaf == 0 ? self : first_leaf);
    return leftmost.back();
  }
};

}  // namespace detail

// Ordered tree edit distance (Zhang-Shasha). Insertions and deletions cost
// `indel`; rename(a, b) gives the substitution cost and must be symmetric
// for the distance to be symmetric.
template <typename Label, typename RenameCost>
double tree_edit_distance(const OrderedTree<Label>& a, const OrderedTree<Label>& b,
                          RenameCost&& rename, double indel = 1.0) {
  const detail::PostorderIndex<Label> ta(a);
  const detail::PostorderIndex<Label> tb(b);
  const std::size_t n = ta.labels.size() - 1;
  const std::size_t m = tb.labels.size() - 1;
  const std::size_t stride = m + 1;

  std::vector<double> tree_dist((n + 1) * stride, 0.0);
  std::vector<double> forest((n + 1) * stride, 0.0);
  std::vector<double> rename_cache((n + 1) * stride, std::numeric_limits<double>::quiet_NaN());
  auto td = [&](std::size_t i, std::size_t j) -> double& { return tree_dist[i * stride + j]; };
  auto fd = [&](std::size_t i, std::size_t j) -> double& { return forest[i * stride + j]; };
  auto ren = [&](std::size_t i, std::size_t j) {
    double& slot = rename_cache[i * stride + j];
    if (std::isnan(slot)) slot = rename(*ta.labels[i], *tb.labels[j]);
    return slot;
  };

  for (std::size_t ki : ta.keyroots) {
    for (std::size_t kj : tb.keyroots) {
      const std::size_t li = ta.leftmost[ki];
      const std::size_t lj = tb.leftmost[kj];
      fd(li - 1, lj - 1) = 0.0;
      for (std::size_t i = li; i <= ki; ++i) fd(i, lj - 1) = fd(i - 1, lj - 1) + indel;
      for (std::size_t j = lj; j <= kj; ++j) fd(li - 1, j) = fd(li - 1, j - 1) + indel;
      for (std::size_t i = li; i <= ki; ++i) {
        for (std::size_t j = lj; j <= kj; ++j) {
          const double remove = fd(i - 1, j) + indel;
          const double insert = fd(i, j - 1) + indel;
          if (ta.leftmost[i] == li && tb.leftmost[j] == lj) {
            fd(i, j) = std::min({remove, insert, fd(i - 1, j - 1) + ren(i, j)});
            td(i, j) = fd(i, j);
          } else {
            const double subtree = fd(ta.leftmost[i] - 1, tb.leftmost[j] - 1) + td(i, j);
            fd(i, j) = std::min({remove, insert, subtree});
          }
        }
      }
    }
  }
  return td(n, m);
}

}  // namespace score

#endif  // SCORE_TREE_EDIT_HPP
