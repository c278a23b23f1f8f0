#pragma once

#include <algorithm>
#include <map>
#include <vector>

namespace hgr::detail {

/// Union-find over ordered keys; the smaller key becomes the root so that
/// group representatives are deterministic.
template <typename Key>
class DisjointSet {
 public:
  Key find(Key x) {
    auto [it, inserted] = parent_.try_emplace(x, x);
    if (it->second == x) return x;
    Key root = find(it->second);
    parent_[x] = root;
    return root;
  }

  void unite(Key a, Key b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

  /// Every key seen so far, grouped under its root.
  std::map<Key, std::vector<Key>> groups() {
    std::map<Key, std::vector<Key>> out;
    std::vector<Key> keys;
    for (const auto& [k, p] : parent_) keys.push_back(k);
    for (Key k : keys) out[find(k)].push_back(k);
    return out;
  }

 private:
  std::map<Key, Key> parent_;
};

}  // namespace hgr::detail
