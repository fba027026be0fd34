#ifndef BDS_DOMINANCE_HPP
#define BDS_DOMINANCE_HPP

#include <span>
#include <vector>

namespace bds {

// k-d tree over "attack" coordinate vectors (smaller is better in every
// dimension) with componentwise-min subtree bounds. A query with a "defense"
// vector q is dominated iff some stored attack vector is <= q componentwise;
// subtrees whose bound already fails one dimension cannot dominate and are
// skipped. Splitting cycles through the dimensions in declaration order.
class KdParetoStore {
 public:
  explicit KdParetoStore(int dims) : dims_(dims) {}

  bool dominated(std::span<const double> defense) const {
    return root_ >= 0 && dominated_rec(root_, defense);
  }

  // Pass-1 insert: stores the label unless it is already dominated.
  // Returns false on rejection. No removals ever happen.
  bool add(std::span<const double> attack, std::span<const double> defense, int payload) {
    if (dominated(defense)) return false;
    insert(attack, payload);
    order_.push_back(payload);
    return true;
  }

  int size() const { return static_cast<int>(nodes_.size()); }
  // Payloads of accepted labels in insertion order.
  const std::vector<int>& accepted() const { return order_; }

 private:
  struct Node {
    int left = -1;
    int right = -1;
    int payload = 0;
  };

  const double* key(int n) const { return &keys_[static_cast<size_t>(n) * dims_]; }
  const double* bound(int n) const { return &bounds_[static_cast<size_t>(n) * dims_]; }

  bool dominated_rec(int n, std::span<const double> q) const {
    const double* b = bound(n);
    for (int d = 0; d < dims_; ++d)
      if (b[d] > q[d]) return false; // nothing in this subtree can dominate
    const double* k = key(n);
    bool node_dominates = true;
    for (int d = 0; d < dims_; ++d)
      if (k[d] > q[d]) {
        node_dominates = false;
        break;
      }
    if (node_dominates) return true;
    const Node& node = nodes_[n];
    if (node.left >= 0 && dominated_rec(node.left, q)) return true;
    return node.right >= 0 && dominated_rec(node.right, q);
  }

  void insert(std::span<const double> attack, int payload) {
    int id = static_cast<int>(nodes_.size());
    nodes_.push_back({-1, -1, payload});
    keys_.insert(keys_.end(), attack.begin(), attack.end());
    bounds_.insert(bounds_.end(), attack.begin(), attack.end());
    if (root_ < 0) {
      root_ = id;
      return;
    }
    int cur = root_;
    int level = 0;
    while (true) {
      double* b = &bounds_[static_cast<size_t>(cur) * dims_];
      for (int d = 0; d < dims_; ++d)
        if (attack[d] < b[d]) b[d] = attack[d];
      int dim = level % dims_;
      // Left child is strictly better in the split dimension.
      int& next = attack[dim] < key(cur)[dim] ? nodes_[cur].left : nodes_[cur].right;
      if (next < 0) {
        next = id;
        return;
      }
      cur = next;
      ++level;
    }
  }

  int dims_;
  int root_ = -1;
  std::vector<Node> nodes_;
  std::vector<double> keys_;
  std::vector<double> bounds_;
  std::vector<int> order_;
};

} // namespace bds

#endif
