#pragma once

#include <compare>
#include <string>
#include <vector>

namespace lfcc {

// n choose k, exact; n is expected to stay desk-scale (n <= 64).
long long binomial(int n, int k);

// An ordered set of 1-based user indices. Every set flowing through the
// placement, scheduler, and converse code is one of these; construction
// enforces the strictly-ascending invariant once so downstream code never
// re-checks it.
class UserSet {
 public:
  UserSet() = default;
  explicit UserSet(std::vector<int> members);

  // {1, 2, ..., k}
  static UserSet full(int k);

  int size() const { return static_cast<int>(members_.size()); }
  bool empty() const { return members_.empty(); }
  bool contains(int u) const;
  // pos is 0-based; members are reported in ascending order.
  int member(int pos) const { return members_.at(static_cast<std::size_t>(pos)); }
  // 0-based position of u, or -1.
  int position_of(int u) const;
  const std::vector<int>& members() const { return members_; }

  UserSet with(int u) const;
  UserSet without(int u) const;
  UserSet union_with(const UserSet& other) const;
  UserSet difference(const UserSet& other) const;
  UserSet intersect(const UserSet& other) const;
  bool disjoint_with(const UserSet& other) const;
  bool subset_of(const UserSet& other) const;

  std::string str() const;  // "{1,3,4}"

  auto operator<=>(const UserSet&) const = default;

 private:
  std::vector<int> members_;
};

// All size-k subsets of ground, in lexicographic order of their ascending
// member lists. Deterministic; this order is the tie-break everywhere.
std::vector<UserSet> enumerate_subsets(const UserSet& ground, int size);

}  // namespace lfcc
