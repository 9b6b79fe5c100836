#include "lfcc/sets.hpp"

#include <algorithm>
#include <stdexcept>

namespace lfcc {

long long binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long result = 1;
  for (int i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
  }
  return result;
}

UserSet::UserSet(std::vector<int> members) : members_(std::move(members)) {
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (members_[i] < 1) throw std::invalid_argument("user indices are 1-based");
    if (i > 0 && members_[i] <= members_[i - 1]) {
      throw std::invalid_argument("user set must be strictly ascending");
    }
  }
}

UserSet UserSet::full(int k) {
  std::vector<int> m(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) m[static_cast<std::size_t>(i)] = i + 1;
  return UserSet(std::move(m));
}

bool UserSet::contains(int u) const {
  return std::binary_search(members_.begin(), members_.end(), u);
}

int UserSet::position_of(int u) const {
  auto it = std::lower_bound(members_.begin(), members_.end(), u);
  if (it == members_.end() || *it != u) return -1;
  return static_cast<int>(it - members_.begin());
}

UserSet UserSet::with(int u) const {
  std::vector<int> m = members_;
  auto it = std::lower_bound(m.begin(), m.end(), u);
  if (it != m.end() && *it == u) return *this;
  m.insert(it, u);
  return UserSet(std::move(m));
}

UserSet UserSet::without(int u) const {
  std::vector<int> m = members_;
  auto it = std::lower_bound(m.begin(), m.end(), u);
  if (it != m.end() && *it == u) m.erase(it);
  return UserSet(std::move(m));
}

UserSet UserSet::union_with(const UserSet& other) const {
  std::vector<int> m;
  m.reserve(members_.size() + other.members_.size());
  std::set_union(members_.begin(), members_.end(), other.members_.begin(),
                 other.members_.end(), std::back_inserter(m));
  return UserSet(std::move(m));
}

UserSet UserSet::difference(const UserSet& other) const {
  std::vector<int> m;
  std::set_difference(members_.begin(), members_.end(), other.members_.begin(),
                      other.members_.end(), std::back_inserter(m));
  return UserSet(std::move(m));
}

UserSet UserSet::intersect(const UserSet& other) const {
  std::vector<int> m;
  std::set_intersection(members_.begin(), members_.end(), other.members_.begin(),
                        other.members_.end(), std::back_inserter(m));
  return UserSet(std::move(m));
}

bool UserSet::disjoint_with(const UserSet& other) const {
  return intersect(other).empty();
}

bool UserSet::subset_of(const UserSet& other) const {
  return std::includes(other.members_.begin(), other.members_.end(),
                       members_.begin(), members_.end());
}

std::string UserSet::str() const {
  std::string out = "{";
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(members_[i]);
  }
  out += "}";
  return out;
}

std::vector<UserSet> enumerate_subsets(const UserSet& ground, int size) {
  const int n = ground.size();
  if (size < 0 || size > n) {
    throw std::invalid_argument("subset size out of range");
  }
  std::vector<UserSet> out;
  out.reserve(static_cast<std::size_t>(binomial(n, size)));
  std::vector<int> idx(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    std::vector<int> members;
    members.reserve(static_cast<std::size_t>(size));
    for (int i : idx) members.push_back(ground.member(i));
    out.emplace_back(UserSet(std::move(members)));
    // advance the index vector to the lexicographically next combination
    int pos = size - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - size + pos) --pos;
    if (pos < 0) break;
    ++idx[static_cast<std::size_t>(pos)];
    for (int j = pos + 1; j < size; ++j) {
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return out;
}

}  // namespace lfcc
