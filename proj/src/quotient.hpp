#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

namespace dred::detail {

class UnionFind {
public:
  explicit UnionFind(size_t n) : parent_(n), rank_(n, 0) {
    for (size_t i = 0; i < n; ++i) parent_[i] = static_cast<int>(i);
  }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return true;
  }

private:
  std::vector<int> parent_;
  std::vector<int> rank_;
};

// Quotient of two disjoint families of uniquely-named items, with canonical
// naming of the classes: a class is named by its lexicographically least
// member name when that name is unambiguous across classes, and otherwise by
// its least `l.<name>`/`r.<name>` qualified member name (symbolic names fall
// back to an alphanumeric `<foot>.op<k>` form so the result stays lexable).
class ItemQuotient {
public:
  ItemQuotient(std::vector<std::string> left_names,
               std::vector<std::string> right_names);

  int left_index(const std::string &name) const;
  int right_index(const std::string &name) const;
  size_t size() const { return names_.size(); }
  const std::string &raw_name(int idx) const { return names_[idx]; }
  bool is_left(int idx) const { return idx < n_left_; }

  void unite(int a, int b) { uf_.unite(a, b); }
  int cls(int idx) { return uf_.find(idx); }

  // Assigns canonical class names; `reserved` names are never produced.
  // Classes containing an index in `excluded` receive no name and are left
  // out of class_reps() (their members stay reachable via members()).
  void finalize(const std::set<std::string> &reserved = {},
                const std::vector<int> &excluded = {});

  const std::string &name_of(int idx);
  // Representatives in ascending canonical-name order.
  const std::vector<int> &class_reps() const { return reps_; }
  const std::vector<int> &members(int rep) const { return members_.at(rep); }

private:
  std::string qualified_candidate(int rep) const;

  std::vector<std::string> names_;
  int n_left_ = 0;
  UnionFind uf_;
  std::map<std::string, int> left_lookup_, right_lookup_;
  std::map<int, std::vector<int>> members_;
  std::map<int, std::string> final_names_;
  std::vector<int> reps_;
  bool finalized_ = false;
};

} // namespace dred::detail
