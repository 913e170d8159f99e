#include "quotient.hpp"

#include <algorithm>

#include "dred/errors.hpp"

namespace dred::detail {

namespace {

bool alnum_safe(const std::string &name) {
  for (char c : name) {
    bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
              (c >= '0' && c <= '9') || c == '_' || c == '.' || c == '\'';
    if (!ok) return false;
  }
  return !name.empty();
}

} // namespace

ItemQuotient::ItemQuotient(std::vector<std::string> left_names,
                           std::vector<std::string> right_names)
    : uf_(left_names.size() + right_names.size()) {
  n_left_ = static_cast<int>(left_names.size());
  names_ = std::move(left_names);
  names_.insert(names_.end(), right_names.begin(), right_names.end());
  for (int i = 0; i < n_left_; ++i) left_lookup_[names_[i]] = i;
  for (size_t i = n_left_; i < names_.size(); ++i)
    right_lookup_[names_[i]] = static_cast<int>(i);
}

int ItemQuotient::left_index(const std::string &name) const {
  auto it = left_lookup_.find(name);
  if (it == left_lookup_.end())
    fail(ErrorKind::Internal, "unknown left item '" + name + "'");
  return it->second;
}

int ItemQuotient::right_index(const std::string &name) const {
  auto it = right_lookup_.find(name);
  if (it == right_lookup_.end())
    fail(ErrorKind::Internal, "unknown right item '" + name + "'");
  return it->second;
}

std::string ItemQuotient::qualified_candidate(int rep) const {
  std::string best;
  for (int idx : members_.at(rep)) {
    bool left = idx < n_left_;
    std::string base = names_[idx];
    if (!alnum_safe(base)) {
      const auto &lookup = left ? left_lookup_ : right_lookup_;
      int pos = static_cast<int>(std::distance(lookup.begin(), lookup.find(base)));
      base = "op" + std::to_string(pos);
    }
    std::string cand = (left ? "l." : "r.") + base;
    if (best.empty() || cand < best) best = cand;
  }
  return best;
}

void ItemQuotient::finalize(const std::set<std::string> &reserved,
                            const std::vector<int> &excluded) {
  members_.clear();
  final_names_.clear();
  reps_.clear();
  for (size_t i = 0; i < names_.size(); ++i)
    members_[uf_.find(static_cast<int>(i))].push_back(static_cast<int>(i));

  std::set<int> skip;
  for (int idx : excluded) skip.insert(uf_.find(idx));

  std::map<int, std::string> plain;
  std::map<std::string, int> plain_count;
  for (const auto &[rep, mem] : members_) {
    if (skip.count(rep)) continue;
    std::string best = names_[mem.front()];
    for (int idx : mem) best = std::min(best, names_[idx]);
    plain[rep] = best;
    ++plain_count[best];
  }

  std::set<std::string> taken(reserved.begin(), reserved.end());
  std::vector<int> pending;
  for (const auto &[rep, cand] : plain) {
    if (plain_count[cand] == 1 && !taken.count(cand)) {
      final_names_[rep] = cand;
      taken.insert(cand);
    } else {
      pending.push_back(rep);
    }
  }
  std::sort(pending.begin(), pending.end(), [&](int a, int b) {
    return qualified_candidate(a) < qualified_candidate(b);
  });
  for (int rep : pending) {
    std::string cand = qualified_candidate(rep);
    std::string name = cand;
    for (int k = 2; taken.count(name); ++k) name = cand + "~" + std::to_string(k);
    final_names_[rep] = name;
    taken.insert(name);
  }

  for (const auto &[rep, name] : final_names_) reps_.push_back(rep);
  std::sort(reps_.begin(), reps_.end(), [&](int a, int b) {
    return final_names_[a] < final_names_[b];
  });
  finalized_ = true;
}

const std::string &ItemQuotient::name_of(int idx) {
  if (!finalized_) fail(ErrorKind::Internal, "quotient not finalized");
  return final_names_.at(uf_.find(idx));
}

} // namespace dred::detail
