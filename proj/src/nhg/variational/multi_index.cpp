#include "nhg/variational/multi_index.hpp"

#include <numeric>

#include "nhg/error.hpp"

namespace nhg {

namespace {

// All indices of dimension m and exact degree d, descending lexicographic.
void enumerate(std::size_t pos, int remaining, MultiIndex& current, std::vector<MultiIndex>& out) {
  if (pos + 1 == current.size()) {
    current[pos] = remaining;
    out.push_back(current);
    return;
  }
  for (int k = remaining; k >= 0; --k) {
    current[pos] = k;
    enumerate(pos + 1, remaining - k, current, out);
  }
  current[pos] = 0;
}

}  // namespace

int degree(const MultiIndex& a) { return std::accumulate(a.begin(), a.end(), 0); }

double factorial_weight(const MultiIndex& a) {
  double w = 1.0;
  for (int k : a) {
    for (int i = 2; i <= k; ++i) w *= i;
  }
  return w;
}

std::string to_string(const MultiIndex& a) {
  std::string s = "(";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(a[i]);
  }
  return s + ")";
}

MultiIndexSet::MultiIndexSet(std::size_t m, int n, int min_degree) : m_(m), n_(n), min_degree_(min_degree) {
  if (m == 0) throw Error(ErrorCode::kInvalidArgument, "multi-index dimension must be positive");
  if (n < 0 || min_degree < 0) throw Error(ErrorCode::kInvalidArgument, "negative jet order");
  for (int d = min_degree; d <= n; ++d) {
    MultiIndex current(m, 0);
    enumerate(0, d, current, indices_);
  }
  for (std::size_t k = 0; k < indices_.size(); ++k) lookup_[indices_[k]] = k;
}

std::size_t MultiIndexSet::position(const MultiIndex& a) const {
  auto it = lookup_.find(a);
  if (it == lookup_.end()) throw Error(ErrorCode::kInvalidArgument, "multi-index " + to_string(a) + " not in set");
  return it->second;
}

std::size_t MultiIndexSet::degree_offset(int d) const {
  for (std::size_t k = 0; k < indices_.size(); ++k) {
    if (degree(indices_[k]) >= d) return k;
  }
  return indices_.size();
}

std::size_t jet_dimension(std::size_t m, int n) {
  // C(m+n, n) computed incrementally.
  std::size_t c = 1;
  for (int k = 1; k <= n; ++k) c = c * (m + static_cast<std::size_t>(k)) / static_cast<std::size_t>(k);
  return c - 1;
}

}  // namespace nhg
