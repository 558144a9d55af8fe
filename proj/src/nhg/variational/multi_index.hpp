#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace nhg {

using MultiIndex = std::vector<int>;

int degree(const MultiIndex& a);
/// Product of the factorials of the entries.
double factorial_weight(const MultiIndex& a);
std::string to_string(const MultiIndex& a);

/// Multi-indices of dimension m with min_degree <= |a| <= n, ordered by
/// degree and, within a degree, descending lexicographically:
/// (1,0), (0,1), (2,0), (1,1), (0,2), ...
class MultiIndexSet {
 public:
  MultiIndexSet() = default;
  MultiIndexSet(std::size_t m, int n, int min_degree = 1);

  std::size_t dimension() const { return m_; }
  int order() const { return n_; }
  int min_degree() const { return min_degree_; }
  std::size_t size() const { return indices_.size(); }
  const MultiIndex& operator[](std::size_t k) const { return indices_[k]; }
  const std::vector<MultiIndex>& indices() const { return indices_; }

  bool contains(const MultiIndex& a) const { return lookup_.count(a) > 0; }
  /// Position of `a`; throws kInvalidArgument when absent.
  std::size_t position(const MultiIndex& a) const;
  /// First position holding an index of degree d.
  std::size_t degree_offset(int d) const;

 private:
  std::size_t m_ = 0;
  int n_ = 0;
  int min_degree_ = 1;
  std::vector<MultiIndex> indices_;
  std::map<MultiIndex, std::size_t> lookup_;
};

/// C(m + n, n) - 1.
std::size_t jet_dimension(std::size_t m, int n);

}  // namespace nhg
