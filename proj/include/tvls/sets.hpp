// Index sets: frequency subsets of [N]^2 and spatial supports in {1..N}^2.
// Membership tests are O(1) via a flat mask.
#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "tvls/common.hpp"

namespace tvls {

// Subset of [N]^2 (signed frequency pairs).
class IndexSet2D {
 public:
  explicit IndexSet2D(int n) : n_(n), mask_(std::size_t(n) * std::size_t(n), 0) {
    if (n < 1) throw std::invalid_argument("IndexSet2D: side must be positive");
  }

  int side() const { return n_; }
  std::size_t size() const { return count_; }

  void insert(int k1, int k2) {
    check_range(k1, k2);
    std::uint8_t& m = mask_[idx(k1, k2)];
    if (!m) {
      m = 1;
      ++count_;
    }
  }

  bool contains(int k1, int k2) const {
    check_range(k1, k2);
    return mask_[idx(k1, k2)] != 0;
  }

  bool contains_pos(int p1, int p2) const { return mask_[std::size_t(p1) * n_ + p2] != 0; }

  // Members sorted by signed (k1, k2), ascending.
  std::vector<std::pair<int, int>> members() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(count_);
    for (int k1 = freq_min(n_); k1 <= freq_max(n_); ++k1)
      for (int k2 = freq_min(n_); k2 <= freq_max(n_); ++k2)
        if (mask_[idx(k1, k2)]) out.emplace_back(k1, k2);
    return out;
  }

  // Storage offsets of members, ascending; convenient for masked passes.
  std::vector<std::size_t> storage_offsets() const {
    std::vector<std::size_t> out;
    out.reserve(count_);
    for (std::size_t i = 0; i < mask_.size(); ++i)
      if (mask_[i]) out.push_back(i);
    return out;
  }

  static IndexSet2D full(int n) {
    IndexSet2D s(n);
    std::fill(s.mask_.begin(), s.mask_.end(), std::uint8_t(1));
    s.count_ = s.mask_.size();
    return s;
  }

 private:
  void check_range(int k1, int k2) const {
    if (!in_freq_range(k1, n_) || !in_freq_range(k2, n_))
      throw std::invalid_argument("IndexSet2D: frequency outside [N]^2");
  }
  std::size_t idx(int k1, int k2) const { return std::size_t(freq_pos(k1, n_)) * n_ + freq_pos(k2, n_); }

  int n_;
  std::vector<std::uint8_t> mask_;
  std::size_t count_ = 0;
};

// Subset of {1..N}^2 (spatial pairs, 1-based).
class Support2D {
 public:
  explicit Support2D(int n) : n_(n), mask_(std::size_t(n) * std::size_t(n), 0) {
    if (n < 1) throw std::invalid_argument("Support2D: side must be positive");
  }

  int side() const { return n_; }
  std::size_t size() const { return count_; }

  void insert(int k, int j) {
    check_range(k, j);
    std::uint8_t& m = mask_[idx(k, j)];
    if (!m) {
      m = 1;
      ++count_;
    }
  }

  bool contains(int k, int j) const {
    check_range(k, j);
    return mask_[idx(k, j)] != 0;
  }

  // Row-major (k, j) ascending.
  std::vector<std::pair<int, int>> members() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(count_);
    for (int k = 1; k <= n_; ++k)
      for (int j = 1; j <= n_; ++j)
        if (mask_[idx(k, j)]) out.emplace_back(k, j);
    return out;
  }

  // Rows present in column j, ascending.
  std::vector<int> column(int j) const {
    std::vector<int> out;
    for (int k = 1; k <= n_; ++k)
      if (mask_[idx(k, j)]) out.push_back(k);
    return out;
  }

  // Columns present in row k, ascending.
  std::vector<int> row(int k) const {
    std::vector<int> out;
    for (int j = 1; j <= n_; ++j)
      if (mask_[idx(k, j)]) out.push_back(j);
    return out;
  }

  Support2D complement() const {
    Support2D c(n_);
    for (std::size_t i = 0; i < mask_.size(); ++i) c.mask_[i] = mask_[i] ? 0 : 1;
    c.count_ = mask_.size() - count_;
    return c;
  }

  bool operator==(const Support2D& o) const { return n_ == o.n_ && mask_ == o.mask_; }

 private:
  void check_range(int k, int j) const {
    if (k < 1 || k > n_ || j < 1 || j > n_)
      throw std::invalid_argument("Support2D: index outside {1..N}^2");
  }
  std::size_t idx(int k, int j) const { return std::size_t(k - 1) * n_ + std::size_t(j - 1); }

  int n_;
  std::vector<std::uint8_t> mask_;
  std::size_t count_ = 0;
};

}  // namespace tvls
