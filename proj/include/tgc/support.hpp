#pragma once

#include <bitset>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "combinatorics.hpp"
#include "error.hpp"

namespace tgc {

inline constexpr int max_partitions = 256;
using RowMask = std::bitset<max_partitions>;

// Boolean rows x partitions matrix. Servers are 1-based in the API of the
// constructions; rows here are 0-based storage indices. Partitions are 0-based.
class SupportMatrix {
 public:
  SupportMatrix() = default;
  SupportMatrix(int rows, int q) : rows_(rows), q_(q), bits_(static_cast<std::size_t>(rows) * q, 0) {
    if (rows < 0 || q < 0) throw invalid_parameters("negative support dimensions");
  }

  static SupportMatrix from_rows(int q, const std::vector<IndexSet>& rows) {
    SupportMatrix m(static_cast<int>(rows.size()), q);
    for (int r = 0; r < m.rows(); ++r)
      for (int col : rows[r]) m.set(r, col);
    return m;
  }

  int rows() const { return rows_; }
  int q() const { return q_; }

  bool test(int r, int col) const { return bits_[index(r, col)] != 0; }
  void set(int r, int col, bool v = true) { bits_[index(r, col)] = v ? 1 : 0; }

  IndexSet row_support(int r) const {
    IndexSet out;
    for (int col = 0; col < q_; ++col)
      if (test(r, col)) out.push_back(col);
    return out;
  }

  int row_weight(int r) const {
    int w = 0;
    for (int col = 0; col < q_; ++col) w += test(r, col);
    return w;
  }

  int max_row_weight() const {
    int w = 0;
    for (int r = 0; r < rows_; ++r) w = std::max(w, row_weight(r));
    return w;
  }

  RowMask row_mask(int r) const {
    if (q_ > max_partitions) throw invalid_parameters("Q exceeds " + std::to_string(max_partitions));
    RowMask m;
    for (int col = 0; col < q_; ++col)
      if (test(r, col)) m.set(static_cast<std::size_t>(col));
    return m;
  }

  // Column j moves to column (j + shift) mod q.
  SupportMatrix rotated(int shift) const {
    SupportMatrix out(rows_, q_);
    for (int r = 0; r < rows_; ++r)
      for (int col = 0; col < q_; ++col)
        if (test(r, col)) out.set(r, mod(col + shift, q_));
    return out;
  }

  SupportMatrix prefix_rows(int n) const {
    if (n < 0 || n > rows_) throw invalid_parameters("prefix larger than matrix");
    SupportMatrix out(n, q_);
    std::copy(bits_.begin(), bits_.begin() + static_cast<std::ptrdiff_t>(n) * q_, out.bits_.begin());
    return out;
  }

  SupportMatrix row_range(int first, int count) const {
    if (first < 0 || count < 0 || first + count > rows_) throw invalid_parameters("row range out of bounds");
    SupportMatrix out(count, q_);
    std::copy(bits_.begin() + static_cast<std::ptrdiff_t>(first) * q_,
              bits_.begin() + static_cast<std::ptrdiff_t>(first + count) * q_, out.bits_.begin());
    return out;
  }

  SupportMatrix stacked(const SupportMatrix& below) const {
    if (rows_ > 0 && below.rows_ > 0 && below.q_ != q_) throw invalid_parameters("column count mismatch");
    SupportMatrix out(rows_ + below.rows_, rows_ > 0 ? q_ : below.q_);
    std::copy(bits_.begin(), bits_.end(), out.bits_.begin());
    std::copy(below.bits_.begin(), below.bits_.end(), out.bits_.begin() + static_cast<std::ptrdiff_t>(bits_.size()));
    return out;
  }

  bool operator==(const SupportMatrix&) const = default;

  friend std::ostream& operator<<(std::ostream& os, const SupportMatrix& m) {
    os << m.rows_ << ' ' << m.q_ << '\n';
    for (int r = 0; r < m.rows_; ++r) {
      for (int col = 0; col < m.q_; ++col) os << (m.test(r, col) ? '1' : '0');
      os << '\n';
    }
    return os;
  }

  static SupportMatrix parse(std::istream& is) {
    int rows = 0, q = 0;
    if (!(is >> rows >> q)) throw invalid_parameters("support: missing 'rows q' header");
    SupportMatrix m(rows, q);
    for (int r = 0; r < rows; ++r) {
      std::string line;
      if (!(is >> line) || static_cast<int>(line.size()) != q)
        throw invalid_parameters("support: row " + std::to_string(r) + " malformed");
      for (int col = 0; col < q; ++col) {
        if (line[col] != '0' && line[col] != '1') throw invalid_parameters("support: expected 0/1");
        m.set(r, col, line[col] == '1');
      }
    }
    return m;
  }

  std::string str() const {
    std::ostringstream os;
    os << *this;
    return os.str();
  }

 private:
  std::size_t index(int r, int col) const {
    if (r < 0 || r >= rows_ || col < 0 || col >= q_) throw std::out_of_range("support index");
    return static_cast<std::size_t>(r) * q_ + col;
  }

  int rows_ = 0;
  int q_ = 0;
  std::vector<std::uint8_t> bits_;
};

// Row i (1-based) covers [i-1, i+(n-k-1)] mod n.
inline SupportMatrix cyclic_support(int n, int k) {
  if (k < 1 || n < k) throw invalid_parameters("cyclic_support needs n >= k >= 1");
  SupportMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= n - k; ++j) m.set(i, (i + j) % n);
  return m;
}

inline SupportMatrix fractional_support(int n2, int k) {
  if (k < 1 || n2 < k) throw invalid_parameters("fractional_support needs n2 >= k >= 1");
  const int s = n2 - k + 1;
  if (n2 % s != 0) throw invalid_parameters("n2 - k + 1 does not divide n2");
  SupportMatrix m(n2, n2);
  for (int i = 0; i < n2; ++i) {
    int block = i / s;
    for (int j = 0; j < s; ++j) m.set(i, block * s + j);
  }
  return m;
}

}  // namespace tgc
