#pragma once

// GF(2) linear algebra on sparse column lists.
//
// A matrix is stored as a list of columns, each column the sorted list of row
// indices holding a 1. Rank is computed by bit-packed dense elimination for
// small matrices and by sparse column reduction above kDenseLimit; both paths
// return identical ranks.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace bordered::gf2 {

using Index = std::uint32_t;
using Column = std::vector<Index>;
using Columns = std::vector<Column>;

inline constexpr std::size_t kDenseLimit = std::size_t{1} << 13;

/// Symmetric difference of two sorted index lists.
inline Column add(const Column& a, const Column& b) {
  Column out;
  out.reserve(a.size() + b.size());
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

/// Sorts and cancels repeated entries in pairs.
inline void normalize(Column& c) {
  std::sort(c.begin(), c.end());
  Column out;
  out.reserve(c.size());
  for (std::size_t i = 0; i < c.size();) {
    std::size_t j = i;
    while (j < c.size() && c[j] == c[i]) ++j;
    if ((j - i) % 2 == 1) out.push_back(c[i]);
    i = j;
  }
  c = std::move(out);
}

class BitRow {
 public:
  explicit BitRow(std::size_t bits = 0) : words_((bits + 63) / 64, 0) {}

  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  void flip(std::size_t i) { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }

  /// this ^= other on words starting at the word holding bit `from`.
  void xor_from(const BitRow& other, std::size_t from) {
    for (std::size_t w = from / 64; w < words_.size(); ++w) words_[w] ^= other.words_[w];
  }

  bool none() const {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
  }

  /// Lowest set bit at or after `from`, or size_t(-1).
  std::size_t find_from(std::size_t from) const {
    for (std::size_t w = from / 64; w < words_.size(); ++w) {
      std::uint64_t word = words_[w];
      if (w == from / 64) word &= ~std::uint64_t{0} << (from % 64);
      if (word != 0) return w * 64 + static_cast<std::size_t>(std::countr_zero(word));
    }
    return static_cast<std::size_t>(-1);
  }

 private:
  std::vector<std::uint64_t> words_;
};

/// Dense elimination on packed rows (rows = the given columns, which has the same rank).
inline std::size_t rank_dense(const Columns& cols, std::size_t nrows) {
  std::vector<BitRow> rows;
  rows.reserve(cols.size());
  for (const auto& c : cols) {
    if (c.empty()) continue;
    BitRow r(nrows);
    for (Index i : c) r.flip(i);
    rows.push_back(std::move(r));
  }
  std::size_t rank = 0;
  for (std::size_t bit = 0; bit < nrows && rank < rows.size(); ++bit) {
    std::size_t piv = rank;
    while (piv < rows.size() && !rows[piv].test(bit)) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r)
      if (rows[r].test(bit)) rows[r].xor_from(rows[rank], bit);
    ++rank;
  }
  return rank;
}

/// Sparse column reduction; columns are processed in order of increasing fill.
inline std::size_t rank_sparse(const Columns& cols, std::size_t nrows) {
  std::vector<std::size_t> order(cols.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return cols[a].size() < cols[b].size(); });
  std::vector<Column> reduced;
  std::vector<std::int64_t> pivot_of_row(nrows, -1);
  std::size_t rank = 0;
  for (std::size_t idx : order) {
    Column c = cols[idx];
    while (!c.empty()) {
      const Index low = c.back();
      const std::int64_t p = pivot_of_row[low];
      if (p < 0) break;
      c = add(c, reduced[static_cast<std::size_t>(p)]);
    }
    if (c.empty()) continue;
    pivot_of_row[c.back()] = static_cast<std::int64_t>(reduced.size());
    reduced.push_back(std::move(c));
    ++rank;
  }
  return rank;
}

inline std::size_t rank(const Columns& cols, std::size_t nrows) {
  if (nrows < kDenseLimit && cols.size() < kDenseLimit) return rank_dense(cols, nrows);
  return rank_sparse(cols, nrows);
}

/// Transpose of an nrows x cols.size() matrix.
inline Columns transpose(const Columns& cols, std::size_t nrows) {
  Columns t(nrows);
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (Index i : cols[j]) t[i].push_back(static_cast<Index>(j));
  return t;
}

/// Product a * b where b has b.size() columns with entries indexing a's columns.
inline Columns multiply(const Columns& a, const Columns& b) {
  Columns out(b.size());
  for (std::size_t j = 0; j < b.size(); ++j) {
    Column acc;
    for (Index k : b[j]) acc.insert(acc.end(), a[k].begin(), a[k].end());
    normalize(acc);
    out[j] = std::move(acc);
  }
  return out;
}

inline bool is_zero(const Columns& m) {
  return std::all_of(m.begin(), m.end(), [](const Column& c) { return c.empty(); });
}

/// Basis of the null space {v : M v = 0} of an nrows x cols.size() matrix, each
/// vector given as a sorted list of column indices.
inline std::vector<Column> kernel_basis(const Columns& cols, std::size_t nrows) {
  const std::size_t n = cols.size();
  // Row-reduce [M^T | I]: rows are columns of M augmented with an identity tag.
  std::vector<BitRow> rows;
  std::vector<BitRow> tags;
  rows.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    BitRow r(nrows);
    for (Index i : cols[j]) r.flip(i);
    BitRow t(n);
    t.set(j);
    rows.push_back(std::move(r));
    tags.push_back(std::move(t));
  }
  std::size_t rank = 0;
  for (std::size_t bit = 0; bit < nrows && rank < n; ++bit) {
    std::size_t piv = rank;
    while (piv < n && !rows[piv].test(bit)) ++piv;
    if (piv == n) continue;
    std::swap(rows[rank], rows[piv]);
    std::swap(tags[rank], tags[piv]);
    for (std::size_t r = rank + 1; r < n; ++r)
      if (rows[r].test(bit)) {
        rows[r].xor_from(rows[rank], bit);
        tags[r].xor_from(tags[rank], 0);
      }
    ++rank;
  }
  std::vector<Column> basis;
  for (std::size_t r = rank; r < n; ++r) {
    Column v;
    for (std::size_t i = tags[r].find_from(0); i != static_cast<std::size_t>(-1); i = tags[r].find_from(i + 1))
      v.push_back(static_cast<Index>(i));
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Image of a vector (list of column indices) under the matrix.
inline Column apply(const Columns& cols, const Column& v) {
  Column acc;
  for (Index j : v) acc.insert(acc.end(), cols[j].begin(), cols[j].end());
  normalize(acc);
  return acc;
}

}  // namespace bordered::gf2
