#include <algorithm>
#include <bit>
#include <stdexcept>

#include "qs/gf2.hpp"

namespace qs {

GF2Matrix::GF2Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64), data_(rows * words_, 0) {}

GF2Matrix GF2Matrix::identity(std::size_t n) {
  GF2Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

void GF2Matrix::set(std::size_t r, std::size_t c, bool value) {
  auto& word = row(r)[c / 64];
  const std::uint64_t bit = std::uint64_t{1} << (c % 64);
  word = value ? (word | bit) : (word & ~bit);
}

bool GF2Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](std::uint64_t w) { return w == 0; });
}

GF2Matrix GF2Matrix::transpose() const {
  GF2Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (get(r, c)) t.set(c, r, true);
  return t;
}

namespace {

/// Reduces m in place to reduced row echelon form; returns the pivot column of
/// each of the first rank rows.
std::vector<std::size_t> row_reduce(GF2Matrix& m, bool reduced) {
  std::vector<std::size_t> pivots;
  const std::size_t words = m.words_per_row();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t pivot = rank;
    while (pivot < m.rows() && !m.get(pivot, c)) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != rank) std::swap_ranges(m.row(pivot).begin(), m.row(pivot).end(), m.row(rank).begin());
    // Bits below word c/64 are already zero in every row touched here.
    const std::size_t w0 = c / 64;
    const std::uint64_t* src = m.row(rank).data() + w0;
    for (std::size_t r = reduced ? 0 : rank + 1; r < m.rows(); ++r) {
      if (r == rank || !m.get(r, c)) continue;
      gf2::xor_into(m.row(r).data() + w0, src, words - w0);
    }
    pivots.push_back(c);
    ++rank;
  }
  return pivots;
}

}  // namespace

std::size_t gf2_rank(GF2Matrix m) { return row_reduce(m, false).size(); }

GF2Matrix gf2_multiply(const GF2Matrix& a, const GF2Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("gf2_multiply: shape mismatch");
  GF2Matrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t k = 0; k < a.cols(); ++k)
      if (a.get(r, k)) gf2::xor_into(out.row(r).data(), b.row(k).data(), out.words_per_row());
  return out;
}

GF2Matrix gf2_kernel(const GF2Matrix& m) {
  GF2Matrix rref = m;
  const auto pivots = row_reduce(rref, true);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  GF2Matrix basis(m.cols() - pivots.size(), m.cols());
  std::size_t out = 0;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    basis.set(out, free, true);
    for (std::size_t i = 0; i < pivots.size(); ++i)
      if (rref.get(i, free)) basis.set(out, pivots[i], true);
    ++out;
  }
  return basis;
}

bool gf2_in_column_space(const GF2Matrix& m, std::span<const std::uint8_t> b) {
  if (b.size() != m.rows()) throw std::invalid_argument("gf2_in_column_space: length mismatch");
  GF2Matrix cols(m.cols() + 1, m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m.get(r, c)) cols.set(c, r, true);
    if (b[r]) cols.set(m.cols(), r, true);
  }
  GF2Matrix without(m.cols(), m.rows());
  for (std::size_t c = 0; c < m.cols(); ++c)
    std::copy(cols.row(c).begin(), cols.row(c).end(), without.row(c).begin());
  return gf2_rank(without) == gf2_rank(cols);
}

}  // namespace qs
