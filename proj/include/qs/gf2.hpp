#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace qs {

namespace gf2 {

/// Instruction set used by the row kernels.
enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa);
bool isa_supported(Isa isa);
/// The variant chosen at startup: the widest one the CPU supports, unless
/// QS_GF2_ISA=scalar is set in the environment.
Isa active_isa();
/// Forces a variant; throws std::runtime_error when the CPU lacks it.
void set_isa(Isa isa);

/// dst[i] ^= src[i] for i < words.
void xor_into(std::uint64_t* dst, const std::uint64_t* src, std::size_t words);

namespace scalar {
void xor_into(std::uint64_t* dst, const std::uint64_t* src, std::size_t words);
}
namespace avx2 {
void xor_into(std::uint64_t* dst, const std::uint64_t* src, std::size_t words);
}

}  // namespace gf2

/// Dense bit-packed matrix over the two-element field. Row i occupies
/// words_per_row() consecutive 64-bit words, column j is bit j % 64 of word
/// j / 64.
class GF2Matrix {
 public:
  GF2Matrix() = default;
  GF2Matrix(std::size_t rows, std::size_t cols);

  static GF2Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t words_per_row() const { return words_; }

  bool get(std::size_t r, std::size_t c) const { return (row(r)[c / 64] >> (c % 64)) & 1u; }
  void set(std::size_t r, std::size_t c, bool value);
  void flip(std::size_t r, std::size_t c) { row(r)[c / 64] ^= std::uint64_t{1} << (c % 64); }

  std::span<std::uint64_t> row(std::size_t r) { return {data_.data() + r * words_, words_}; }
  std::span<const std::uint64_t> row(std::size_t r) const { return {data_.data() + r * words_, words_}; }

  bool is_zero() const;
  GF2Matrix transpose() const;

  friend bool operator==(const GF2Matrix&, const GF2Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> data_;
};

/// Rank by row elimination with pivots taken in column order.
std::size_t gf2_rank(GF2Matrix m);

/// Product a * b; a.cols() must equal b.rows().
GF2Matrix gf2_multiply(const GF2Matrix& a, const GF2Matrix& b);

/// Basis of {x : m x = 0}, one vector per row of the result (cols() = m.cols()).
GF2Matrix gf2_kernel(const GF2Matrix& m);

/// Whether the column vector b (given as a 0/1 list of length m.rows()) lies in
/// the column space of m.
bool gf2_in_column_space(const GF2Matrix& m, std::span<const std::uint8_t> b);

}  // namespace qs
