#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "k1lab/modarith.hpp"

namespace k1lab {

// Dense row-major matrix over Z/p^N with entries in [0, p^N).
class ZpnMatrix {
 public:
  ZpnMatrix(unsigned p, unsigned N, std::size_t rows, std::size_t cols);

  unsigned p() const noexcept { return p_; }
  unsigned N() const noexcept { return N_; }
  u64 modulus() const noexcept { return mod_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  u64& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  u64 at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::span<const u64> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  void append_row(std::span<const u64> r);

 private:
  unsigned p_, N_;
  u64 mod_;
  std::size_t rows_, cols_;
  std::vector<u64> data_;
};

// Howell normal form of a row span in (Z/p^N)^cols: one row per pivot column,
// pivot entries are p^e, entries above a pivot are reduced below p^e.
class HowellBasis {
 public:
  HowellBasis(unsigned p, unsigned N, std::size_t cols);

  unsigned p() const noexcept { return p_; }
  unsigned N() const noexcept { return N_; }
  u64 modulus() const noexcept { return mod_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t rank() const noexcept { return rows_.size(); }
  const std::vector<std::vector<u64>>& rows() const noexcept { return rows_; }
  const std::vector<std::size_t>& pivot_cols() const noexcept { return pivot_col_; }
  const std::vector<unsigned>& pivot_exps() const noexcept { return pivot_exp_; }
  bool all_pivots_units() const noexcept;

  friend bool operator==(const HowellBasis& a, const HowellBasis& b) {
    return a.p_ == b.p_ && a.N_ == b.N_ && a.cols_ == b.cols_ && a.rows_ == b.rows_;
  }

 private:
  friend class HowellBuilder;
  unsigned p_, N_;
  u64 mod_;
  std::size_t cols_;
  std::vector<std::vector<u64>> rows_;
  std::vector<std::size_t> pivot_col_;
  std::vector<unsigned> pivot_exp_;
};

// Incremental construction; insert generators, then finish().
class HowellBuilder {
 public:
  HowellBuilder(unsigned p, unsigned N, std::size_t cols);
  void insert(std::span<const u64> v);
  HowellBasis finish() const;

 private:
  unsigned p_, N_;
  u64 mod_;
  std::size_t cols_;
  std::vector<u64> pw_;
  std::vector<std::vector<u64>> row_at_;
  std::vector<int> exp_at_;  // -1 when the column has no pivot
};

HowellBasis howell_form(const ZpnMatrix& m);
bool membership(std::span<const u64> v, const HowellBasis& b);
std::vector<u64> reduce_mod(std::span<const u64> v, const HowellBasis& b);

}  // namespace k1lab
