#include "k1lab/zpn_linalg.hpp"

#include "k1lab/error.hpp"

namespace k1lab {

namespace {

u64 power(unsigned p, unsigned N) { return ipow(p, N); }

unsigned val_capped(u64 a, unsigned p, unsigned N) {
  if (a == 0) return N;
  return static_cast<unsigned>(valuation(a, p));
}

void axpy(std::vector<u64>& v, u64 q, const std::vector<u64>& row, u64 mod) {
  if (q == 0) return;
  for (std::size_t k = 0; k < v.size(); ++k)
    if (row[k]) v[k] = sub_mod(v[k], mul_mod(q, row[k], mod), mod);
}

std::vector<u64> scaled(const std::vector<u64>& v, u64 s, u64 mod) {
  std::vector<u64> out(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) out[k] = mul_mod(v[k], s, mod);
  return out;
}

bool is_zero(const std::vector<u64>& v) {
  for (u64 x : v)
    if (x) return false;
  return true;
}

}  // namespace

ZpnMatrix::ZpnMatrix(unsigned p, unsigned N, std::size_t rows, std::size_t cols)
    : p_(p), N_(N), mod_(power(p, N)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

void ZpnMatrix::append_row(std::span<const u64> r) {
  if (r.size() != cols_) raise(ErrorKind::DimensionMismatch, "row length differs from column count");
  for (u64 x : r) data_.push_back(x % mod_);
  ++rows_;
}

HowellBasis::HowellBasis(unsigned p, unsigned N, std::size_t cols)
    : p_(p), N_(N), mod_(power(p, N)), cols_(cols) {}

bool HowellBasis::all_pivots_units() const noexcept {
  for (unsigned e : pivot_exp_)
    if (e != 0) return false;
  return true;
}

HowellBuilder::HowellBuilder(unsigned p, unsigned N, std::size_t cols)
    : p_(p), N_(N), mod_(power(p, N)), cols_(cols), row_at_(cols), exp_at_(cols, -1) {
  pw_.resize(N + 1);
  pw_[0] = 1;
  for (unsigned i = 1; i <= N; ++i) pw_[i] = pw_[i - 1] * p;
}

void HowellBuilder::insert(std::span<const u64> v_in) {
  if (v_in.size() != cols_) raise(ErrorKind::DimensionMismatch, "generator length mismatch");
  std::vector<std::vector<u64>> work;
  work.emplace_back(v_in.begin(), v_in.end());
  for (auto& x : work.back()) x %= mod_;
  while (!work.empty()) {
    std::vector<u64> v = std::move(work.back());
    work.pop_back();
    for (std::size_t c = 0; c < cols_; ++c) {
      if (v[c] == 0) continue;
      unsigned w = val_capped(v[c], p_, N_);
      if (exp_at_[c] >= 0 && w >= static_cast<unsigned>(exp_at_[c])) {
        axpy(v, v[c] / pw_[exp_at_[c]], row_at_[c], mod_);
        continue;
      }
      u64 unit_inv = try_inv_mod(v[c] / pw_[w], mod_);
      std::vector<u64> normalized = scaled(v, unit_inv, mod_);
      if (exp_at_[c] >= 0) {
        std::vector<u64> old = std::move(row_at_[c]);
        axpy(old, pw_[exp_at_[c] - w], normalized, mod_);
        if (!is_zero(old)) work.push_back(std::move(old));
      }
      if (w > 0) {
        std::vector<u64> sat = scaled(normalized, pw_[N_ - w], mod_);
        if (!is_zero(sat)) work.push_back(std::move(sat));
      }
      row_at_[c] = std::move(normalized);
      exp_at_[c] = static_cast<int>(w);
      break;
    }
  }
}

HowellBasis HowellBuilder::finish() const {
  HowellBasis b(p_, N_, cols_);
  std::vector<std::vector<u64>> rows;
  std::vector<std::size_t> cols;
  for (std::size_t c = 0; c < cols_; ++c) {
    if (exp_at_[c] < 0) continue;
    const u64 piv = pw_[exp_at_[c]];
    for (auto& r : rows) axpy(r, r[c] / piv, row_at_[c], mod_);
    rows.push_back(row_at_[c]);
    cols.push_back(c);
    b.pivot_exp_.push_back(static_cast<unsigned>(exp_at_[c]));
  }
  b.rows_ = std::move(rows);
  b.pivot_col_ = std::move(cols);
  return b;
}

HowellBasis howell_form(const ZpnMatrix& m) {
  HowellBuilder builder(m.p(), m.N(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) builder.insert(m.row(i));
  return builder.finish();
}

bool membership(std::span<const u64> v_in, const HowellBasis& b) {
  if (v_in.size() != b.cols()) raise(ErrorKind::DimensionMismatch, "vector length mismatch");
  std::vector<u64> v(v_in.begin(), v_in.end());
  for (auto& x : v) x %= b.modulus();
  std::size_t next = 0;
  for (std::size_t c = 0; c < v.size(); ++c) {
    bool has_pivot = next < b.rank() && b.pivot_cols()[next] == c;
    if (v[c] != 0) {
      if (!has_pivot) return false;
      u64 piv = ipow(b.p(), b.pivot_exps()[next]);
      if (v[c] % piv != 0) return false;
      axpy(v, v[c] / piv, b.rows()[next], b.modulus());
    }
    if (has_pivot) ++next;
  }
  return true;
}

std::vector<u64> reduce_mod(std::span<const u64> v_in, const HowellBasis& b) {
  if (v_in.size() != b.cols()) raise(ErrorKind::DimensionMismatch, "vector length mismatch");
  std::vector<u64> v(v_in.begin(), v_in.end());
  for (auto& x : v) x %= b.modulus();
  for (std::size_t i = 0; i < b.rank(); ++i) {
    std::size_t c = b.pivot_cols()[i];
    u64 piv = ipow(b.p(), b.pivot_exps()[i]);
    axpy(v, v[c] / piv, b.rows()[i], b.modulus());
  }
  return v;
}

}  // namespace k1lab
