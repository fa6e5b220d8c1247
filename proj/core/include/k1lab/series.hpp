#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "k1lab/padic.hpp"

namespace k1lab {

// Element of (O/p^N)[X_1..X_r, T] truncated at total X-degree D and T-degree D_T.
// Terms are sorted by monomial index and never hold a zero scalar.
struct TruncSeries {
  std::vector<std::pair<std::uint32_t, PadicScalar>> terms;
  bool is_zero() const noexcept { return terms.empty(); }
  friend bool operator==(const TruncSeries&, const TruncSeries&) = default;
};

class SeriesRing {
 public:
  using Elt = TruncSeries;

  static std::shared_ptr<const SeriesRing> make(PrimeRef prime, unsigned r, unsigned D,
                                                unsigned D_T);

  const PrimeConfig& prime() const noexcept { return *prime_; }
  const PrimeRef& prime_ref() const noexcept { return prime_; }
  unsigned r() const noexcept { return r_; }
  unsigned D() const noexcept { return D_; }
  unsigned D_T() const noexcept { return DT_; }
  bool same_shape(const SeriesRing& o) const noexcept {
    return prime_->same_as(*o.prime_) && r_ == o.r_ && D_ == o.D_ && DT_ == o.DT_;
  }

  // Monomial indices: lexicographic on (e_X1..e_Xr, e_T); idx = x_index * (D_T+1) + e_T.
  std::size_t num_monomials() const noexcept { return nmon_; }
  std::size_t num_x_monomials() const noexcept { return nx_; }
  std::span<const std::uint8_t> exponents(std::uint32_t idx) const noexcept {
    return {exps_.data() + idx * (r_ + 1), r_ + 1};
  }
  unsigned t_degree(std::uint32_t idx) const noexcept { return idx % (DT_ + 1); }
  std::uint32_t x_index(std::uint32_t idx) const noexcept { return idx / (DT_ + 1); }
  // -1 when outside the truncation.
  int index_of(std::span<const unsigned> exps) const noexcept;
  int product_index(std::uint32_t i, std::uint32_t j) const noexcept {
    return prod_[i * nmon_ + j];
  }
  int shift_t(std::uint32_t i) const noexcept { return shift_t_[i]; }

  TruncSeries zero() const { return {}; }
  TruncSeries one() const;
  TruncSeries constant(const PadicScalar& s) const;
  TruncSeries monomial(std::span<const unsigned> exps, const PadicScalar& s) const;
  TruncSeries var_x(unsigned j) const;
  TruncSeries var_t() const;
  // (1+T)^m for any integer m.
  TruncSeries one_plus_t_pow(long long m) const;

  TruncSeries add(const TruncSeries& a, const TruncSeries& b) const;
  TruncSeries sub(const TruncSeries& a, const TruncSeries& b) const;
  TruncSeries neg(const TruncSeries& a) const;
  TruncSeries mul(const TruncSeries& a, const TruncSeries& b) const;
  TruncSeries scale(const PadicScalar& s, const TruncSeries& a) const;
  TruncSeries mul_int(const TruncSeries& a, long long k) const;
  TruncSeries pow(const TruncSeries& a, unsigned long long e) const;
  TruncSeries invert(const TruncSeries& a) const;
  bool is_unit(const TruncSeries& a) const noexcept;
  bool is_zero(const TruncSeries& a) const noexcept { return a.terms.empty(); }
  bool equal(const TruncSeries& a, const TruncSeries& b) const noexcept { return a == b; }
  PadicScalar constant_term(const TruncSeries& a) const noexcept;
  PadicScalar coefficient(const TruncSeries& a, std::uint32_t idx) const noexcept;

  // Full Frobenius: scalars, X_j -> X_j^p, T -> (1+T)^p - 1.
  TruncSeries frobenius(const TruncSeries& a) const;
  // Frobenius on the coefficient ring only: scalars and X_j -> X_j^p, T fixed.
  TruncSeries frobenius_coeffs(const TruncSeries& a) const;
  // T -> (1+T)^m - 1, m >= 1.
  TruncSeries substitute_t_power(const TruncSeries& a, unsigned m) const;

  // Valuation: largest v with a in p^v (N when a == 0).
  unsigned valuation(const TruncSeries& a) const noexcept;
  TruncSeries div_pk(const TruncSeries& a, unsigned k) const;
  TruncSeries mul_pk(const TruncSeries& a, unsigned k) const;
  TruncSeries reduce(const TruncSeries& a, unsigned k) const;

  // Evaluate X_j -> values[j]; the result lives in target (same prime, r = 0).
  TruncSeries evaluate_x(const TruncSeries& a, std::span<const PadicScalar> values,
                         const SeriesRing& target) const;

  // Build from (monomial index, scalar) pairs in any order; zeros dropped, duplicates summed.
  TruncSeries from_terms(std::vector<std::pair<std::uint32_t, PadicScalar>> terms) const;
  // Dense accumulation helper used by hot loops: slots are (monomial, 2f-1 poly coords).
  TruncSeries from_accumulator(std::span<const u128> acc) const;
  std::size_t acc_width() const noexcept { return 2 * prime_->f() - 1; }
  bool small_modulus() const noexcept { return prime_->modulus() < (u64(1) << 32); }
  // acc[0 .. 2f-2] += a * b (coordinate convolution).
  void accumulate(u128* acc, const PadicScalar& a, const PadicScalar& b) const noexcept {
    const unsigned f = prime_->f();
    const u64 m = prime_->modulus();
    if (f == 1) {
      acc[0] += small_ ? static_cast<u128>(a.c[0] * b.c[0]) : mul_mod(a.c[0], b.c[0], m);
      return;
    }
    for (unsigned i = 0; i < f; ++i) {
      if (a.c[i] == 0) continue;
      for (unsigned j = 0; j < f; ++j)
        acc[i + j] += small_ ? static_cast<u128>(a.c[i] * b.c[j]) : mul_mod(a.c[i], b.c[j], m);
    }
  }

 private:
  SeriesRing(PrimeRef prime, unsigned r, unsigned D, unsigned D_T);

  PrimeRef prime_;
  unsigned r_, D_, DT_;
  bool small_ = false;
  std::size_t nmon_ = 0, nx_ = 0;
  std::vector<std::uint8_t> exps_;
  std::vector<int> lookup_;  // dense over (D+1)^r (D_T+1)
  std::vector<int> prod_;
  std::vector<int> shift_t_;
  std::vector<int> frob_x_;  // X-part Frobenius, T fixed
  std::vector<TruncSeries> frob_mono_;
};

using SeriesRef = std::shared_ptr<const SeriesRing>;

// Config-checked value wrapper.
class Series {
 public:
  Series(SeriesRef ring, TruncSeries v) : ring_(std::move(ring)), v_(std::move(v)) {}
  const TruncSeries& value() const noexcept { return v_; }
  const SeriesRef& ring() const noexcept { return ring_; }
  Series operator+(const Series& o) const { return {ring_, ring_->add(v_, checked(o))}; }
  Series operator-(const Series& o) const { return {ring_, ring_->sub(v_, checked(o))}; }
  Series operator*(const Series& o) const { return {ring_, ring_->mul(v_, checked(o))}; }
  Series inverse() const { return {ring_, ring_->invert(v_)}; }
  Series frobenius() const { return {ring_, ring_->frobenius(v_)}; }
  bool operator==(const Series& o) const { return v_ == checked(o); }

 private:
  const TruncSeries& checked(const Series& o) const {
    if (ring_ != o.ring_ && !ring_->same_shape(*o.ring_))
      raise(ErrorKind::ConfigMismatch, "series from different rings");
    return o.v_;
  }
  SeriesRef ring_;
  TruncSeries v_;
};

// Extension of a commutative ring by a primitive p-th root of unity zeta.
// Elements are held modulo zeta^p - 1 and reduced modulo Phi_p on demand.
template <class Ring>
class CycloRing {
 public:
  using Base = typename Ring::Elt;
  struct Elt {
    std::vector<Base> c;  // coefficient of zeta^i, i < p
  };

  CycloRing(const Ring& base, unsigned p) : base_(base), p_(p) {}

  Elt embed(const Base& b) const {
    Elt e{std::vector<Base>(p_, base_.zero())};
    e.c[0] = b;
    return e;
  }
  Elt zeta_times(unsigned k, const Base& b) const {
    Elt e{std::vector<Base>(p_, base_.zero())};
    e.c[k % p_] = b;
    return e;
  }
  Elt add(const Elt& a, const Elt& b) const {
    Elt e{std::vector<Base>(p_)};
    for (unsigned i = 0; i < p_; ++i) e.c[i] = base_.add(a.c[i], b.c[i]);
    return e;
  }
  Elt mul(const Elt& a, const Elt& b) const {
    Elt e{std::vector<Base>(p_, base_.zero())};
    for (unsigned i = 0; i < p_; ++i) {
      if (base_.is_zero(a.c[i])) continue;
      for (unsigned j = 0; j < p_; ++j) {
        if (base_.is_zero(b.c[j])) continue;
        auto& slot = e.c[(i + j) % p_];
        slot = base_.add(slot, base_.mul(a.c[i], b.c[j]));
      }
    }
    return e;
  }
  // zeta -> zeta^s.
  Elt galois(const Elt& a, unsigned s) const {
    Elt e{std::vector<Base>(p_, base_.zero())};
    for (unsigned i = 0; i < p_; ++i) e.c[(i * s) % p_] = a.c[i];
    return e;
  }
  // Coordinates in the basis 1, zeta, ..., zeta^{p-2}.
  std::vector<Base> canonical(const Elt& a) const {
    std::vector<Base> out(p_ - 1);
    for (unsigned i = 0; i + 1 < p_; ++i) out[i] = base_.sub(a.c[i], a.c[p_ - 1]);
    return out;
  }
  bool equal(const Elt& a, const Elt& b) const {
    auto ca = canonical(a), cb = canonical(b);
    for (unsigned i = 0; i + 1 < p_; ++i)
      if (!base_.equal(ca[i], cb[i])) return false;
    return true;
  }
  // Base-ring value when all higher coordinates vanish.
  bool descends(const Elt& a, Base& out) const {
    auto c = canonical(a);
    for (unsigned i = 1; i + 1 < p_; ++i)
      if (!base_.is_zero(c[i])) return false;
    out = c[0];
    return true;
  }

 private:
  const Ring& base_;
  unsigned p_;
};

// Smallest primitive root modulo an odd prime p.
unsigned primitive_root(unsigned p);

}  // namespace k1lab
