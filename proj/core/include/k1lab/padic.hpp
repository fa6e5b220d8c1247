#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "k1lab/error.hpp"
#include "k1lab/modarith.hpp"

namespace k1lab {

inline constexpr std::size_t kMaxDegree = 3;

// Coordinates w.r.t. the power basis 1, t, ..., t^{f-1}; unused slots stay 0.
struct PadicScalar {
  std::array<u64, kMaxDegree> c{};
  friend bool operator==(const PadicScalar&, const PadicScalar&) = default;
};

// O/p^N with O unramified of degree f over Z_p, O = Z_p[t]/(minpoly).
class PrimeConfig {
 public:
  static std::shared_ptr<const PrimeConfig> make(unsigned p, unsigned f, unsigned N);

  unsigned p() const noexcept { return p_; }
  unsigned f() const noexcept { return f_; }
  unsigned N() const noexcept { return N_; }
  u64 modulus() const noexcept { return mod_; }
  u64 q() const noexcept { return q_; }
  // pw(k) = p^k for 0 <= k <= N.
  u64 pw(unsigned k) const noexcept { return pows_[k]; }
  const std::vector<u64>& minpoly() const noexcept { return minpoly_; }
  bool same_as(const PrimeConfig& o) const noexcept {
    return p_ == o.p_ && f_ == o.f_ && N_ == o.N_;
  }

  PadicScalar zero() const noexcept { return {}; }
  PadicScalar one() const noexcept;
  PadicScalar from_int(long long v) const noexcept;
  PadicScalar from_coords(std::span<const u64> coords) const;
  PadicScalar generator() const;  // the class of t

  PadicScalar add(const PadicScalar& a, const PadicScalar& b) const noexcept;
  PadicScalar sub(const PadicScalar& a, const PadicScalar& b) const noexcept;
  PadicScalar neg(const PadicScalar& a) const noexcept;
  PadicScalar mul(const PadicScalar& a, const PadicScalar& b) const noexcept;
  PadicScalar mul_int(const PadicScalar& a, u64 k) const noexcept;
  PadicScalar pow(PadicScalar a, u64 e) const noexcept;
  PadicScalar invert(const PadicScalar& a) const;
  PadicScalar frobenius(const PadicScalar& a) const noexcept;
  PadicScalar teichmuller(const PadicScalar& residue) const;
  PadicScalar residue(const PadicScalar& a) const noexcept;
  unsigned residue_trace(const PadicScalar& a) const noexcept;

  bool is_zero(const PadicScalar& a) const noexcept { return a == PadicScalar{}; }
  bool is_unit(const PadicScalar& a) const noexcept;
  // Smallest v with some coordinate not divisible by p^{v+1}; N for zero.
  unsigned valuation(const PadicScalar& a) const noexcept;
  // Exact division by p^k; caller guarantees divisibility.
  PadicScalar div_pk(const PadicScalar& a, unsigned k) const noexcept;
  // Reduction modulo p^k (k <= N), kept in canonical range of p^N.
  PadicScalar reduce(const PadicScalar& a, unsigned k) const noexcept;

  // Reduce a polynomial accumulator of 2f-1 slots (products of coordinates) to a scalar.
  PadicScalar reduce_accumulator(const u128* acc) const noexcept;

  std::string to_string(const PadicScalar& a) const;

 private:
  PrimeConfig(unsigned p, unsigned f, unsigned N, std::vector<u64> minpoly);

  unsigned p_, f_, N_;
  u64 mod_, q_;
  std::vector<u64> pows_;
  std::vector<u64> minpoly_;
  std::array<PadicScalar, kMaxDegree> frob_powers_{};  // phi(t)^i
};

using PrimeRef = std::shared_ptr<const PrimeConfig>;

// Minimal polynomial from the built-in table (low to high, monic).
std::vector<u64> builtin_minpoly(unsigned p, unsigned f);

// Config-checked value wrapper over PadicScalar.
class Padic {
 public:
  Padic(PrimeRef cfg, PadicScalar v) : cfg_(std::move(cfg)), v_(v) {}
  static Padic of(PrimeRef cfg, long long v) {
    auto s = cfg->from_int(v);
    return {std::move(cfg), s};
  }

  const PadicScalar& value() const noexcept { return v_; }
  const PrimeRef& config() const noexcept { return cfg_; }

  Padic operator+(const Padic& o) const { return {cfg_, cfg_->add(v_, checked(o))}; }
  Padic operator-(const Padic& o) const { return {cfg_, cfg_->sub(v_, checked(o))}; }
  Padic operator*(const Padic& o) const { return {cfg_, cfg_->mul(v_, checked(o))}; }
  Padic operator-() const { return {cfg_, cfg_->neg(v_)}; }
  Padic inverse() const { return {cfg_, cfg_->invert(v_)}; }
  Padic frobenius() const { return {cfg_, cfg_->frobenius(v_)}; }
  bool operator==(const Padic& o) const { return v_ == checked(o); }

 private:
  const PadicScalar& checked(const Padic& o) const {
    if (cfg_ != o.cfg_ && !cfg_->same_as(*o.cfg_))
      raise(ErrorKind::ConfigMismatch, "scalars from different prime configs");
    return o.v_;
  }
  PrimeRef cfg_;
  PadicScalar v_;
};

}  // namespace k1lab
