#include "k1lab/padic.hpp"

#include <sstream>

namespace k1lab {

namespace {

struct MinpolyEntry {
  unsigned p, f;
  std::array<u64, kMaxDegree + 1> coeffs;  // low to high, monic
};

// Degree 1 entries are x - g for a primitive root g; they only fix the table shape.
constexpr MinpolyEntry kMinpolyTable[] = {
    {3, 1, {1, 1}},        {3, 2, {1, 0, 1}},     {3, 3, {1, 2, 0, 1}},
    {5, 1, {3, 1}},        {5, 2, {2, 4, 1}},     {5, 3, {3, 3, 0, 1}},
    {7, 1, {4, 1}},        {7, 2, {3, 6, 1}},     {7, 3, {4, 0, 6, 1}},
    {11, 1, {9, 1}},       {11, 2, {2, 7, 1}},    {11, 3, {9, 2, 0, 1}},
    {13, 1, {11, 1}},      {13, 2, {2, 12, 1}},   {13, 3, {11, 2, 0, 1}},
};

bool is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool has_root_mod_p(const std::vector<u64>& poly, unsigned p) {
  for (u64 x = 0; x < p; ++x) {
    u64 v = 0;
    for (std::size_t i = poly.size(); i-- > 0;) v = (v * x + poly[i] % p) % p;
    if (v == 0) return true;
  }
  return false;
}

}  // namespace

std::vector<u64> builtin_minpoly(unsigned p, unsigned f) {
  for (const auto& e : kMinpolyTable)
    if (e.p == p && e.f == f) return {e.coeffs.begin(), e.coeffs.begin() + f + 1};
  raise(ErrorKind::InvalidConfig,
        "no built-in minimal polynomial for p=" + std::to_string(p) + ", f=" + std::to_string(f));
}

std::shared_ptr<const PrimeConfig> PrimeConfig::make(unsigned p, unsigned f, unsigned N) {
  if (p < 3 || !is_prime(p)) raise(ErrorKind::InvalidConfig, "p must be an odd prime");
  if (f < 1 || f > kMaxDegree) raise(ErrorKind::InvalidConfig, "f must lie in [1, 3]");
  if (N < 1) raise(ErrorKind::InvalidConfig, "precision N must be >= 1");
  u128 m = 1;
  for (unsigned i = 0; i < N; ++i) {
    m *= p;
    if (m >= (u128(1) << 62)) raise(ErrorKind::InvalidConfig, "p^N must stay below 2^62");
  }
  auto mp = builtin_minpoly(p, f);
  if (f > 1 && has_root_mod_p(mp, p))
    raise(ErrorKind::InvalidConfig, "minimal polynomial is reducible mod p");
  return std::shared_ptr<const PrimeConfig>(new PrimeConfig(p, f, N, std::move(mp)));
}

PrimeConfig::PrimeConfig(unsigned p, unsigned f, unsigned N, std::vector<u64> minpoly)
    : p_(p), f_(f), N_(N), minpoly_(std::move(minpoly)) {
  pows_.resize(N + 1);
  pows_[0] = 1;
  for (unsigned i = 1; i <= N; ++i) pows_[i] = pows_[i - 1] * p;
  mod_ = pows_[N];
  q_ = ipow(p, f);
  for (auto& c : minpoly_) c %= mod_;

  frob_powers_[0] = one();
  if (f_ == 1) return;
  // Hensel-lift the root of minpoly congruent to t^p.
  PadicScalar r = pow(generator(), p_);
  for (int iter = 0;; ++iter) {
    PadicScalar val = zero(), der = zero();
    for (std::size_t i = minpoly_.size(); i-- > 0;) {
      val = mul(val, r);
      val.c[0] = add_mod(val.c[0], minpoly_[i], mod_);
    }
    for (std::size_t i = minpoly_.size(); i-- > 1;) {
      der = mul(der, r);
      der.c[0] = add_mod(der.c[0], mul_mod(minpoly_[i], i, mod_), mod_);
    }
    if (is_zero(val)) break;
    if (iter > 64) raise(ErrorKind::InvalidConfig, "Frobenius lift did not converge");
    r = sub(r, mul(val, invert(der)));
  }
  for (unsigned i = 1; i < f_; ++i) frob_powers_[i] = mul(frob_powers_[i - 1], r);
}

PadicScalar PrimeConfig::one() const noexcept {
  PadicScalar s;
  s.c[0] = 1 % mod_;
  return s;
}

PadicScalar PrimeConfig::from_int(long long v) const noexcept {
  PadicScalar s;
  long long m = static_cast<long long>(mod_);
  long long r = v % m;
  if (r < 0) r += m;
  s.c[0] = static_cast<u64>(r);
  return s;
}

PadicScalar PrimeConfig::from_coords(std::span<const u64> coords) const {
  if (coords.size() != f_) raise(ErrorKind::DimensionMismatch, "scalar needs f coordinates");
  PadicScalar s;
  for (unsigned i = 0; i < f_; ++i) s.c[i] = coords[i] % mod_;
  return s;
}

PadicScalar PrimeConfig::generator() const {
  if (f_ == 1) {
    // t is a root of x - g, i.e. the residue-level primitive root.
    return from_int(static_cast<long long>(neg_mod(minpoly_[0], mod_)));
  }
  PadicScalar s;
  s.c[1] = 1;
  return s;
}

PadicScalar PrimeConfig::add(const PadicScalar& a, const PadicScalar& b) const noexcept {
  PadicScalar r;
  for (unsigned i = 0; i < f_; ++i) r.c[i] = add_mod(a.c[i], b.c[i], mod_);
  return r;
}

PadicScalar PrimeConfig::sub(const PadicScalar& a, const PadicScalar& b) const noexcept {
  PadicScalar r;
  for (unsigned i = 0; i < f_; ++i) r.c[i] = sub_mod(a.c[i], b.c[i], mod_);
  return r;
}

PadicScalar PrimeConfig::neg(const PadicScalar& a) const noexcept {
  PadicScalar r;
  for (unsigned i = 0; i < f_; ++i) r.c[i] = neg_mod(a.c[i], mod_);
  return r;
}

PadicScalar PrimeConfig::reduce_accumulator(const u128* acc) const noexcept {
  PadicScalar out;
  std::array<u64, 2 * kMaxDegree - 1> c{};
  const unsigned len = 2 * f_ - 1;
  for (unsigned i = 0; i < len; ++i) c[i] = static_cast<u64>(acc[i] % mod_);
  for (unsigned k = len; k-- > f_;) {
    u64 lead = c[k];
    if (lead == 0) continue;
    for (unsigned i = 0; i < f_; ++i)
      c[k - f_ + i] = sub_mod(c[k - f_ + i], mul_mod(lead, minpoly_[i], mod_), mod_);
    c[k] = 0;
  }
  for (unsigned i = 0; i < f_; ++i) out.c[i] = c[i];
  return out;
}

PadicScalar PrimeConfig::mul(const PadicScalar& a, const PadicScalar& b) const noexcept {
  PadicScalar r;
  if (f_ == 1) {
    r.c[0] = mul_mod(a.c[0], b.c[0], mod_);
    return r;
  }
  std::array<u128, 2 * kMaxDegree - 1> acc{};
  for (unsigned i = 0; i < f_; ++i)
    for (unsigned j = 0; j < f_; ++j) acc[i + j] += static_cast<u128>(a.c[i]) * b.c[j];
  return reduce_accumulator(acc.data());
}

PadicScalar PrimeConfig::mul_int(const PadicScalar& a, u64 k) const noexcept {
  PadicScalar r;
  k %= mod_;
  for (unsigned i = 0; i < f_; ++i) r.c[i] = mul_mod(a.c[i], k, mod_);
  return r;
}

PadicScalar PrimeConfig::pow(PadicScalar a, u64 e) const noexcept {
  PadicScalar r = one();
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

bool PrimeConfig::is_unit(const PadicScalar& a) const noexcept {
  for (unsigned i = 0; i < f_; ++i)
    if (a.c[i] % p_ != 0) return true;
  return false;
}

PadicScalar PrimeConfig::invert(const PadicScalar& a) const {
  if (!is_unit(a)) raise(ErrorKind::NonUnit, "scalar " + to_string(a) + " has zero residue");
  if (f_ == 1) {
    PadicScalar r;
    r.c[0] = try_inv_mod(a.c[0], mod_);
    return r;
  }
  // a^{q-2} inverts a modulo p; Newton doubles the precision.
  PadicScalar x = pow(a, q_ - 2);
  const PadicScalar two = from_int(2);
  for (unsigned prec = 1; prec < N_; prec *= 2) x = mul(x, sub(two, mul(a, x)));
  return x;
}

PadicScalar PrimeConfig::frobenius(const PadicScalar& a) const noexcept {
  if (f_ == 1) return a;
  PadicScalar r;
  for (unsigned i = 0; i < f_; ++i) {
    if (a.c[i] == 0) continue;
    r = add(r, mul_int(frob_powers_[i], a.c[i]));
  }
  return r;
}

PadicScalar PrimeConfig::residue(const PadicScalar& a) const noexcept {
  PadicScalar r;
  for (unsigned i = 0; i < f_; ++i) r.c[i] = a.c[i] % p_;
  return r;
}

PadicScalar PrimeConfig::teichmuller(const PadicScalar& residue_in) const {
  PadicScalar x = residue(residue_in);
  if (is_zero(x)) raise(ErrorKind::ZeroResidue, "Teichmuller lift of zero");
  for (unsigned i = 0; i <= N_ + 1; ++i) {
    PadicScalar y = pow(x, q_);
    if (y == x) return x;
    x = y;
  }
  return x;
}

unsigned PrimeConfig::residue_trace(const PadicScalar& a) const noexcept {
  PadicScalar s = a, acc = a;
  for (unsigned i = 1; i < f_; ++i) {
    s = frobenius(s);
    acc = add(acc, s);
  }
  return static_cast<unsigned>(acc.c[0] % p_);
}

unsigned PrimeConfig::valuation(const PadicScalar& a) const noexcept {
  unsigned v = N_;
  for (unsigned i = 0; i < f_; ++i)
    if (a.c[i] != 0) v = std::min<unsigned>(v, static_cast<unsigned>(k1lab::valuation(a.c[i], p_)));
  return v;
}

PadicScalar PrimeConfig::div_pk(const PadicScalar& a, unsigned k) const noexcept {
  PadicScalar r;
  for (unsigned i = 0; i < f_; ++i) r.c[i] = a.c[i] / pows_[k];
  return r;
}

PadicScalar PrimeConfig::reduce(const PadicScalar& a, unsigned k) const noexcept {
  if (k >= N_) return a;
  PadicScalar r;
  for (unsigned i = 0; i < f_; ++i) r.c[i] = a.c[i] % pows_[k];
  return r;
}

std::string PrimeConfig::to_string(const PadicScalar& a) const {
  std::ostringstream os;
  os << '[';
  for (unsigned i = 0; i < f_; ++i) os << (i ? "," : "") << a.c[i];
  os << ']';
  return os.str();
}

}  // namespace k1lab
