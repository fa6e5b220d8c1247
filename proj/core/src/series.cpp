#include "k1lab/series.hpp"

#include <algorithm>

namespace k1lab {

namespace {

void enumerate_x(unsigned r, unsigned D, std::vector<unsigned>& cur, unsigned pos, unsigned left,
                 std::vector<std::vector<unsigned>>& out) {
  if (pos == r) {
    out.push_back(cur);
    return;
  }
  for (unsigned e = 0; e <= left; ++e) {
    cur[pos] = e;
    enumerate_x(r, D, cur, pos + 1, left - e, out);
  }
  cur[pos] = 0;
}

}  // namespace

unsigned primitive_root(unsigned p) {
  for (unsigned g = 2; g < p; ++g) {
    bool ok = true;
    u64 x = 1;
    for (unsigned k = 1; k + 1 < p; ++k) {
      x = x * g % p;
      if (x == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  return 1;
}

std::shared_ptr<const SeriesRing> SeriesRing::make(PrimeRef prime, unsigned r, unsigned D,
                                                   unsigned D_T) {
  if (!prime) raise(ErrorKind::InvalidConfig, "missing prime config");
  if (D < 1 || D_T < 1) raise(ErrorKind::InvalidConfig, "truncation degrees must be >= 1");
  if (r > 4) raise(ErrorKind::InvalidConfig, "at most 4 X-variables are supported");
  if (D > 12 || D_T > 12) raise(ErrorKind::InvalidConfig, "truncation degree too large");
  return std::shared_ptr<const SeriesRing>(new SeriesRing(std::move(prime), r, D, D_T));
}

SeriesRing::SeriesRing(PrimeRef prime, unsigned r, unsigned D, unsigned D_T)
    : prime_(std::move(prime)), r_(r), D_(D), DT_(D_T) {
  small_ = prime_->modulus() < (u64(1) << 32);
  std::vector<std::vector<unsigned>> xs;
  std::vector<unsigned> cur(r, 0);
  enumerate_x(r, D, cur, 0, D, xs);
  nx_ = xs.size();
  nmon_ = nx_ * (DT_ + 1);
  exps_.resize(nmon_ * (r_ + 1));
  std::size_t dense = DT_ + 1;
  for (unsigned i = 0; i < r_; ++i) dense *= (D_ + 1);
  lookup_.assign(dense, -1);
  for (std::size_t xi = 0; xi < nx_; ++xi) {
    for (unsigned t = 0; t <= DT_; ++t) {
      std::size_t idx = xi * (DT_ + 1) + t;
      std::size_t code = 0;
      for (unsigned j = 0; j < r_; ++j) {
        exps_[idx * (r_ + 1) + j] = static_cast<std::uint8_t>(xs[xi][j]);
        code = code * (D_ + 1) + xs[xi][j];
      }
      exps_[idx * (r_ + 1) + r_] = static_cast<std::uint8_t>(t);
      lookup_[code * (DT_ + 1) + t] = static_cast<int>(idx);
    }
  }
  prod_.assign(nmon_ * nmon_, -1);
  std::vector<unsigned> e(r_ + 1);
  for (std::size_t i = 0; i < nmon_; ++i)
    for (std::size_t j = 0; j < nmon_; ++j) {
      for (unsigned k = 0; k <= r_; ++k) e[k] = exps_[i * (r_ + 1) + k] + exps_[j * (r_ + 1) + k];
      prod_[i * nmon_ + j] = index_of(e);
    }
  shift_t_.assign(nmon_, -1);
  frob_x_.assign(nmon_, -1);
  const unsigned p = prime_->p();
  for (std::size_t i = 0; i < nmon_; ++i) {
    for (unsigned k = 0; k <= r_; ++k) e[k] = exps_[i * (r_ + 1) + k];
    e[r_] += 1;
    shift_t_[i] = index_of(e);
    e[r_] -= 1;
    for (unsigned k = 0; k < r_; ++k) e[k] *= p;
    frob_x_[i] = index_of(e);
  }
  // phi(X^a T^j) = X^{pa} ((1+T)^p - 1)^j
  TruncSeries tp = sub(one_plus_t_pow(p), one());
  frob_mono_.resize(nmon_);
  for (std::size_t i = 0; i < nmon_; ++i) {
    if (frob_x_[i] < 0) continue;
    unsigned t = t_degree(static_cast<std::uint32_t>(i));
    std::uint32_t base = static_cast<std::uint32_t>(frob_x_[i]) - t;
    TruncSeries m{{{base, prime_->one()}}};
    frob_mono_[i] = mul(m, pow(tp, t));
  }
}

int SeriesRing::index_of(std::span<const unsigned> exps) const noexcept {
  if (exps.size() != r_ + 1) return -1;
  unsigned tot = 0;
  std::size_t code = 0;
  for (unsigned j = 0; j < r_; ++j) {
    tot += exps[j];
    if (exps[j] > D_ || tot > D_) return -1;
    code = code * (D_ + 1) + exps[j];
  }
  if (exps[r_] > DT_) return -1;
  return lookup_[code * (DT_ + 1) + exps[r_]];
}

TruncSeries SeriesRing::one() const { return constant(prime_->one()); }

TruncSeries SeriesRing::constant(const PadicScalar& s) const {
  if (prime_->is_zero(s)) return {};
  return TruncSeries{{{0u, s}}};
}

TruncSeries SeriesRing::monomial(std::span<const unsigned> exps, const PadicScalar& s) const {
  int idx = index_of(exps);
  if (idx < 0 || prime_->is_zero(s)) return {};
  return TruncSeries{{{static_cast<std::uint32_t>(idx), s}}};
}

TruncSeries SeriesRing::var_x(unsigned j) const {
  if (j >= r_) raise(ErrorKind::DimensionMismatch, "X-variable index out of range");
  std::vector<unsigned> e(r_ + 1, 0);
  e[j] = 1;
  return monomial(e, prime_->one());
}

TruncSeries SeriesRing::var_t() const {
  std::vector<unsigned> e(r_ + 1, 0);
  e[r_] = 1;
  return monomial(e, prime_->one());
}

TruncSeries SeriesRing::one_plus_t_pow(long long m) const {
  // Binomial expansion; negative m through inversion.
  if (m < 0) return invert(one_plus_t_pow(-m));
  std::vector<std::pair<std::uint32_t, PadicScalar>> terms;
  const u64 mod = prime_->modulus();
  // C(m, j) via Pascal rows to avoid division.
  std::vector<u64> row(DT_ + 1, 0);
  row[0] = 1 % mod;
  for (long long k = 0; k < m; ++k)
    for (unsigned j = DT_; j >= 1; --j) row[j] = add_mod(row[j], row[j - 1], mod);
  for (unsigned j = 0; j <= DT_; ++j) {
    if (row[j] == 0) continue;
    PadicScalar s;
    s.c[0] = row[j];
    terms.emplace_back(static_cast<std::uint32_t>(j), s);
  }
  return TruncSeries{std::move(terms)};
}

TruncSeries SeriesRing::add(const TruncSeries& a, const TruncSeries& b) const {
  TruncSeries out;
  out.terms.reserve(a.terms.size() + b.terms.size());
  std::size_t i = 0, j = 0;
  while (i < a.terms.size() || j < b.terms.size()) {
    if (j == b.terms.size() || (i < a.terms.size() && a.terms[i].first < b.terms[j].first)) {
      out.terms.push_back(a.terms[i++]);
    } else if (i == a.terms.size() || b.terms[j].first < a.terms[i].first) {
      out.terms.push_back(b.terms[j++]);
    } else {
      PadicScalar s = prime_->add(a.terms[i].second, b.terms[j].second);
      if (!prime_->is_zero(s)) out.terms.emplace_back(a.terms[i].first, s);
      ++i;
      ++j;
    }
  }
  return out;
}

TruncSeries SeriesRing::neg(const TruncSeries& a) const {
  TruncSeries out = a;
  for (auto& [idx, s] : out.terms) s = prime_->neg(s);
  return out;
}

TruncSeries SeriesRing::sub(const TruncSeries& a, const TruncSeries& b) const {
  return add(a, neg(b));
}

TruncSeries SeriesRing::from_accumulator(std::span<const u128> acc) const {
  const std::size_t w = acc_width();
  TruncSeries out;
  for (std::size_t idx = 0; idx < nmon_; ++idx) {
    const u128* slot = acc.data() + idx * w;
    bool any = false;
    for (std::size_t k = 0; k < w; ++k) any |= slot[k] != 0;
    if (!any) continue;
    PadicScalar s = prime_->reduce_accumulator(slot);
    if (!prime_->is_zero(s)) out.terms.emplace_back(static_cast<std::uint32_t>(idx), s);
  }
  return out;
}

TruncSeries SeriesRing::mul(const TruncSeries& a, const TruncSeries& b) const {
  if (a.terms.empty() || b.terms.empty()) return {};
  const std::size_t w = acc_width();
  std::vector<u128> acc(nmon_ * w, 0);
  for (const auto& [i, x] : a.terms)
    for (const auto& [j, y] : b.terms) {
      int k = prod_[i * nmon_ + j];
      if (k < 0) continue;
      accumulate(acc.data() + static_cast<std::size_t>(k) * w, x, y);
    }
  return from_accumulator(acc);
}

TruncSeries SeriesRing::scale(const PadicScalar& s, const TruncSeries& a) const {
  TruncSeries out;
  out.terms.reserve(a.terms.size());
  for (const auto& [idx, c] : a.terms) {
    PadicScalar v = prime_->mul(s, c);
    if (!prime_->is_zero(v)) out.terms.emplace_back(idx, v);
  }
  return out;
}

TruncSeries SeriesRing::mul_int(const TruncSeries& a, long long k) const {
  return scale(prime_->from_int(k), a);
}

TruncSeries SeriesRing::pow(const TruncSeries& a, unsigned long long e) const {
  TruncSeries r = one(), b = a;
  while (e) {
    if (e & 1) r = mul(r, b);
    e >>= 1;
    if (e) b = mul(b, b);
  }
  return r;
}

bool SeriesRing::is_unit(const TruncSeries& a) const noexcept {
  return prime_->is_unit(constant_term(a));
}

PadicScalar SeriesRing::constant_term(const TruncSeries& a) const noexcept {
  return coefficient(a, 0);
}

PadicScalar SeriesRing::coefficient(const TruncSeries& a, std::uint32_t idx) const noexcept {
  auto it = std::lower_bound(a.terms.begin(), a.terms.end(), idx,
                             [](const auto& t, std::uint32_t v) { return t.first < v; });
  if (it != a.terms.end() && it->first == idx) return it->second;
  return {};
}

TruncSeries SeriesRing::invert(const TruncSeries& a) const {
  PadicScalar c = constant_term(a);
  if (!prime_->is_unit(c)) raise(ErrorKind::NonUnit, "series constant term is not a unit");
  TruncSeries x = constant(prime_->invert(c));
  const TruncSeries two = constant(prime_->from_int(2));
  for (int iter = 0; iter < 64; ++iter) {
    TruncSeries ax = mul(a, x);
    if (ax == one()) return x;
    x = mul(x, sub(two, ax));
  }
  raise(ErrorKind::PrecisionExhausted, "series inversion did not converge");
}

TruncSeries SeriesRing::frobenius(const TruncSeries& a) const {
  TruncSeries out;
  for (const auto& [idx, c] : a.terms) {
    if (frob_mono_[idx].terms.empty()) continue;
    out = add(out, scale(prime_->frobenius(c), frob_mono_[idx]));
  }
  return out;
}

TruncSeries SeriesRing::frobenius_coeffs(const TruncSeries& a) const {
  std::vector<std::pair<std::uint32_t, PadicScalar>> terms;
  for (const auto& [idx, c] : a.terms) {
    int k = frob_x_[idx];
    if (k < 0) continue;
    terms.emplace_back(static_cast<std::uint32_t>(k), prime_->frobenius(c));
  }
  return from_terms(std::move(terms));
}

TruncSeries SeriesRing::substitute_t_power(const TruncSeries& a, unsigned m) const {
  if (m == 1) return a;
  TruncSeries sub_t = sub(one_plus_t_pow(m), one());
  std::vector<TruncSeries> powers(DT_ + 1);
  powers[0] = one();
  for (unsigned j = 1; j <= DT_; ++j) powers[j] = mul(powers[j - 1], sub_t);
  TruncSeries out;
  for (const auto& [idx, c] : a.terms) {
    unsigned t = t_degree(idx);
    TruncSeries xpart{{{idx - t, c}}};
    out = add(out, mul(xpart, powers[t]));
  }
  return out;
}

unsigned SeriesRing::valuation(const TruncSeries& a) const noexcept {
  unsigned v = prime_->N();
  for (const auto& [idx, c] : a.terms) v = std::min(v, prime_->valuation(c));
  return v;
}

TruncSeries SeriesRing::div_pk(const TruncSeries& a, unsigned k) const {
  if (k == 0) return a;
  TruncSeries out;
  for (const auto& [idx, c] : a.terms) {
    PadicScalar v = prime_->div_pk(c, k);
    if (!prime_->is_zero(v)) out.terms.emplace_back(idx, v);
  }
  return out;
}

TruncSeries SeriesRing::mul_pk(const TruncSeries& a, unsigned k) const {
  if (k == 0) return a;
  if (k >= prime_->N()) return {};
  return scale(prime_->from_int(static_cast<long long>(prime_->pw(k))), a);
}

TruncSeries SeriesRing::reduce(const TruncSeries& a, unsigned k) const {
  if (k >= prime_->N()) return a;
  TruncSeries out;
  for (const auto& [idx, c] : a.terms) {
    PadicScalar v = prime_->reduce(c, k);
    if (!prime_->is_zero(v)) out.terms.emplace_back(idx, v);
  }
  return out;
}

TruncSeries SeriesRing::evaluate_x(const TruncSeries& a, std::span<const PadicScalar> values,
                                   const SeriesRing& target) const {
  if (values.size() != r_) raise(ErrorKind::DimensionMismatch, "need one value per X-variable");
  if (target.r_ != 0 || target.DT_ != DT_ || !target.prime_->same_as(*prime_))
    raise(ErrorKind::ConfigMismatch, "evaluation target must be the r = 0 ring of the same shape");
  std::vector<std::vector<PadicScalar>> pw(r_, std::vector<PadicScalar>(D_ + 1));
  for (unsigned j = 0; j < r_; ++j) {
    pw[j][0] = prime_->one();
    for (unsigned e = 1; e <= D_; ++e) pw[j][e] = prime_->mul(pw[j][e - 1], values[j]);
  }
  std::vector<PadicScalar> coeff(DT_ + 1);
  for (const auto& [idx, c] : a.terms) {
    auto ex = exponents(idx);
    PadicScalar v = c;
    for (unsigned j = 0; j < r_; ++j) v = prime_->mul(v, pw[j][ex[j]]);
    coeff[ex[r_]] = prime_->add(coeff[ex[r_]], v);
  }
  TruncSeries out;
  for (unsigned t = 0; t <= DT_; ++t)
    if (!prime_->is_zero(coeff[t])) out.terms.emplace_back(t, coeff[t]);
  return out;
}

TruncSeries SeriesRing::from_terms(std::vector<std::pair<std::uint32_t, PadicScalar>> terms) const {
  std::sort(terms.begin(), terms.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  TruncSeries out;
  for (auto& [idx, s] : terms) {
    if (!out.terms.empty() && out.terms.back().first == idx) {
      out.terms.back().second = prime_->add(out.terms.back().second, s);
      if (prime_->is_zero(out.terms.back().second)) out.terms.pop_back();
    } else if (!prime_->is_zero(s)) {
      out.terms.emplace_back(idx, s);
    }
  }
  return out;
}

}  // namespace k1lab
