#include "k1lab/groupring.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace k1lab {

GroupRing::GroupRing(SeriesRef ring, FiniteGroup group) : ring_(std::move(ring)), G_(std::move(group)) {
  tpow_.reserve(2 * kTpow + 1);
  for (long long m = -kTpow; m <= kTpow; ++m) tpow_.push_back(ring_->one_plus_t_pow(m));
}

std::shared_ptr<const GroupRing> GroupRing::make(SeriesRef ring, FiniteGroup group) {
  return std::shared_ptr<const GroupRing>(new GroupRing(std::move(ring), std::move(group)));
}

Elt GroupRing::one() const { return basis(0); }

Elt GroupRing::basis(int g, long long texp) const {
  Elt e = zero();
  e[g] = t_power(texp);
  return e;
}

Elt GroupRing::from_series(const TruncSeries& s, int g) const {
  Elt e = zero();
  e[g] = s;
  return e;
}

TruncSeries GroupRing::t_power(long long m) const {
  if (m >= -kTpow && m <= kTpow) return tpow_[m + kTpow];
  return ring_->one_plus_t_pow(m);
}

Elt GroupRing::add(const Elt& a, const Elt& b) const {
  Elt out(G_.n);
  for (int g = 0; g < G_.n; ++g) {
    if (a[g].is_zero()) out[g] = b[g];
    else if (b[g].is_zero()) out[g] = a[g];
    else out[g] = ring_->add(a[g], b[g]);
  }
  return out;
}

Elt GroupRing::sub(const Elt& a, const Elt& b) const {
  Elt out(G_.n);
  for (int g = 0; g < G_.n; ++g) {
    if (b[g].is_zero()) out[g] = a[g];
    else out[g] = ring_->sub(a[g], b[g]);
  }
  return out;
}

Elt GroupRing::neg(const Elt& a) const {
  Elt out(G_.n);
  for (int g = 0; g < G_.n; ++g) out[g] = ring_->neg(a[g]);
  return out;
}

Elt GroupRing::mul(const Elt& a, const Elt& b) const {
  const SeriesRing& R = *ring_;
  const std::size_t nm = R.num_monomials(), w = R.acc_width(), stride = nm * w;
  std::vector<u128> acc(static_cast<std::size_t>(G_.n) * stride, 0);
  std::vector<char> touched(G_.n, 0);
  for (int g = 0; g < G_.n; ++g) {
    if (a[g].is_zero()) continue;
    for (int h = 0; h < G_.n; ++h) {
      if (b[h].is_zero()) continue;
      const int t = G_.op(g, h);
      const bool carry = G_.carry(g, h) != 0;
      u128* base = acc.data() + static_cast<std::size_t>(t) * stride;
      touched[t] = 1;
      for (const auto& [i, x] : a[g].terms)
        for (const auto& [j, y] : b[h].terms) {
          const int k = R.product_index(i, j);
          if (k < 0) continue;
          R.accumulate(base + static_cast<std::size_t>(k) * w, x, y);
          if (carry) {
            const int k2 = R.shift_t(static_cast<std::uint32_t>(k));
            if (k2 >= 0) R.accumulate(base + static_cast<std::size_t>(k2) * w, x, y);
          }
        }
    }
  }
  Elt out(G_.n);
  for (int t = 0; t < G_.n; ++t)
    if (touched[t])
      out[t] = R.from_accumulator({acc.data() + static_cast<std::size_t>(t) * stride, stride});
  return out;
}

Elt GroupRing::scale(const TruncSeries& s, const Elt& a) const {
  Elt out(G_.n);
  for (int g = 0; g < G_.n; ++g)
    if (!a[g].is_zero()) out[g] = ring_->mul(s, a[g]);
  return out;
}

Elt GroupRing::mul_int(const Elt& a, long long k) const {
  Elt out(G_.n);
  for (int g = 0; g < G_.n; ++g) out[g] = ring_->mul_int(a[g], k);
  return out;
}

Elt GroupRing::pow(const Elt& a, unsigned long long e) const {
  Elt r = one(), b = a;
  while (e) {
    if (e & 1) r = mul(r, b);
    e >>= 1;
    if (e) b = mul(b, b);
  }
  return r;
}

void GroupRing::add_term(Elt& a, int g, const TruncSeries& s, long long texp) const {
  if (s.is_zero()) return;
  if (texp == 0) a[g] = ring_->add(a[g], s);
  else a[g] = ring_->add(a[g], ring_->mul(s, t_power(texp)));
}

bool GroupRing::is_zero(const Elt& a) const noexcept {
  return std::all_of(a.begin(), a.end(), [](const TruncSeries& s) { return s.is_zero(); });
}

PadicScalar GroupRing::residue(const Elt& a) const noexcept {
  const PrimeConfig& P = ring_->prime();
  PadicScalar s{};
  for (const auto& c : a) s = P.add(s, ring_->constant_term(c));
  return P.residue(s);
}

bool GroupRing::is_unit(const Elt& a) const noexcept { return !prime().is_zero(residue(a)); }

Elt GroupRing::invert(const Elt& a) const {
  const PrimeConfig& P = ring_->prime();
  const PadicScalar r = residue(a);
  if (P.is_zero(r)) raise(ErrorKind::NonUnit, "group ring element has zero residue");
  Elt v = from_series(ring_->constant(P.invert(P.teichmuller(r))));
  const Elt two = from_series(ring_->constant(P.from_int(2)));
  const Elt id = one();
  for (int it = 0; it < 64; ++it) {
    Elt e = mul(a, v);
    if (e == id) return v;
    v = mul(v, sub(two, e));
  }
  raise(ErrorKind::PrecisionExhausted, "Newton inversion did not converge");
}

Elt GroupRing::map_coeffs(const Elt& a,
                          TruncSeries (SeriesRing::*fn)(const TruncSeries&) const) const {
  Elt out(G_.n);
  for (int g = 0; g < G_.n; ++g)
    if (!a[g].is_zero()) out[g] = ((*ring_).*fn)(a[g]);
  return out;
}

Elt GroupRing::reduce(const Elt& a, unsigned k) const {
  Elt out(G_.n);
  for (int g = 0; g < G_.n; ++g) out[g] = ring_->reduce(a[g], k);
  return out;
}

Elt GroupRing::div_pk(const Elt& a, unsigned k) const {
  Elt out(G_.n);
  for (int g = 0; g < G_.n; ++g) out[g] = ring_->div_pk(a[g], k);
  return out;
}

Elt GroupRing::mul_pk(const Elt& a, unsigned k) const {
  Elt out(G_.n);
  for (int g = 0; g < G_.n; ++g) out[g] = ring_->mul_pk(a[g], k);
  return out;
}

unsigned GroupRing::valuation(const Elt& a) const noexcept {
  unsigned v = ring_->prime().N();
  for (const auto& c : a) v = std::min(v, ring_->valuation(c));
  return v;
}

// ---------------------------------------------------------------------------

BlockLattice::BlockLattice(const GroupRing& ring, unsigned prec, std::span<const Elt> gens,
                           bool t_closure)
    : ring_(&ring), n_(ring.size()), nt_(ring.series().D_T() + 1),
      basis_(ring.prime().p(), prec, static_cast<std::size_t>(n_) * nt_) {
  const SeriesRing& R = ring.series();
  const u64 mod = ipow(ring.prime().p(), prec);
  HowellBuilder hb(ring.prime().p(), prec, block_size());
  std::vector<u64> v(block_size());
  for (const Elt& gen : gens) {
    std::fill(v.begin(), v.end(), 0);
    for (int g = 0; g < n_; ++g)
      for (const auto& [idx, s] : gen[g].terms) {
        if (R.x_index(idx) != 0)
          throw std::logic_error("lattice generator outside the constant X-slice");
        for (unsigned i = 1; i < kMaxDegree; ++i)
          if (s.c[i] != 0) throw std::logic_error("lattice generator with non-integer coefficient");
        v[static_cast<std::size_t>(g) * nt_ + R.t_degree(idx)] = s.c[0] % mod;
      }
    hb.insert(v);
    if (!t_closure) continue;
    std::vector<u64> shifted(v.size());
    for (unsigned j = 1; j < nt_; ++j) {
      std::fill(shifted.begin(), shifted.end(), 0);
      for (int g = 0; g < n_; ++g)
        for (unsigned t = 0; t + j < nt_; ++t)
          shifted[static_cast<std::size_t>(g) * nt_ + t + j] = v[static_cast<std::size_t>(g) * nt_ + t];
      hb.insert(shifted);
    }
  }
  basis_ = hb.finish();
}

std::vector<std::vector<u64>> BlockLattice::blocks(const Elt& a) const {
  const SeriesRing& R = ring_->series();
  const unsigned f = ring_->prime().f();
  const u64 mod = basis_.modulus();
  std::vector<std::vector<u64>> out(R.num_x_monomials() * f);
  for (int g = 0; g < n_; ++g)
    for (const auto& [idx, s] : a[g].terms) {
      const std::size_t x = R.x_index(idx);
      for (unsigned i = 0; i < f; ++i) {
        const u64 c = s.c[i] % mod;
        if (c == 0) continue;
        auto& blk = out[x * f + i];
        if (blk.empty()) blk.assign(block_size(), 0);
        blk[static_cast<std::size_t>(g) * nt_ + R.t_degree(idx)] = c;
      }
    }
  return out;
}

bool BlockLattice::contains(const Elt& a) const {
  for (const auto& blk : blocks(a))
    if (!blk.empty() && !membership(blk, basis_)) return false;
  return true;
}

Elt BlockLattice::reduce(const Elt& a) const {
  const SeriesRing& R = ring_->series();
  const unsigned f = ring_->prime().f();
  auto blks = blocks(a);
  std::vector<std::vector<std::pair<std::uint32_t, PadicScalar>>> terms(n_);
  for (std::size_t b = 0; b < blks.size(); ++b) {
    if (blks[b].empty()) continue;
    const auto red = reduce_mod(blks[b], basis_);
    const std::size_t x = b / f;
    const unsigned i = static_cast<unsigned>(b % f);
    for (int g = 0; g < n_; ++g)
      for (unsigned t = 0; t < nt_; ++t) {
        const u64 c = red[static_cast<std::size_t>(g) * nt_ + t];
        if (c == 0) continue;
        PadicScalar s{};
        s.c[i] = c;
        terms[g].emplace_back(static_cast<std::uint32_t>(x * nt_ + t), s);
      }
  }
  Elt out(n_);
  for (int g = 0; g < n_; ++g)
    if (!terms[g].empty()) out[g] = R.from_terms(std::move(terms[g]));
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<int> small_generating_set(const FiniteGroup& G) {
  std::vector<int> gens;
  std::vector<int> cur{0};
  for (int g = 0; g < G.n; ++g) {
    if (std::binary_search(cur.begin(), cur.end(), g)) continue;
    gens.push_back(g);
    cur = G.closure(gens);
  }
  return gens;
}

}  // namespace

ConjModule::ConjModule(GroupRingRef ring, std::shared_ptr<const BlockLattice> lattice)
    : ring_(std::move(ring)), lattice_(std::move(lattice)) {}

std::shared_ptr<const ConjModule> ConjModule::conjugacy(GroupRingRef ring) {
  const FiniteGroup& G = ring->group();
  if (G.is_abelian()) return plain(std::move(ring));
  std::vector<Elt> gens;
  for (int s : small_generating_set(G))
    for (int g = 0; g < G.n; ++g) {
      Elt c = ring->zero();
      ring->add_term(c, G.op(s, g), ring->series().one(), G.carry(s, g));
      ring->add_term(c, G.op(g, s), ring->series().neg(ring->series().one()), G.carry(g, s));
      if (!ring->is_zero(c)) gens.push_back(std::move(c));
    }
  auto lat = std::make_shared<BlockLattice>(*ring, ring->prime().N(), gens, true);
  if (!lat->basis().all_pivots_units())
    throw std::logic_error("commutator submodule is not a direct summand");
  return std::make_shared<ConjModule>(std::move(ring), std::move(lat));
}

std::shared_ptr<const ConjModule> ConjModule::plain(GroupRingRef ring) {
  return std::make_shared<ConjModule>(std::move(ring), nullptr);
}

Elt ConjModule::reduce(const Elt& a) const { return lattice_ ? lattice_->reduce(a) : a; }

Frac ConjModule::make(const Elt& num) const { return make(num, 0, M()); }

Frac ConjModule::make(const Elt& num, int d, int K) const {
  Frac f{num, d, K};
  normalize(f);
  return f;
}

void ConjModule::normalize(Frac& a) const {
  const int M = this->M();
  if (a.d < 0) {
    a.num = ring_->mul_pk(a.num, static_cast<unsigned>(-a.d));
    a.d = 0;
  }
  if (a.K + a.d > M) a.K = M - a.d;
  if (lattice_) a.num = lattice_->reduce(a.num);
  if (a.K + a.d <= 0) {
    a.num = ring_->zero();
    return;
  }
  if (a.K + a.d < M) a.num = ring_->reduce(a.num, static_cast<unsigned>(a.K + a.d));
  if (a.d == 0) return;
  const int v = std::min<int>(static_cast<int>(ring_->valuation(a.num)), a.d);
  if (v > 0) {
    a.num = ring_->div_pk(a.num, static_cast<unsigned>(v));
    a.d -= v;
  }
}

Frac ConjModule::add(const Frac& a, const Frac& b) const {
  const int d = std::max(a.d, b.d);
  Frac r{ring_->add(ring_->mul_pk(a.num, static_cast<unsigned>(d - a.d)),
                    ring_->mul_pk(b.num, static_cast<unsigned>(d - b.d))),
         d, std::min(a.K, b.K)};
  normalize(r);
  return r;
}

Frac ConjModule::neg(const Frac& a) const {
  Frac r{ring_->neg(a.num), a.d, a.K};
  normalize(r);
  return r;
}

Frac ConjModule::sub(const Frac& a, const Frac& b) const { return add(a, neg(b)); }

Frac ConjModule::scale_pk(const Frac& a, int k) const {
  Frac r = a;
  if (k < 0) {
    r.d -= k;
    r.K += k;
  } else if (r.d >= k) {
    r.d -= k;
    r.K += k;
  } else {
    r.num = ring_->mul_pk(r.num, static_cast<unsigned>(k - r.d));
    r.K += k;
    r.d = 0;
  }
  normalize(r);
  return r;
}

Frac ConjModule::mul_int(const Frac& a, long long c) const {
  Frac r{ring_->mul_int(a.num, c), a.d, a.K};
  normalize(r);
  return r;
}

Frac ConjModule::scale(const TruncSeries& s, const Frac& a) const {
  Frac r{ring_->scale(s, a.num), a.d, a.K};
  normalize(r);
  return r;
}

bool ConjModule::equal_at(const Frac& a, const Frac& b, int prec) const {
  Frac diff = sub(a, b);
  if (diff.K < prec)
    raise(ErrorKind::PrecisionExhausted,
          "comparison needs precision " + std::to_string(prec) + ", have " + std::to_string(diff.K));
  return static_cast<int>(ring_->valuation(diff.num)) >= prec + diff.d;
}

bool ConjModule::is_integral(const Frac& a) const {
  Frac r = a;
  normalize(r);
  return r.d == 0;
}

bool ConjModule::in_lattice(const Frac& a, const BlockLattice& lat) const {
  Frac r = a;
  normalize(r);
  if (r.d > 0) return false;
  if (r.K < static_cast<int>(lat.precision()))
    raise(ErrorKind::PrecisionExhausted, "lattice test needs precision " +
                                             std::to_string(lat.precision()) + ", have " +
                                             std::to_string(r.K));
  return lat.contains(r.num);
}

// ---------------------------------------------------------------------------

Elt det_berkowitz(const GroupRing& A, const Matrix& m) {
  const std::size_t n = m.size();
  std::vector<Elt> poly{A.one()};
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<Elt> t(r + 2);
    t[0] = A.one();
    t[1] = A.neg(m[r][r]);
    std::vector<Elt> v(r);
    for (std::size_t i = 0; i < r; ++i) v[i] = m[i][r];
    for (std::size_t k = 0; k < r; ++k) {
      Elt dot = A.zero();
      for (std::size_t j = 0; j < r; ++j) dot = A.add(dot, A.mul(m[r][j], v[j]));
      t[k + 2] = A.neg(dot);
      if (k + 1 == r) break;
      std::vector<Elt> nv(r, A.zero());
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) nv[i] = A.add(nv[i], A.mul(m[i][j], v[j]));
      v = std::move(nv);
    }
    std::vector<Elt> next(r + 2, A.zero());
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j <= std::min(i, r); ++j)
        next[i] = A.add(next[i], A.mul(t[i - j], poly[j]));
    poly = std::move(next);
  }
  return n % 2 ? A.neg(poly[n]) : poly[n];
}

Elt det_local(const GroupRing& A, Matrix m) {
  const std::size_t n = m.size();
  const Matrix original = m;
  Elt det = A.one();
  bool negate = false;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && !A.is_unit(m[piv][k])) ++piv;
    if (piv == n) return det_berkowitz(A, original);
    if (piv != k) {
      std::swap(m[piv], m[k]);
      negate = !negate;
    }
    det = A.mul(det, m[k][k]);
    const Elt inv = A.invert(m[k][k]);
    for (std::size_t r = k + 1; r < n; ++r) {
      if (A.is_zero(m[r][k])) continue;
      const Elt f = A.mul(m[r][k], inv);
      for (std::size_t c = k + 1; c < n; ++c)
        if (!A.is_zero(m[k][c])) m[r][c] = A.sub(m[r][c], A.mul(f, m[k][c]));
    }
  }
  return negate ? A.neg(det) : det;
}

Elt trace(const GroupRing& A, const Matrix& m) {
  Elt t = A.zero();
  for (std::size_t i = 0; i < m.size(); ++i) t = A.add(t, m[i][i]);
  return t;
}

Matrix module_matrix(const GroupRing& R, const Elt& u, std::span<const int> reps,
                     std::span<const int> coset_of, std::span<const int> proj,
                     const GroupRing& A) {
  const FiniteGroup& G = R.group();
  const std::size_t n = reps.size();
  Matrix m(n, std::vector<Elt>(n, A.zero()));
  for (std::size_t i = 0; i < n; ++i) {
    const int c = reps[i];
    for (int g = 0; g < G.n; ++g) {
      if (u[g].is_zero()) continue;
      const int x = G.op(c, g);
      const int j = coset_of[x];
      const int h = G.op(x, G.inv(reps[j]));
      const long long k = G.carry(c, g) - G.carry(h, reps[j]);
      A.add_term(m[i][j], proj[h], u[g], k);
    }
  }
  return m;
}

// ---------------------------------------------------------------------------

GroupContext::GroupContext(GroupRef model, SeriesRef ring, unsigned N)
    : model_(std::move(model)), series_(std::move(ring)), N_(N) {
  if (static_cast<int>(N_) > M())
    raise(ErrorKind::InvalidConfig, "check precision exceeds working precision");
  ring_ = GroupRing::make(series_, model_->group());
  const int ns = num_subgroups();
  ab_rings_.resize(ns);
  ab_modules_.resize(ns);
  right_coset_of_.resize(ns);
  for (int id = 0; id < ns; ++id) {
    ab_rings_[id] = GroupRing::make(series_, model_->data(id).ab.group);
    ab_modules_[id] = ConjModule::plain(ab_rings_[id]);
    const auto& reps = model_->data(id).right_reps;
    auto& co = right_coset_of_[id];
    co.assign(model_->order(), -1);
    for (std::size_t i = 0; i < reps.size(); ++i)
      for (int h : model_->subgroup(id).elems) co[model_->group().op(h, reps[i])] = static_cast<int>(i);
  }
}

const ConjModule& GroupContext::conj() const {
  std::lock_guard lock(mu_);
  if (!conj_) conj_ = ConjModule::conjugacy(ring_);
  return *conj_;
}

const ConjModule& GroupContext::sub_conj(int P) const {
  std::lock_guard lock(mu_);
  auto& slot = sub_conj_[P];
  if (!slot) slot = ConjModule::conjugacy(GroupRing::make(series_, model_->data(P).sub.group));
  return *slot;
}

Elt GroupContext::theta(const Elt& u, int P) const {
  return theta(u, P, model_->data(P).right_reps);
}

Elt GroupContext::theta(const Elt& u, int P, std::span<const int> reps) const {
  if (!ring_->is_unit(u)) raise(ErrorKind::NonUnit, "theta of a non-unit");
  const auto& d = model_->data(P);
  Matrix m = module_matrix(*ring_, u, reps, right_coset_of_[P], d.ab_of, *ab_rings_[P]);
  return det_local(*ab_rings_[P], std::move(m));
}

const ChainData& GroupContext::chain(int P, int Pp) const {
  std::lock_guard lock(mu_);
  auto& slot = chains_[{P, Pp}];
  if (slot) return *slot;
  const GroupModel& G = *model_;
  const auto& dPp = G.data(Pp);
  const auto& dP = G.data(P);
  if (!G.is_subgroup_of(P, Pp))
    raise(ErrorKind::BadChain, "subgroup " + std::to_string(P) + " not inside " + std::to_string(Pp));
  for (int c : dPp.commutator)
    if (!G.subgroup(P).contains(c))
      raise(ErrorKind::BadChain, "commutator of " + std::to_string(Pp) + " not inside " +
                                     std::to_string(P));
  auto ch = std::make_unique<ChainData>();
  ch->P = P;
  ch->Pp = Pp;
  for (int h : G.subgroup(P).elems) ch->image.push_back(dPp.ab_of[h]);
  std::sort(ch->image.begin(), ch->image.end());
  ch->image.erase(std::unique(ch->image.begin(), ch->image.end()), ch->image.end());
  const FiniteGroup& A = dPp.ab.group;
  ch->S = restrict_to(A, ch->image);
  ch->coset_of.assign(A.n, -1);
  for (int a = 0; a < A.n; ++a) {
    if (ch->coset_of[a] >= 0) continue;
    const int idx = static_cast<int>(ch->reps.size());
    ch->reps.push_back(a);
    for (int s : ch->image) ch->coset_of[A.op(s, a)] = idx;
  }
  ch->down.resize(dP.ab.group.n);
  for (int a = 0; a < dP.ab.group.n; ++a) ch->down[a] = ch->S.local[dPp.ab_of[dP.ab_rep[a]]];
  ch->ring = GroupRing::make(series_, ch->S.group);
  slot = std::move(ch);
  return *slot;
}

Elt GroupContext::norm(const Elt& x, int P, int Pp) const {
  const ChainData& ch = chain(P, Pp);
  if (!ab_rings_[Pp]->is_unit(x)) raise(ErrorKind::NonUnit, "norm of a non-unit");
  Matrix m = module_matrix(*ab_rings_[Pp], x, ch.reps, ch.coset_of, ch.S.local, *ch.ring);
  return det_local(*ch.ring, std::move(m));
}

Elt GroupContext::trace_down(const Elt& x, int P, int Pp) const {
  const ChainData& ch = chain(P, Pp);
  Matrix m = module_matrix(*ab_rings_[Pp], x, ch.reps, ch.coset_of, ch.S.local, *ch.ring);
  return trace(*ch.ring, m);
}

Elt GroupContext::project_keep(const Elt& x, int P, int Pp) const {
  const ChainData& ch = chain(P, Pp);
  Elt out = ch.ring->zero();
  for (std::size_t a = 0; a < x.size(); ++a)
    if (ch.S.local[a] >= 0) ch.ring->add_term(out, ch.S.local[a], x[a]);
  return out;
}

Elt GroupContext::project_down(const Elt& x, int P, int Pp) const {
  const ChainData& ch = chain(P, Pp);
  Elt out = ch.ring->zero();
  for (std::size_t a = 0; a < x.size(); ++a) ch.ring->add_term(out, ch.down[a], x[a]);
  return out;
}

const VerData& GroupContext::ver_data(int P, int Pp) const {
  std::lock_guard lock(mu_);
  auto& slot = vers_[{P, Pp}];
  if (slot) return *slot;
  const GroupModel& G = *model_;
  if (!G.is_subgroup_of(P, Pp))
    raise(ErrorKind::BadChain, "subgroup " + std::to_string(P) + " not inside " + std::to_string(Pp));
  auto vd = std::make_unique<VerData>();
  vd->P = P;
  vd->Pp = Pp;
  vd->index = static_cast<unsigned>(G.subgroup(Pp).order() / G.subgroup(P).order());
  const auto reps = G.right_reps_in(P, Pp);
  const auto& dPp = G.data(Pp);
  for (int a = 0; a < dPp.ab.group.n; ++a)
    vd->image.push_back(G.transfer(dPp.ab_rep[a], 0, P, Pp, reps));
  slot = std::move(vd);
  return *slot;
}

Elt GroupContext::ver(const Elt& x, int P, int Pp, bool semilinear) const {
  const VerData& vd = ver_data(P, Pp);
  const GroupRing& A = *ab_rings_[P];
  Elt out = A.zero();
  for (std::size_t a = 0; a < x.size(); ++a) {
    if (x[a].is_zero()) continue;
    TruncSeries c = semilinear ? series_->frobenius_coeffs(x[a]) : x[a];
    if (vd.index > 1) c = series_->substitute_t_power(c, vd.index);
    A.add_term(out, vd.image[a].g, c, vd.image[a].m);
  }
  return out;
}

TwistedElt GroupContext::conj_ab(int P, int g, int h) const {
  const FiniteGroup& G = model_->group();
  const int gi = G.inv(g);
  const int gh = G.op(g, h);
  const long long m = G.carry(g, h) + G.carry(gh, gi) - G.carry(g, gi);
  const int Q = model_->conjugate_id(P, g);
  return {model_->data(Q).ab_of[G.op(gh, gi)], m};
}

Elt GroupContext::conj_map(const Elt& x, int P, int g) const {
  const int Q = model_->conjugate_id(P, g);
  const GroupRing& A = *ab_rings_[Q];
  Elt out = A.zero();
  const auto& d = model_->data(P);
  for (std::size_t a = 0; a < x.size(); ++a) {
    if (x[a].is_zero()) continue;
    const TwistedElt te = conj_ab(P, g, d.ab_rep[a]);
    A.add_term(out, te.g, x[a], te.m);
  }
  return out;
}

namespace {

// Minimal representatives of the cosets of P inside the subgroup with sorted elements outer.
std::vector<int> coset_reps(const FiniteGroup& G, const Subgroup& P, std::span<const int> outer) {
  std::vector<char> seen(G.n, 0);
  std::vector<int> reps;
  for (int z : outer) {
    if (seen[z]) continue;
    reps.push_back(z);
    for (int h : P.elems) seen[G.op(z, h)] = 1;
  }
  return reps;
}

}  // namespace

const BlockLattice& GroupContext::trace_lattice(int P) const {
  std::lock_guard lock(mu_);
  auto& slot = lattices_[{P, -1}];
  if (slot) return *slot;
  const GroupModel& G = *model_;
  if (!G.subgroup(P).cyclic) raise(ErrorKind::NotCyclic, "trace ideal needs a cyclic subgroup");
  const auto& d = G.data(P);
  const GroupRing& A = *ab_rings_[P];
  const auto reps = coset_reps(G.group(), G.subgroup(P), d.normalizer);
  std::vector<Elt> gens;
  for (int a = 0; a < A.size(); ++a) {
    Elt e = A.zero();
    for (int w : reps) {
      const TwistedElt te = conj_ab(P, w, d.ab_rep[a]);
      A.add_term(e, te.g, series_->one(), te.m);
    }
    gens.push_back(std::move(e));
  }
  slot = std::make_unique<BlockLattice>(A, N_, gens, true);
  auto& scaled = lattices_[{P, -2}];
  for (auto& e : gens) e = A.mul_int(e, G.p());
  scaled = std::make_unique<BlockLattice>(A, N_, gens, true);
  return *slot;
}

const BlockLattice& GroupContext::trace_lattice_p(int P) const {
  trace_lattice(P);
  std::lock_guard lock(mu_);
  return *lattices_.at({P, -2});
}

const BlockLattice& GroupContext::trace_lattice(int P, int Pp) const {
  std::lock_guard lock(mu_);
  auto& slot = lattices_[{P, Pp}];
  if (slot) return *slot;
  const GroupModel& G = *model_;
  if (!G.is_subgroup_of(P, Pp))
    raise(ErrorKind::BadChain, "subgroup " + std::to_string(P) + " not inside " + std::to_string(Pp));
  const FiniteGroup& FG = G.group();
  for (int z : G.subgroup(Pp).elems)
    if (G.conjugate_id(P, z) != P)
      raise(ErrorKind::BadChain, "subgroup " + std::to_string(P) + " not normal in " +
                                     std::to_string(Pp));
  const auto& d = G.data(P);
  const GroupRing& A = *ab_rings_[P];
  const auto reps = coset_reps(FG, G.subgroup(P), G.subgroup(Pp).elems);
  std::vector<Elt> gens;
  for (int a = 0; a < A.size(); ++a) {
    Elt e = A.zero();
    for (int z : reps) {
      const TwistedElt te = conj_ab(P, z, d.ab_rep[a]);
      A.add_term(e, te.g, series_->one(), te.m);
    }
    gens.push_back(std::move(e));
  }
  slot = std::make_unique<BlockLattice>(A, N_, gens, true);
  return *slot;
}

}  // namespace k1lab
