#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <utility>
#include <vector>

#include "k1lab/pgroup.hpp"
#include "k1lab/series.hpp"
#include "k1lab/zpn_linalg.hpp"

namespace k1lab {

// Twisted group ring R[G]^tau over a finite group with Gamma-exponents:
// g^tau h^tau = (1+T)^carry(g,h) (gh)^tau.
class GroupRing {
 public:
  using Elt = std::vector<TruncSeries>;  // indexed by group element; empty series is zero

  static std::shared_ptr<const GroupRing> make(SeriesRef ring, FiniteGroup group);

  const SeriesRing& series() const noexcept { return *ring_; }
  const SeriesRef& series_ref() const noexcept { return ring_; }
  const PrimeConfig& prime() const noexcept { return ring_->prime(); }
  const FiniteGroup& group() const noexcept { return G_; }
  int size() const noexcept { return G_.n; }

  Elt zero() const { return Elt(G_.n); }
  Elt one() const;
  // (1+T)^texp g^tau
  Elt basis(int g, long long texp = 0) const;
  Elt from_series(const TruncSeries& s, int g = 0) const;
  // (1+T)^m, cached for small |m|.
  TruncSeries t_power(long long m) const;

  Elt add(const Elt& a, const Elt& b) const;
  Elt sub(const Elt& a, const Elt& b) const;
  Elt neg(const Elt& a) const;
  Elt mul(const Elt& a, const Elt& b) const;
  Elt scale(const TruncSeries& s, const Elt& a) const;
  Elt mul_int(const Elt& a, long long k) const;
  Elt pow(const Elt& a, unsigned long long e) const;
  Elt invert(const Elt& a) const;
  // Adds s * (1+T)^texp * g^tau into a.
  void add_term(Elt& a, int g, const TruncSeries& s, long long texp = 0) const;

  bool is_zero(const Elt& a) const noexcept;
  bool equal(const Elt& a, const Elt& b) const noexcept { return a == b; }
  // Image in the residue field: sum of constant terms modulo p.
  PadicScalar residue(const Elt& a) const noexcept;
  bool is_unit(const Elt& a) const noexcept;

  Elt map_coeffs(const Elt& a, TruncSeries (SeriesRing::*fn)(const TruncSeries&) const) const;
  Elt reduce(const Elt& a, unsigned k) const;
  Elt div_pk(const Elt& a, unsigned k) const;
  Elt mul_pk(const Elt& a, unsigned k) const;
  // Largest v with every coefficient in p^v (M for zero).
  unsigned valuation(const Elt& a) const noexcept;

 private:
  GroupRing(SeriesRef ring, FiniteGroup group);

  SeriesRef ring_;
  FiniteGroup G_;
  std::vector<TruncSeries> tpow_;  // (1+T)^m for m in [-kTpow, kTpow]
  static constexpr long long kTpow = 8;
};

using GroupRingRef = std::shared_ptr<const GroupRing>;
using Elt = GroupRing::Elt;
using Matrix = std::vector<std::vector<Elt>>;

// Z/p^k-submodule of R[G]^tau that is stable under multiplication by X-monomials and
// O-scalars. Stored as one Howell basis over the block coordinates g*(D_T+1)+j of a
// single (X-monomial, O-coordinate) slice and replicated over all slices.
class BlockLattice {
 public:
  // gens hold integer coefficients in the X^0 slice; with t_closure every T^j*gen is added.
  BlockLattice(const GroupRing& ring, unsigned prec, std::span<const Elt> gens, bool t_closure);

  unsigned precision() const noexcept { return basis_.N(); }
  const HowellBasis& basis() const noexcept { return basis_; }
  bool contains(const Elt& a) const;
  Elt reduce(const Elt& a) const;
  std::size_t block_size() const noexcept { return static_cast<std::size_t>(n_) * nt_; }

 private:
  std::vector<std::vector<u64>> blocks(const Elt& a) const;

  const GroupRing* ring_;
  int n_;
  unsigned nt_;
  HowellBasis basis_;
};

// value = num / p^d, known modulo p^K; num is meaningful modulo p^{K+d}.
struct Frac {
  Elt num;
  int d = 0;
  int K = 0;
};

// Additive module R[G]^tau / L for a lattice L (the commutator submodule for
// conjugacy quotients, none for commutative rings), with p-power denominators.
class ConjModule {
 public:
  ConjModule(GroupRingRef ring, std::shared_ptr<const BlockLattice> lattice);
  // Quotient by the commutator submodule of the ring.
  static std::shared_ptr<const ConjModule> conjugacy(GroupRingRef ring);
  static std::shared_ptr<const ConjModule> plain(GroupRingRef ring);

  const GroupRing& ring() const noexcept { return *ring_; }
  const GroupRingRef& ring_ref() const noexcept { return ring_; }
  const BlockLattice* lattice() const noexcept { return lattice_.get(); }
  int M() const noexcept { return static_cast<int>(ring_->prime().N()); }

  Elt reduce(const Elt& a) const;  // kappa
  Frac make(const Elt& num) const;
  Frac make(const Elt& num, int d, int K) const;
  Frac zero() const { return make(ring_->zero()); }
  void normalize(Frac& a) const;

  Frac add(const Frac& a, const Frac& b) const;
  Frac sub(const Frac& a, const Frac& b) const;
  Frac neg(const Frac& a) const;
  // Multiply by p^k (k < 0 divides).
  Frac scale_pk(const Frac& a, int k) const;
  Frac mul_int(const Frac& a, long long c) const;
  Frac scale(const TruncSeries& s, const Frac& a) const;
  // Equality of values modulo p^prec; PrecisionExhausted when either side is too coarse.
  bool equal_at(const Frac& a, const Frac& b, int prec) const;
  bool is_integral(const Frac& a) const;
  // a (integral, known to prec) lies in lat.
  bool in_lattice(const Frac& a, const BlockLattice& lat) const;

 private:
  GroupRingRef ring_;
  std::shared_ptr<const BlockLattice> lattice_;
};

using ConjModuleRef = std::shared_ptr<const ConjModule>;

// Determinants over a commutative twisted group ring.
Elt det_berkowitz(const GroupRing& A, const Matrix& m);
// Gaussian elimination with unit pivots; falls back to Berkowitz when no unit pivot exists.
Elt det_local(const GroupRing& A, Matrix m);
Elt trace(const GroupRing& A, const Matrix& m);

// Right multiplication by u on the free left R[S]^tau-module with basis c_i^tau (right
// cosets S c_i), entries pushed into A through proj (element of S -> A index).
Matrix module_matrix(const GroupRing& R, const Elt& u, std::span<const int> reps,
                     std::span<const int> coset_of, std::span<const int> proj,
                     const GroupRing& A);

// Data for a chain [P',P'] <= P <= P'.
struct ChainData {
  int P = 0, Pp = 0;
  std::vector<int> image;      // P'^ab indices in the image S of P
  Restriction S;               // S as a group, local index over P'^ab indices
  std::vector<int> reps;       // coset reps of S in P'^ab
  std::vector<int> coset_of;   // P'^ab index -> coset
  std::vector<int> down;       // P^ab index -> S local index
  GroupRingRef ring;           // R[S]^tau
};

struct VerData {
  int P = 0, Pp = 0;
  unsigned index = 1;
  std::vector<TwistedElt> image;  // P'^ab index -> transfer in P^ab
};

// Per-group cache of rings, lattices and maps. Shared data is built lazily under a lock.
class GroupContext {
 public:
  GroupContext(GroupRef model, SeriesRef ring, unsigned N);

  const GroupModel& model() const noexcept { return *model_; }
  const GroupRef& model_ref() const noexcept { return model_; }
  const SeriesRing& series() const noexcept { return *series_; }
  const SeriesRef& series_ref() const noexcept { return series_; }
  unsigned N() const noexcept { return N_; }
  int M() const noexcept { return static_cast<int>(series_->prime().N()); }
  int num_subgroups() const noexcept { return static_cast<int>(model_->subgroups().size()); }

  const GroupRing& ring() const noexcept { return *ring_; }
  const GroupRingRef& ring_ref() const noexcept { return ring_; }
  const ConjModule& conj() const;
  const GroupRing& ab_ring(int P) const { return *ab_rings_.at(P); }
  const ConjModule& ab_module(int P) const { return *ab_modules_.at(P); }
  // Conjugacy module of P itself (twisted ring over the restricted group).
  const ConjModule& sub_conj(int P) const;

  const std::vector<int>& right_coset_of(int P) const { return right_coset_of_.at(P); }

  Elt theta(const Elt& u, int P) const;
  Elt theta(const Elt& u, int P, std::span<const int> reps) const;

  const ChainData& chain(int P, int Pp) const;
  Elt norm(const Elt& x, int P, int Pp) const;
  Elt trace_down(const Elt& x, int P, int Pp) const;
  // Keeps the P'^ab elements lying in the image of P.
  Elt project_keep(const Elt& x, int P, int Pp) const;
  // Natural map R[P^ab] -> R[P/[P',P']].
  Elt project_down(const Elt& x, int P, int Pp) const;

  const VerData& ver_data(int P, int Pp) const;
  // Ring map R[P'^ab] -> R[P^ab] induced by the transfer; with semilinear the coefficients
  // also pass through the coefficient Frobenius.
  Elt ver(const Elt& x, int P, int Pp, bool semilinear) const;

  // x -> g x g^{-1} from R[P^ab] to R[(gPg^{-1})^ab].
  Elt conj_map(const Elt& x, int P, int g) const;
  // g^tau h^tau (g^tau)^{-1} for h in P, pushed to (gPg^{-1})^ab.
  TwistedElt conj_ab(int P, int g, int h) const;

  const BlockLattice& trace_lattice(int P) const;          // T_P, P cyclic
  const BlockLattice& trace_lattice_p(int P) const;        // p T_P
  const BlockLattice& trace_lattice(int P, int Pp) const;  // T_{P,P'}

 private:
  GroupRef model_;
  SeriesRef series_;
  unsigned N_;
  GroupRingRef ring_;
  std::vector<GroupRingRef> ab_rings_;
  std::vector<ConjModuleRef> ab_modules_;
  std::vector<std::vector<int>> right_coset_of_;

  mutable std::mutex mu_;
  mutable ConjModuleRef conj_;
  mutable std::map<int, ConjModuleRef> sub_conj_;
  mutable std::map<std::pair<int, int>, std::unique_ptr<ChainData>> chains_;
  mutable std::map<std::pair<int, int>, std::unique_ptr<VerData>> vers_;
  mutable std::map<std::pair<int, int>, std::unique_ptr<BlockLattice>> lattices_;
};

}  // namespace k1lab
