#pragma once

#include <nlohmann/json.hpp>

#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "k1lab/groupring.hpp"
#include "k1lab/logmaps.hpp"

namespace k1lab {

struct EngineConfig {
  unsigned p = 3;
  unsigned f = 1;
  unsigned N = 4;      // precision of every check
  unsigned guard = 14;  // extra working digits, M = N + guard
  unsigned r = 1;
  unsigned D = 3;
  unsigned D_T = 3;
  unsigned M() const noexcept { return N + guard; }
};

SeriesRef make_series(const EngineConfig& cfg);
std::unique_ptr<GroupContext> make_context(const EngineConfig& cfg, GroupRef model);

// Deterministic stream: mt19937_64 seeded with (seed, index, stream).
class Rng {
 public:
  Rng(u64 seed, u64 index, u64 stream);
  u64 next() { return eng_(); }
  // Uniform on [0, n) by rejection.
  u64 below(u64 n);

 private:
  std::mt19937_64 eng_;
};

PadicScalar random_scalar(const PrimeConfig& P, Rng& rng);
// zeta * (1 + sum of 3-6 radical terms): s*m*g with m a non-constant monomial, p*s*g, s*(g-1).
Elt random_unit(const GroupRing& R, Rng& rng);
// Every coefficient of every monomial drawn uniformly.
Elt random_element(const GroupRing& R, Rng& rng);
// p times a sparse random element.
Elt random_p_element(const GroupRing& R, Rng& rng);

struct Verdict {
  std::string name;
  std::vector<int> ids;
  bool pass = true;
  std::optional<nlohmann::json> witness;
};

struct CongruenceTuple {
  Elt xi;
  std::vector<Elt> comps;  // indexed by subgroup id, element of R[P^ab]
};

CongruenceTuple build_tuple(const GroupContext& ctx, const Elt& xi);
// Replaces one component by an independent random unit; returns the subgroup id.
int mutate_tuple(const GroupContext& ctx, CongruenceTuple& t, Rng& rng);

std::vector<Verdict> check_c1_c4(const GroupContext& ctx, const CongruenceTuple& t);
// (A1)-(A3) on an additive tuple indexed by subgroups.
std::vector<Verdict> check_additive_tuple(const GroupContext& ctx, const std::vector<Frac>& a);
// (A1)-(A3) on beta(c) together with delta(beta(c)) = c.
std::vector<Verdict> check_additive(const GroupContext& ctx, const Frac& c);
std::vector<Verdict> check_diagrams(const GroupContext& ctx, const Elt& xi);
// ctx0 shares the group and prime with ctx and has r = 0; values lie in p*O.
std::vector<Verdict> check_specialization(const GroupContext& ctx, const GroupContext& ctx0,
                                          const Elt& xi, const std::vector<PadicScalar>& values);

// Group ring R[A] of an abelian group without Gamma-twist.
struct TorsionSetup {
  std::string label;
  unsigned N = 0;
  GroupRingRef A;        // co-invariant side
  GroupRingRef Ap;       // the subgroup side, with the Delta action
  std::vector<int> ver;  // A index -> A' index
  std::vector<int> delta;  // action of the generator of Delta on A' indices
  std::unique_ptr<BlockLattice> trace;  // image of sum over Delta
};

// G with Gamma stripped, Nn = {g : gamma(g) = 0 mod p}; Delta generated by the smallest g outside Nn.
TorsionSetup make_torsion_setup(const GroupModel& model, SeriesRef ring, unsigned N);
Elt torsion_ver(const TorsionSetup& s, const Elt& mu);
Elt torsion_trace(const TorsionSetup& s, const Elt& x);
bool is_delta_invariant(const TorsionSetup& s, const Elt& x);
// First Delta-invariant basis element (fixed point or orbit sum) outside the trace lattice.
std::optional<Elt> torsion_non_trace_invariant(const TorsionSetup& s);
// Membership of ver(mu_F) - mu_Fp in the Delta-trace lattice; NotDeltaInvariant for bad mu_Fp.
Verdict check_torsion_congruence(const TorsionSetup& s, const Elt& mu_F, const Elt& mu_Fp);

}  // namespace k1lab
