#include <gtest/gtest.h>

#include <algorithm>
#include <map>

#include "k1lab/congruence.hpp"

using namespace k1lab;

namespace {

std::unique_ptr<GroupContext> context(const std::string& name, EngineConfig cfg = {}) {
  return make_context(cfg, GroupModel::build(GroupSpec{name, {}, {}, 1}, cfg.p));
}

std::vector<std::string> failures(const std::vector<Verdict>& vs) {
  std::vector<std::string> out;
  for (const auto& v : vs)
    if (!v.pass) out.push_back(v.name);
  return out;
}

bool has_failure(const std::vector<Verdict>& vs, const std::string& name) {
  for (const auto& v : vs)
    if (!v.pass && v.name == name) return true;
  return false;
}

}  // namespace

TEST(Sampling, DeterministicUnits) {
  auto ctx = context("Heisenberg27");
  const GroupRing& R = ctx->ring();
  Rng a(42, 3, 0), b(42, 3, 0), c(42, 4, 0);
  const Elt u = random_unit(R, a);
  EXPECT_EQ(u, random_unit(R, b));
  EXPECT_NE(u, random_unit(R, c));
  EXPECT_FALSE(R.prime().is_zero(R.residue(u)));
  EXPECT_EQ(R.mul(u, R.invert(u)), R.one());
  Rng r(1, 0, 0);
  for (int i = 0; i < 1000; ++i) EXPECT_LT(r.below(7), 7u);
}

TEST(Tuple, Examples) {
  auto ctx = context("Heisenberg27");
  const GroupModel& G = ctx->model();
  const GroupRing& R = ctx->ring();
  const auto one = build_tuple(*ctx, R.one());
  for (int P = 0; P < ctx->num_subgroups(); ++P) EXPECT_EQ(one.comps[P], ctx->ab_ring(P).one());

  for (int g = 0; g < G.order(); g += 5) {
    const auto t = build_tuple(*ctx, R.basis(g));
    for (int P = 0; P < ctx->num_subgroups(); ++P) {
      const TwistedElt v = G.transfer(g, 0, P, G.full_id());
      EXPECT_EQ(t.comps[P], ctx->ab_ring(P).basis(v.g, v.m));
    }
  }

  const PrimeConfig& prime = R.prime();
  const PadicScalar zeta = prime.teichmuller(prime.from_int(2));
  const auto tz = build_tuple(*ctx, R.from_series(R.series().constant(zeta)));
  for (int P = 0; P < ctx->num_subgroups(); ++P) {
    const auto index = static_cast<u64>(G.order() / G.subgroup(P).order());
    EXPECT_EQ(tz.comps[P], ctx->ab_ring(P).from_series(R.series().constant(prime.pow(zeta, index))));
  }
  EXPECT_THROW(build_tuple(*ctx, R.zero()), Error);
}

TEST(CongruencesC1C4, HoldForUnits) {
  auto ctx = context("Heisenberg27");
  EXPECT_TRUE(failures(check_c1_c4(*ctx, build_tuple(*ctx, ctx->ring().one()))).empty());
  Rng rng(10, 0, 0);
  for (int i = 0; i < 5; ++i) {
    const auto vs = check_c1_c4(*ctx, build_tuple(*ctx, random_unit(ctx->ring(), rng)));
    EXPECT_TRUE(failures(vs).empty());
    for (const std::string name : {"C1", "C2", "C3", "C4"})
      EXPECT_TRUE(std::ranges::any_of(vs, [&](const Verdict& v) { return v.name == name; })) << name;
  }
}

TEST(CongruencesC1C4, MutationsAreRejected) {
  for (const std::string name : {"C9", "Heisenberg27", "M27"}) {
    auto ctx = context(name);
    int rejected = 0;
    for (int i = 0; i < 20; ++i) {
      Rng rng(77, i, 1);
      auto t = build_tuple(*ctx, random_unit(ctx->ring(), rng));
      mutate_tuple(*ctx, t, rng);
      const auto vs = check_c1_c4(*ctx, t);
      if (!failures(vs).empty()) ++rejected;
      for (const auto& v : vs)
        if (!v.pass) {
          EXPECT_TRUE(v.witness.has_value());
        }
    }
    EXPECT_GE(rejected, 18) << name;
  }
}

TEST(Additive, ImageOfBeta) {
  auto ctx = context("M27");
  const ConjModule& C = ctx->conj();
  EXPECT_TRUE(failures(check_additive(*ctx, C.zero())).empty());
  for (int g = 0; g < ctx->model().order(); ++g)
    EXPECT_TRUE(failures(check_additive(*ctx, C.make(ctx->ring().basis(g)))).empty()) << g;
  Rng rng(2, 0, 0);
  EXPECT_TRUE(failures(check_additive(*ctx, C.make(random_element(ctx->ring(), rng)))).empty());
}

TEST(Additive, PerturbedTupleFailsTraceCondition) {
  auto ctx = context("Heisenberg27");
  Rng rng(3, 0, 0);
  auto a = beta_map(*ctx, ctx->conj().make(random_element(ctx->ring(), rng)));
  EXPECT_TRUE(failures(check_additive_tuple(*ctx, a)).empty());
  for (int P : ctx->model().cyclic_ids()) {
    if (P == ctx->model().full_id()) continue;
    auto b = a;
    const ConjModule& mod = ctx->ab_module(P);
    b[P] = mod.add(b[P], mod.make(mod.ring().one()));
    EXPECT_TRUE(has_failure(check_additive_tuple(*ctx, b), "A3")) << P;
  }
}

TEST(Diagrams, Commute) {
  for (const std::string name : {"C9", "Heisenberg27", "M27"}) {
    auto ctx = context(name);
    EXPECT_TRUE(failures(check_diagrams(*ctx, ctx->ring().one())).empty()) << name;
    Rng rng(5, 0, 0);
    for (int i = 0; i < 3; ++i) {
      const auto vs = check_diagrams(*ctx, random_unit(ctx->ring(), rng));
      EXPECT_TRUE(failures(vs).empty()) << name;
      for (const std::string d : {"log-theta-res", "log-eta-res", "beta-formula", "beta-restr",
                                  "u-restr", "theta-power", "alpha-unit", "omega-gab"})
        EXPECT_TRUE(std::ranges::any_of(vs, [&](const Verdict& v) { return v.name == d; })) << d;
    }
  }
}

TEST(Specialization, Square) {
  EngineConfig cfg;
  cfg.r = 2;
  auto ctx = context("M27", cfg);
  EngineConfig flat = cfg;
  flat.r = 0;
  auto ctx0 = make_context(flat, ctx->model_ref());
  const PrimeConfig& P = ctx->series().prime();
  Rng rng(4, 0, 0);
  const Elt xi = random_unit(ctx->ring(), rng);
  const std::vector<PadicScalar> zero(2, P.zero());
  EXPECT_TRUE(failures(check_specialization(*ctx, *ctx0, xi, zero)).empty());
  const std::vector<PadicScalar> pts{P.from_int(3), P.from_int(-6)};
  EXPECT_TRUE(failures(check_specialization(*ctx, *ctx0, xi, pts)).empty());
  const std::vector<PadicScalar> bad{P.from_int(1), P.zero()};
  try {
    check_specialization(*ctx, *ctx0, xi, bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BadSpecPoint);
  }
  auto same = make_context(flat, ctx->model_ref());
  const Elt xi0 = random_unit(ctx0->ring(), rng);
  EXPECT_TRUE(failures(check_specialization(*same, *ctx0, xi0, {})).empty());
}

TEST(Torsion, PositiveAndNegativeCases) {
  const std::map<std::string, int> subgroup_orders = {
      {"C9", 3}, {"C3xC3", 3}, {"Heisenberg27", 9}, {"M27", 9}};
  for (const auto& [name, order] : subgroup_orders) {
    auto ctx = context(name);
    const TorsionSetup s = make_torsion_setup(ctx->model(), ctx->series_ref(), ctx->N());
    EXPECT_EQ(s.Ap->size(), order);
    Rng rng(6, 0, 0);
    const Elt mu = random_element(*s.A, rng);
    const Elt image = torsion_ver(s, mu);
    EXPECT_TRUE(is_delta_invariant(s, image));
    EXPECT_TRUE(check_torsion_congruence(s, mu, image).pass);
    const Elt shifted = s.Ap->add(image, torsion_trace(s, random_element(*s.Ap, rng)));
    EXPECT_TRUE(check_torsion_congruence(s, mu, shifted).pass);
    const auto outside = torsion_non_trace_invariant(s);
    ASSERT_TRUE(outside.has_value());
    const Verdict neg = check_torsion_congruence(s, mu, s.Ap->add(image, *outside));
    EXPECT_FALSE(neg.pass);
    EXPECT_TRUE(neg.witness.has_value());
  }
}

TEST(Torsion, NonInvariantInputRaises) {
  auto ctx = context("Heisenberg27");
  const TorsionSetup s = make_torsion_setup(ctx->model(), ctx->series_ref(), ctx->N());
  int moved = -1;
  for (int a = 0; a < s.Ap->size() && moved < 0; ++a)
    if (s.delta[a] != a) moved = a;
  ASSERT_GE(moved, 0);
  try {
    check_torsion_congruence(s, s.A->one(), s.Ap->basis(moved));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotDeltaInvariant);
  }
}
