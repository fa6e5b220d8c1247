#include <gtest/gtest.h>

#include "k1lab/congruence.hpp"

using namespace k1lab;

namespace {

std::unique_ptr<GroupContext> context(const std::string& name, EngineConfig cfg = {}) {
  return make_context(cfg, GroupModel::build(GroupSpec{name, {}, {}, 1}, cfg.p));
}

TruncSeries c(const SeriesRing& S, long long v) { return S.constant(S.prime().from_int(v)); }

Elt embed_ab(const GroupContext& ctx, const Elt& x, int P) {
  const GroupRing& R = ctx.ring();
  Elt out = R.zero();
  for (std::size_t a = 0; a < x.size(); ++a)
    if (!x[a].is_zero()) R.add_term(out, ctx.model().data(P).ab_rep[a], x[a]);
  return out;
}

// Frattini class of g: minimal element of g * <x^p, [x,y]>.
int frattini_rep(const FiniteGroup& G, int g) {
  std::vector<int> gens;
  for (int x = 0; x < G.n; ++x) {
    gens.push_back(G.power(x, 3));
    for (int y = 0; y < G.n; ++y) gens.push_back(G.op(G.op(G.inv(x), G.inv(y)), G.op(x, y)));
  }
  int best = G.n;
  for (int f : G.closure(gens)) best = std::min(best, G.op(g, f));
  return best;
}

}  // namespace

TEST(Log, TrivialGroupSeries) {
  EngineConfig cfg;
  cfg.N = 3;
  cfg.D = 2;
  auto ctx = context("C3", cfg);
  const ConjModule& C = ctx->ab_module(ctx->model().trivial_id());
  const GroupRing& A = C.ring();
  const SeriesRing& S = A.series();
  const TruncSeries x = S.var_x(0);
  const Elt expect = A.from_series(S.add(S.mul(c(S, 3), x), S.mul(c(S, 9), S.mul(x, x))));
  const Elt u = A.from_series(S.add(S.one(), S.mul(c(S, 3), x)));
  EXPECT_TRUE(C.equal_at(log_unit(C, u), C.make(expect), 3));
  EXPECT_TRUE(C.equal_at(integral_log(C, u), C.make(expect), 3));
  EXPECT_TRUE(C.equal_at(log_unit(C, A.one()), C.zero(), 3));
  EXPECT_TRUE(C.equal_at(integral_log(C, A.one()), C.zero(), 3));
}

TEST(Log, ExpRoundTrips) {
  auto ctx = context("C3");
  const GroupRing& A = ctx->ab_ring(0);
  const ConjModule& C = ctx->ab_module(0);
  const SeriesRing& S = A.series();
  EXPECT_EQ(exp_radical(A, A.zero()).value, A.one());
  const Elt px = A.from_series(S.mul(c(S, 3), S.var_x(0)));
  const Frac L = log_radical(C, px);
  const ExpResult E = exp_radical(A, L.num);
  EXPECT_GE(E.prec, 4);
  EXPECT_EQ(A.reduce(E.value, 4), A.reduce(A.add(A.one(), px), 4));
  const Elt pxt = A.from_series(S.mul(c(S, 3), S.mul(S.var_x(0), S.var_t())));
  const ExpResult E2 = exp_radical(A, pxt);
  EXPECT_TRUE(C.equal_at(log_radical(C, A.sub(E2.value, A.one())), C.make(pxt), 4));
  EXPECT_THROW(exp_radical(A, A.from_series(S.var_x(0))), Error);
}

TEST(Log, TorsionAndGroupElements) {
  auto ctx = context("Heisenberg27");
  const ConjModule& C = ctx->conj();
  const GroupRing& R = ctx->ring();
  const PrimeConfig& P = R.prime();
  const Elt zeta = R.from_series(R.series().constant(P.teichmuller(P.from_int(2))));
  EXPECT_TRUE(C.equal_at(log_unit(C, zeta), C.zero(), 4));
  const FiniteGroup& G = ctx->model().group();
  for (int g = 1; g < G.n; ++g) {
    const int order = G.order_of(g);
    const TwistedElt central = twisted_pow(G, TwistedElt{g, 0}, order);
    ASSERT_EQ(central.g, 0);
    int k = 0;
    for (int o = order; o > 1; o /= 3) ++k;
    const Frac lhs = C.scale_pk(log_unit(C, R.basis(g)), k);
    EXPECT_TRUE(C.equal_at(lhs, log_unit(C, R.basis(0, central.m)), 4)) << g;
  }
}

TEST(Log, Additive) {
  auto ctx = context("M27");
  const ConjModule& C = ctx->conj();
  Rng rng(12, 0, 0);
  for (int i = 0; i < 10; ++i) {
    const Elt u = random_unit(ctx->ring(), rng), v = random_unit(ctx->ring(), rng);
    EXPECT_TRUE(C.equal_at(C.add(log_unit(C, u), log_unit(C, v)),
                           log_unit(C, ctx->ring().mul(u, v)), 4));
  }
  EXPECT_THROW(log_radical(C, ctx->ring().one()), Error);
}

TEST(Frobenius, ConjugacyFrobenius) {
  auto ctx = context("C3");
  const ConjModule& C0 = ctx->ab_module(0);
  const GroupRing& A = C0.ring();
  Rng rng(2, 0, 0);
  const Elt x = random_element(A, rng);
  const Frac fx = frobenius_conj(C0, C0.make(x));
  EXPECT_TRUE(C0.equal_at(fx, C0.make(A.map_coeffs(x, &SeriesRing::frobenius)), 4));

  const ConjModule& C = ctx->conj();
  const Frac fg = frobenius_conj(C, C.make(ctx->ring().basis(1)));
  EXPECT_TRUE(C.equal_at(fg, C.make(ctx->ring().basis(0, 1)), 4));
  const Elt y = random_element(ctx->ring(), rng), z = random_element(ctx->ring(), rng);
  EXPECT_TRUE(C.equal_at(frobenius_conj(C, C.add(C.make(y), C.make(z))),
                         C.add(frobenius_conj(C, C.make(y)), frobenius_conj(C, C.make(z))), 4));
}

TEST(TMap, AbelianCosetFormula) {
  auto ctx = context("C3xC9");
  const GroupModel& G = ctx->model();
  const ConjModule& C = ctx->conj();
  for (int P = 0; P < ctx->num_subgroups(); ++P) {
    const GroupRing& A = ctx->ab_ring(P);
    const long long index = G.order() / G.subgroup(P).order();
    for (int g = 0; g < G.order(); ++g) {
      const Frac t = t_map(*ctx, C.make(ctx->ring().basis(g)), P);
      const Frac r = sub_to_ab(*ctx, res_conj(*ctx, C.make(ctx->ring().basis(g)), P), P);
      const Elt expect = G.subgroup(P).contains(g)
                             ? A.mul_int(A.basis(G.data(P).ab_of[g]), index)
                             : A.zero();
      EXPECT_TRUE(ctx->ab_module(P).equal_at(t, ctx->ab_module(P).make(expect), 4));
      EXPECT_TRUE(ctx->ab_module(P).equal_at(r, ctx->ab_module(P).make(expect), 4));
    }
  }
}

TEST(TMap, FullSubgroupAbelianizes) {
  auto ctx = context("Heisenberg27");
  const GroupModel& G = ctx->model();
  const int full = G.full_id();
  const ConjModule& C = ctx->conj();
  for (int g = 0; g < G.order(); ++g) {
    const Frac t = t_map(*ctx, C.make(ctx->ring().basis(g)), full);
    const Elt expect = ctx->ab_ring(full).basis(G.data(full).ab_of[g]);
    EXPECT_TRUE(ctx->ab_module(full).equal_at(t, ctx->ab_module(full).make(expect), 4));
  }
}

TEST(TMap, ResLandsInTraceLattice) {
  auto ctx = context("Heisenberg27");
  Rng rng(3, 0, 0);
  for (int i = 0; i < 3; ++i) {
    const Frac x = ctx->conj().make(random_element(ctx->ring(), rng));
    for (int P : ctx->model().cyclic_ids()) {
      const Frac t = t_map(*ctx, x, P);
      EXPECT_TRUE(ctx->ab_module(P).in_lattice(t, ctx->trace_lattice(P))) << P;
    }
  }
}

TEST(Eta, Filter) {
  auto ctx = context("C9");
  const int full = ctx->model().full_id();
  const GroupRing& A = ctx->ab_ring(full);
  const int gen = ctx->model().data(full).ab_of[ctx->model().element(0, 1)];
  const int cube = ctx->model().data(full).ab_of[ctx->model().element(0, 3)];
  EXPECT_EQ(eta_generic(A, A.basis(gen)), A.basis(gen));
  EXPECT_TRUE(A.is_zero(eta_generic(A, A.one())));
  EXPECT_EQ(eta_generic(A, A.add(A.basis(gen), A.basis(cube))), A.basis(gen));
  auto square = context("C3xC3");
  const int top = square->model().full_id();
  EXPECT_THROW(eta_map(*square, square->ab_module(top).zero(), top), Error);
}

TEST(Beta, DeltaInvertsBeta) {
  for (const std::string name : {"C27", "Heisenberg27", "M27"}) {
    auto ctx = context(name);
    const ConjModule& C = ctx->conj();
    const GroupModel& G = ctx->model();
    for (int g = 0; g < G.order(); ++g) {
      const Frac k = C.make(ctx->ring().basis(g));
      const auto b = beta_map(*ctx, k);
      EXPECT_TRUE(C.equal_at(delta_map(*ctx, b), k, 4)) << name << " " << g;
      for (int P = 0; P < ctx->num_subgroups(); ++P) {
        if (G.subgroup(P).cyclic) continue;
        bool meets = false;
        for (int x = 0; x < G.order(); ++x)
          meets = meets || G.subgroup(P).contains(G.group().op(G.group().op(x, g), G.group().inv(x)));
        if (!meets) {
          EXPECT_TRUE(ctx->ab_module(P).equal_at(b[P], ctx->ab_module(P).zero(), 4));
        }
      }
    }
    const auto zero = beta_map(*ctx, C.zero());
    for (int P = 0; P < ctx->num_subgroups(); ++P)
      EXPECT_TRUE(ctx->ab_module(P).equal_at(zero[P], ctx->ab_module(P).zero(), 4));
    EXPECT_TRUE(C.equal_at(delta_map(*ctx, zero), C.zero(), 4));
    std::vector<Frac> noncyclic;
    Rng rng(1, 0, 0);
    for (int P = 0; P < ctx->num_subgroups(); ++P)
      noncyclic.push_back(G.subgroup(P).cyclic
                              ? ctx->ab_module(P).zero()
                              : ctx->ab_module(P).make(random_element(ctx->ab_ring(P), rng)));
    EXPECT_TRUE(C.equal_at(delta_map(*ctx, noncyclic), C.zero(), 4));
  }
}

TEST(Alpha, Examples) {
  auto ctx = context("Heisenberg27");
  const GroupModel& G = ctx->model();
  for (int P = 0; P < ctx->num_subgroups(); ++P) {
    const GroupRing& A = ctx->ab_ring(P);
    EXPECT_EQ(alpha_map(*ctx, A.one(), P), A.one());
  }
  Rng rng(9, 0, 0);
  const GroupRing& A0 = ctx->ab_ring(0);
  const Elt x = random_unit(A0, rng);
  EXPECT_EQ(alpha_map(*ctx, x, 0), A0.pow(x, 3));
  for (int P : G.cyclic_ids()) {
    if (G.subgroup(P).order() != 3) continue;
    const GroupRing& A = ctx->ab_ring(P);
    const int gen = G.data(P).ab_of[G.subgroup(P).generator];
    EXPECT_EQ(cyclo_product(*ctx, A.basis(gen), P), A.pow(A.basis(gen), 3));
    EXPECT_EQ(alpha_map(*ctx, A.basis(gen), P), A.one());
    const Elt s = A.from_series(c(A.series(), 7));
    EXPECT_EQ(cyclo_product(*ctx, s, P), A.pow(s, 3));
  }
}

TEST(UVMaps, Examples) {
  auto ctx = context("C9");
  const GroupModel& G = ctx->model();
  std::vector<Elt> ones;
  std::vector<Frac> zeros;
  for (int P = 0; P < ctx->num_subgroups(); ++P) {
    ones.push_back(ctx->ab_ring(P).one());
    zeros.push_back(ctx->ab_module(P).zero());
  }
  int sub3 = -1;
  for (int P = 0; P < ctx->num_subgroups(); ++P) {
    EXPECT_EQ(u_map(*ctx, ones, P), ctx->ab_ring(P).one());
    EXPECT_TRUE(ctx->ab_module(P).equal_at(v_map(*ctx, zeros, P), ctx->ab_module(P).zero(), 4));
    if (G.subgroup(P).order() == 3) sub3 = P;
  }
  const int full = G.full_id();
  EXPECT_TRUE(v_index_set(*ctx, full).empty());
  ASSERT_GE(sub3, 0);
  ASSERT_EQ(v_index_set(*ctx, sub3), std::vector<int>{full});
  Rng rng(5, 0, 0);
  std::vector<Elt> xs = ones;
  xs[full] = random_unit(ctx->ab_ring(full), rng);
  EXPECT_EQ(u_map(*ctx, xs, sub3), phi_push(*ctx, xs[full], full, sub3));
}

TEST(Omega, Classes) {
  auto ctx = context("Heisenberg27");
  const ConjModule& C = ctx->conj();
  EXPECT_EQ(omega_gab(*ctx, C.zero()), 0);
  const FiniteGroup& G = ctx->model().group();
  for (int g = 0; g < G.n; ++g)
    EXPECT_EQ(omega_gab(*ctx, C.make(ctx->ring().basis(g))), frattini_rep(G, g)) << g;
  Rng rng(6, 0, 0);
  for (int i = 0; i < 10; ++i)
    EXPECT_EQ(omega_gab(*ctx, integral_log(C, random_unit(ctx->ring(), rng))), 0);
  EXPECT_THROW(omega_gab(*ctx, C.scale_pk(C.make(ctx->ring().one()), -1)), Error);
}

TEST(CalL, TrivialTupleAndBetaFormula) {
  auto ctx = context("M27");
  std::vector<Elt> ones;
  for (int P = 0; P < ctx->num_subgroups(); ++P) ones.push_back(ctx->ab_ring(P).one());
  const auto L = calL_map(*ctx, ones);
  for (int P = 0; P < ctx->num_subgroups(); ++P)
    EXPECT_TRUE(ctx->ab_module(P).equal_at(L[P], ctx->ab_module(P).zero(), 4));

  Rng rng(8, 0, 0);
  const Elt u = random_unit(ctx->ring(), rng);
  const auto beta = beta_map(*ctx, integral_log(ctx->conj(), u));
  const auto L2 = calL_map(*ctx, build_tuple(*ctx, u).comps);
  for (int P = 0; P < ctx->num_subgroups(); ++P)
    EXPECT_TRUE(ctx->ab_module(P).equal_at(L2[P], beta[P], 4)) << P;
}

TEST(Delta, EmbedsCyclicComponents) {
  auto ctx = context("C3");
  const int full = ctx->model().full_id();
  std::vector<Frac> t;
  for (int P = 0; P < ctx->num_subgroups(); ++P) t.push_back(ctx->ab_module(P).zero());
  const Elt g = ctx->ab_ring(full).basis(ctx->model().data(full).ab_of[1]);
  t[full] = ctx->ab_module(full).make(g);
  EXPECT_TRUE(ctx->conj().equal_at(delta_map(*ctx, t),
                                   ctx->conj().make(embed_ab(*ctx, g, full)), 4));
}
