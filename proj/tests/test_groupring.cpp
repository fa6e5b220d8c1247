#include <gtest/gtest.h>

#include "k1lab/congruence.hpp"

using namespace k1lab;

namespace {

std::unique_ptr<GroupContext> context(const std::string& name, EngineConfig cfg = {}) {
  return make_context(cfg, GroupModel::build(GroupSpec{name, {}, {}, 1}, cfg.p));
}

TruncSeries c(const GroupRing& R, long long v) { return R.series().constant(R.prime().from_int(v)); }

}  // namespace

TEST(GroupRing, IdentityAndCarry) {
  auto ctx = context("C3");
  const GroupRing& R = ctx->ring();
  Rng rng(1, 0, 0);
  const Elt a = random_element(R, rng);
  EXPECT_EQ(R.mul(R.one(), a), a);
  EXPECT_EQ(R.mul(a, R.one()), a);
  EXPECT_EQ(R.pow(R.basis(1), 3), R.from_series(R.series().one_plus_t_pow(1)));
}

TEST(GroupRing, CarryFromTopExponent) {
  auto ctx = context("C9");
  const GroupRing& R = ctx->ring();
  const int top = ctx->model().element(0, 8), one = ctx->model().element(0, 1);
  EXPECT_EQ(R.mul(R.basis(top), R.basis(one)), R.basis(0, 1));
  EXPECT_EQ(R.mul(R.basis(one), R.basis(one)), R.basis(ctx->model().element(0, 2)));
}

TEST(GroupRing, HeisenbergProductsTraceTheShear) {
  auto ctx = context("Heisenberg27");
  const GroupModel& G = ctx->model();
  const GroupRing& R = ctx->ring();
  for (int g = 0; g < G.order(); ++g)
    for (int h = 0; h < G.order(); ++h)
      EXPECT_EQ(R.mul(R.basis(g), R.basis(h)), R.basis(G.group().op(g, h), G.group().carry(g, h)));
}

TEST(GroupRing, Inverses) {
  auto ctx = context("Heisenberg27");
  const GroupRing& R = ctx->ring();
  EXPECT_EQ(R.invert(R.one()), R.one());
  for (int g = 0; g < R.size(); ++g) EXPECT_EQ(R.mul(R.basis(g), R.invert(R.basis(g))), R.one());
  // (1 + 3 X g)^{-1} = sum (-3 X g)^k.
  const auto& S = R.series();
  const Elt y = R.from_series(S.mul(c(R, 3), S.var_x(0)), 5);
  Elt geo = R.zero(), term = R.one();
  for (int k = 0; k < 20; ++k) {
    geo = R.add(geo, term);
    term = R.mul(term, R.neg(y));
  }
  EXPECT_EQ(R.invert(R.add(R.one(), y)), geo);
  Rng rng(3, 0, 0);
  for (int i = 0; i < 20; ++i) {
    const Elt u = random_unit(R, rng);
    const Elt ui = R.invert(u);
    EXPECT_EQ(R.mul(u, ui), R.one());
    EXPECT_EQ(R.mul(ui, u), R.one());
  }
  try {
    R.invert(R.sub(R.basis(1), R.one()));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonUnit);
  }
}

TEST(GroupRing, CommutatorQuotient) {
  auto ctx = context("Heisenberg27");
  const GroupRing& R = ctx->ring();
  const ConjModule& C = ctx->conj();
  Rng rng(5, 0, 0);
  for (int i = 0; i < 10; ++i) {
    const Elt a = random_element(R, rng), b = random_element(R, rng);
    EXPECT_EQ(C.reduce(R.mul(a, b)), C.reduce(R.mul(b, a)));
  }
  const Elt x = random_element(R, rng);
  for (int g = 0; g < R.size(); ++g) {
    const Elt conj = R.mul(R.mul(R.basis(g), x), R.invert(R.basis(g)));
    EXPECT_TRUE(C.lattice()->contains(R.sub(conj, x)));
  }
  auto abelian = context("C3xC9");
  const Elt y = random_element(abelian->ring(), rng);
  EXPECT_EQ(abelian->conj().reduce(y), y);
}

TEST(GroupRing, FracArithmetic) {
  auto ctx = context("C9");
  const ConjModule& C = ctx->conj();
  const GroupRing& R = ctx->ring();
  const Frac three = C.make(R.from_series(c(R, 3)));
  const Frac one = C.scale_pk(three, -1);
  EXPECT_EQ(one.d, 0);
  EXPECT_TRUE(C.equal_at(one, C.make(R.one()), 4));
  const Frac third = C.scale_pk(C.make(R.one()), -1);
  EXPECT_EQ(third.d, 1);
  EXPECT_FALSE(C.is_integral(third));
  EXPECT_TRUE(C.equal_at(C.mul_int(third, 3), C.make(R.one()), 4));
  const Frac coarse = C.make(R.one(), 0, 2);
  EXPECT_THROW(C.equal_at(coarse, coarse, 4), Error);
}

TEST(GroupRing, DeterminantsAgree) {
  auto ctx = context("C3xC9");
  const GroupRing& A = ctx->ring();
  Rng rng(8, 0, 0);
  for (int n = 1; n <= 3; ++n) {
    Matrix m(n, std::vector<Elt>(n));
    for (auto& row : m)
      for (auto& e : row) e = random_unit(A, rng);
    EXPECT_EQ(det_local(A, m), det_berkowitz(A, m)) << n;
  }
  Matrix diag(2, std::vector<Elt>(2, A.zero()));
  const Elt u = random_unit(A, rng), v = random_unit(A, rng);
  diag[0][0] = u;
  diag[1][1] = v;
  EXPECT_EQ(det_local(A, diag), A.mul(u, v));
  EXPECT_EQ(trace(A, diag), A.add(u, v));
}

TEST(Theta, FullSubgroupIsAbelianization) {
  auto ctx = context("Heisenberg27");
  const GroupModel& G = ctx->model();
  const int full = G.full_id();
  const GroupRing& A = ctx->ab_ring(full);
  Rng rng(2, 0, 0);
  for (int i = 0; i < 5; ++i) {
    const Elt u = random_unit(ctx->ring(), rng);
    Elt expect = A.zero();
    for (int g = 0; g < G.order(); ++g)
      if (!u[g].is_zero()) A.add_term(expect, G.data(full).ab_of[g], u[g]);
    EXPECT_EQ(ctx->theta(u, full), expect);
  }
}

TEST(Theta, ScalarsGoToIndexPower) {
  auto ctx = context("M27");
  const GroupRing& R = ctx->ring();
  const TruncSeries s = c(R, 5);
  for (int P = 0; P < ctx->num_subgroups(); ++P) {
    const GroupRing& A = ctx->ab_ring(P);
    const auto index = static_cast<unsigned long long>(ctx->model().order() /
                                                       ctx->model().subgroup(P).order());
    EXPECT_EQ(ctx->theta(R.from_series(s), P), A.from_series(A.series().pow(s, index)));
  }
}

TEST(Theta, GroupElementsGoToTransfer) {
  for (const std::string name : {"C9", "Heisenberg27"}) {
    auto ctx = context(name);
    const GroupModel& G = ctx->model();
    for (int P = 0; P < ctx->num_subgroups(); ++P)
      for (int g = 0; g < G.order(); ++g) {
        const TwistedElt t = G.transfer(g, 0, P, G.full_id());
        EXPECT_EQ(ctx->theta(ctx->ring().basis(g), P), ctx->ab_ring(P).basis(t.g, t.m));
      }
  }
}

TEST(Theta, Multiplicative) {
  auto ctx = context("M27");
  const GroupRing& R = ctx->ring();
  Rng rng(6, 0, 0);
  const Elt u = random_unit(R, rng), v = random_unit(R, rng);
  for (int P = 0; P < ctx->num_subgroups(); ++P) {
    const GroupRing& A = ctx->ab_ring(P);
    EXPECT_EQ(ctx->theta(R.mul(u, v), P), A.mul(ctx->theta(u, P), ctx->theta(v, P)));
  }
}

TEST(ChainMaps, UnitsAndGroupLikes) {
  auto ctx = context("Heisenberg27");
  const GroupModel& G = ctx->model();
  int chains = 0;
  for (int Pp = 0; Pp < ctx->num_subgroups(); ++Pp)
    for (int P = 0; P < ctx->num_subgroups(); ++P) {
      if (P == Pp || !G.is_subgroup_of(P, Pp)) continue;
      bool ok = true;
      for (int cm : G.data(Pp).commutator) ok = ok && G.subgroup(P).contains(cm);
      if (!ok) {
        EXPECT_THROW(ctx->chain(P, Pp), Error);
        continue;
      }
      ++chains;
      const ChainData& ch = ctx->chain(P, Pp);
      const GroupRing& S = *ch.ring;
      const GroupRing& Ap = ctx->ab_ring(Pp);
      const long long index = G.subgroup(Pp).order() / G.subgroup(P).order();
      EXPECT_EQ(ctx->norm(Ap.one(), P, Pp), S.one());
      EXPECT_EQ(ctx->trace_down(Ap.one(), P, Pp), S.mul_int(S.one(), index));
      EXPECT_EQ(ctx->project_keep(Ap.one(), P, Pp), S.one());
      for (int a = 0; a < Ap.size(); ++a) {
        const int local = ch.S.local[a];
        if (local >= 0) {
          EXPECT_EQ(ctx->norm(Ap.basis(a), P, Pp), S.pow(S.basis(local), index));
        } else {
          EXPECT_TRUE(S.is_zero(ctx->project_keep(Ap.basis(a), P, Pp)));
        }
      }
    }
  EXPECT_GT(chains, 0);
}

TEST(ChainMaps, TransferRingMap) {
  auto ctx = context("Heisenberg27");
  const GroupModel& G = ctx->model();
  Rng rng(4, 0, 0);
  for (int Pp = 0; Pp < ctx->num_subgroups(); ++Pp)
    for (int P = 0; P < ctx->num_subgroups(); ++P) {
      if (P == Pp || !G.is_subgroup_of(P, Pp)) continue;
      const GroupRing& Ap = ctx->ab_ring(Pp);
      const GroupRing& A = ctx->ab_ring(P);
      EXPECT_EQ(ctx->ver(Ap.one(), P, Pp, false), A.one());
      const Elt x = random_unit(Ap, rng), y = random_unit(Ap, rng);
      EXPECT_EQ(ctx->ver(Ap.mul(x, y), P, Pp, false),
                A.mul(ctx->ver(x, P, Pp, false), ctx->ver(y, P, Pp, false)));
    }
}

TEST(TraceLattice, Examples) {
  auto c9 = context("C9");
  const int full = c9->model().full_id();
  EXPECT_TRUE(c9->trace_lattice(full).contains(c9->ab_ring(full).basis(1)));

  auto ab = context("C3xC9");
  Rng rng(7, 0, 0);
  const GroupModel& G = ab->model();
  for (int Pp = 0; Pp < ab->num_subgroups(); ++Pp)
    for (int P = 0; P < ab->num_subgroups(); ++P) {
      if (P == Pp || !G.is_subgroup_of(P, Pp)) continue;
      const GroupRing& A = ab->ab_ring(P);
      const long long index = G.subgroup(Pp).order() / G.subgroup(P).order();
      const Elt v = A.add(A.one(), random_element(A, rng));
      EXPECT_TRUE(ab->trace_lattice(P, Pp).contains(A.mul_int(v, index)));
      EXPECT_FALSE(ab->trace_lattice(P, Pp).contains(v));
    }

  auto heis = context("Heisenberg27");
  const GroupModel& H = heis->model();
  for (int P : H.cyclic_ids()) {
    const GroupRing& A = heis->ab_ring(P);
    const Elt x = random_element(A, rng);
    Elt sum = A.zero();
    for (int n : H.data(P).normalizer) sum = A.add(sum, heis->conj_map(x, P, n));
    EXPECT_TRUE(heis->trace_lattice(P).contains(sum)) << P;
  }
}
