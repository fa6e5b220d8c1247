#include <gtest/gtest.h>

#include <random>
#include <set>

#include "k1lab/pgroup.hpp"

using namespace k1lab;

namespace {

GroupRef catalog(const std::string& name) { return GroupModel::build(GroupSpec{name, {}, {}, 1}, 3); }

// Subgroup generated by a and b, by breadth-first closure on the table.
std::vector<int> generated(const FiniteGroup& G, int a, int b) {
  std::set<int> s{0, a, b};
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<int> cur(s.begin(), s.end());
    for (int x : cur)
      for (int y : cur)
        if (s.insert(G.op(x, y)).second) grew = true;
  }
  return {s.begin(), s.end()};
}

std::size_t brute_subgroup_count(const FiniteGroup& G) {
  std::set<std::vector<int>> subs;
  for (int a = 0; a < G.n; ++a)
    for (int b = a; b < G.n; ++b) subs.insert(generated(G, a, b));
  return subs.size();
}

std::size_t brute_class_count(const FiniteGroup& G) {
  std::set<std::set<int>> classes;
  for (int x = 0; x < G.n; ++x) {
    std::set<int> c;
    for (int g = 0; g < G.n; ++g) c.insert(G.op(G.op(g, x), G.inv(g)));
    classes.insert(c);
  }
  return classes.size();
}

}  // namespace

TEST(PGroup, CatalogShapes) {
  const auto names = catalog_names(3);
  ASSERT_EQ(names.size(), 7u);
  const int orders[] = {3, 9, 27, 9, 27, 27, 27};
  for (std::size_t i = 0; i < names.size(); ++i) EXPECT_EQ(catalog(names[i])->order(), orders[i]);
  EXPECT_THROW(catalog("Q8"), Error);
}

TEST(PGroup, SubgroupCountsMatchBruteForce) {
  for (const auto& n : catalog_names(3)) {
    const auto G = catalog(n);
    EXPECT_EQ(G->subgroups().size(), brute_subgroup_count(G->group())) << n;
  }
  EXPECT_EQ(catalog("C3xC3")->subgroups().size(), 6u);
  EXPECT_EQ(catalog("Heisenberg27")->subgroups().size(), 19u);
}

TEST(PGroup, HeisenbergCenterAndClasses) {
  const auto G = catalog("Heisenberg27");
  EXPECT_FALSE(G->group().is_abelian());
  EXPECT_EQ(G->center().size(), 3u);
  EXPECT_EQ(G->classes().size(), 11u);
  EXPECT_EQ(G->classes().size(), brute_class_count(G->group()));
  const auto& d = G->data(G->full_id());
  EXPECT_EQ(d.commutator.size(), 3u);
  EXPECT_EQ(d.ab.group.n, 9);
}

TEST(PGroup, CyclicModels) {
  const auto G = catalog("C9");
  EXPECT_TRUE(G->group().is_abelian());
  EXPECT_TRUE(G->subgroup(G->full_id()).cyclic);
  EXPECT_EQ(G->group().order_of(1), 9);
  EXPECT_EQ(G->data(G->trivial_id()).ab.group.n, 1);
}

TEST(PGroup, TwistedPowerCarries) {
  const auto G = catalog("C3");
  const TwistedElt g3 = twisted_pow(G->group(), TwistedElt{1, 0}, 3);
  EXPECT_EQ(g3, (TwistedElt{0, 1}));
  EXPECT_EQ(twisted_mul(G->group(), TwistedElt{1, 0}, twisted_inv(G->group(), TwistedElt{1, 0})),
            (TwistedElt{0, 0}));
}

TEST(PGroup, TransferOnAbelianIsIndexPower) {
  for (const std::string name : {"C9", "C27", "C3xC9"}) {
    const auto G = catalog(name);
    const FiniteGroup& F = G->group();
    for (int P = 0; P < static_cast<int>(G->subgroups().size()); ++P) {
      const long long index = G->order() / G->subgroup(P).order();
      for (int g = 0; g < F.n; ++g) {
        const TwistedElt pw = twisted_pow(F, TwistedElt{g, 0}, index);
        ASSERT_TRUE(G->subgroup(P).contains(pw.g));
        const TwistedElt expect{G->data(P).ab_of[pw.g], pw.m};
        EXPECT_EQ(G->transfer(g, 0, P, G->full_id()), expect) << name << " P=" << P << " g=" << g;
      }
    }
  }
}

TEST(PGroup, TransferOfCentralElementIsIndexPower) {
  const auto G = catalog("Heisenberg27");
  const FiniteGroup& F = G->group();
  for (int z : G->center())
    for (int P = 0; P < static_cast<int>(G->subgroups().size()); ++P) {
      const long long index = G->order() / G->subgroup(P).order();
      const TwistedElt pw = twisted_pow(F, TwistedElt{z, 0}, index);
      const TwistedElt expect{G->data(P).ab_of[pw.g], pw.m};
      EXPECT_EQ(G->transfer(z, 0, P, G->full_id()), expect);
    }
}

TEST(PGroup, TransferIsMultiplicative) {
  std::mt19937_64 rng(2);
  for (const std::string name : {"Heisenberg27", "M27"}) {
    const auto G = catalog(name);
    const FiniteGroup& F = G->group();
    const int ns = static_cast<int>(G->subgroups().size());
    for (int trial = 0; trial < 200; ++trial) {
      const int P = static_cast<int>(rng() % ns);
      const int g = static_cast<int>(rng() % F.n), h = static_cast<int>(rng() % F.n);
      const FiniteGroup& A = G->data(P).ab.group;
      const TwistedElt lhs = G->transfer(F.op(g, h), F.carry(g, h), P, G->full_id());
      const TwistedElt rhs =
          twisted_mul(A, G->transfer(g, 0, P, G->full_id()), G->transfer(h, 0, P, G->full_id()));
      EXPECT_EQ(lhs, rhs) << name << " P=" << P;
    }
  }
}

TEST(PGroup, ConjugationAndContainment) {
  const auto G = catalog("Heisenberg27");
  const FiniteGroup& F = G->group();
  for (int P = 0; P < static_cast<int>(G->subgroups().size()); ++P)
    for (int g = 0; g < F.n; ++g) {
      const int Q = G->conjugate_id(P, g);
      EXPECT_EQ(G->subgroup(Q).order(), G->subgroup(P).order());
      for (int h : G->subgroup(P).elems) EXPECT_TRUE(G->subgroup(Q).contains(F.op(F.op(g, h), F.inv(g))));
    }
  EXPECT_TRUE(G->is_subgroup_of(G->trivial_id(), G->full_id()));
}

TEST(PGroup, RejectsBadTables) {
  GroupSpec bad{"", {{0, 1}, {1, 1}}, {0, 1}, 1};
  EXPECT_THROW(GroupModel::build(bad, 3), Error);
  GroupSpec wrong_order{"", {{0, 1}, {1, 0}}, {0, 1}, 1};
  EXPECT_THROW(GroupModel::build(wrong_order, 3), Error);
}
