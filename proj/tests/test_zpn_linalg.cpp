#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "k1lab/zpn_linalg.hpp"
#include "span_oracle.hpp"

using namespace k1lab;

TEST(Howell, ZeroAndIdentity) {
  ZpnMatrix z(3, 2, 2, 3);
  EXPECT_EQ(howell_form(z).rank(), 0u);
  ZpnMatrix id(3, 2, 3, 3);
  for (int i = 0; i < 3; ++i) id.at(i, i) = 1;
  const HowellBasis b = howell_form(id);
  EXPECT_EQ(b.rank(), 3u);
  EXPECT_TRUE(b.all_pivots_units());
}

TEST(Howell, SingleNonUnitRow) {
  ZpnMatrix m(3, 2, 1, 2);
  m.at(0, 0) = 3;
  m.at(0, 1) = 3;
  const HowellBasis b = howell_form(m);
  const auto span = test::enumerate_span({{3, 3}}, 9);
  EXPECT_EQ(span.size(), 3u);
  const std::vector<u64> zero{0, 0}, gen{3, 3}, off{3, 0};
  EXPECT_TRUE(membership(zero, b));
  EXPECT_TRUE(membership(gen, b));
  EXPECT_FALSE(membership(off, b));
}

TEST(Howell, ReduceKillsSpan) {
  ZpnMatrix m(3, 3, 2, 3);
  m.at(0, 0) = 3, m.at(0, 1) = 1, m.at(0, 2) = 5;
  m.at(1, 1) = 9, m.at(1, 2) = 18;
  const HowellBasis b = howell_form(m);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto r = reduce_mod(m.row(i), b);
    EXPECT_TRUE(std::ranges::all_of(r, [](u64 x) { return x == 0; }));
  }
  const std::vector<u64> zero{0, 0, 0};
  EXPECT_EQ(reduce_mod(zero, b), zero);
}

TEST(Howell, MembershipMatchesEnumerationOnFiveByFive) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 6; ++trial) {
    std::vector<std::vector<u64>> gens(2, std::vector<u64>(5));
    for (auto& g : gens)
      for (auto& x : g) x = rng() % 9;
    ZpnMatrix m(3, 2, gens.size(), 5);
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t j = 0; j < 5; ++j) m.at(i, j) = gens[i][j];
    const HowellBasis b = howell_form(m);
    const auto span = test::enumerate_span(gens, 9);
    for (int k = 0; k < 200; ++k) {
      std::vector<u64> v(5);
      if (k % 2 == 0) {
        auto it = span.begin();
        std::advance(it, static_cast<long>(rng() % span.size()));
        v = *it;
      } else {
        for (auto& x : v) x = rng() % 9;
      }
      EXPECT_EQ(membership(v, b), span.count(v) > 0);
    }
  }
}

TEST(Howell, CosetEqualityMatchesMembership) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    HowellBuilder builder(3, 3, 4);
    for (int g = 0; g < 2; ++g) {
      std::vector<u64> row(4);
      for (auto& x : row) x = (rng() % 27) * (rng() % 2 ? 1 : 3) % 27;
      builder.insert(row);
    }
    const HowellBasis b = builder.finish();
    std::vector<u64> v(4), w(4), d(4);
    for (int j = 0; j < 4; ++j) {
      v[j] = rng() % 27;
      w[j] = rng() % 2 ? v[j] : rng() % 27;
      d[j] = (v[j] + 27 - w[j]) % 27;
    }
    EXPECT_EQ(reduce_mod(v, b) == reduce_mod(w, b), membership(d, b));
  }
}

TEST(Howell, BuilderAgreesWithMatrixForm) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    ZpnMatrix m(3, 4, 3, 6);
    HowellBuilder builder(3, 4, 6);
    for (std::size_t i = 0; i < 3; ++i) {
      std::vector<u64> row(6);
      for (auto& x : row) x = rng() % 81;
      for (std::size_t j = 0; j < 6; ++j) m.at(i, j) = row[j];
      builder.insert(row);
    }
    EXPECT_EQ(builder.finish(), howell_form(m));
  }
}
