#include <random>

#include <gtest/gtest.h>

#include "gmc/exactalg.hpp"

using namespace gmc;

namespace {

ZMat zmat(std::vector<std::vector<int>> rows) {
  ZMat m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

QMat qmat(std::vector<std::vector<int>> rows) { return to_q(zmat(std::move(rows))); }

void expect_smith_identities(const ZMat& a) {
  auto s = smith_normal_form(a);
  EXPECT_EQ(s.U * a * s.V, s.D);
  EXPECT_EQ(abs(determinant(s.U)), 1);
  EXPECT_EQ(abs(determinant(s.V)), 1);
  const std::size_t k = std::min(a.rows(), a.cols());
  for (std::size_t i = 0; i < s.D.rows(); ++i)
    for (std::size_t j = 0; j < s.D.cols(); ++j)
      if (i != j) EXPECT_EQ(s.D(i, j), 0);
  for (std::size_t i = 0; i < k; ++i) {
    EXPECT_GE(s.D(i, i), 0);
    if (i + 1 < k && s.D(i, i) != 0) EXPECT_EQ(s.D(i + 1, i + 1) % s.D(i, i), 0);
    if (s.D(i, i) == 0 && i + 1 < k) EXPECT_EQ(s.D(i + 1, i + 1), 0);
  }
}

}  // namespace

TEST(Rat, ParsesAndPrintsReduced) {
  EXPECT_EQ(parse_rat("6/4"), Rat(3, 2));
  EXPECT_EQ(to_string(parse_rat("6/4")), "3/2");
  EXPECT_EQ(to_string(parse_rat("-6/-4")), "3/2");
  EXPECT_EQ(to_string(parse_rat("7")), "7");
  EXPECT_EQ(to_string(parse_rat("2/-4")), "-1/2");
  EXPECT_THROW(parse_rat("1/0"), Error);
  EXPECT_THROW(parse_rat("x"), Error);
  EXPECT_THROW(parse_rat(""), Error);
}

TEST(Rat, FloorAndCeil) {
  EXPECT_EQ(gmc::floor(Rat(-7, 2)), -4);
  EXPECT_EQ(gmc::ceil(Rat(-7, 2)), -3);
  EXPECT_EQ(gmc::floor(Rat(7, 2)), 3);
  EXPECT_EQ(gmc::ceil(Rat(6, 2)), 3);
}

TEST(SmithNormalForm, TwoByTwo) {
  // d1 = gcd of entries = 2, d1 d2 = |det| = 8.
  auto a = zmat({{2, 4}, {6, 8}});
  auto s = smith_normal_form(a);
  EXPECT_EQ(s.D, zmat({{2, 0}, {0, 4}}));
  expect_smith_identities(a);
}

TEST(SmithNormalForm, IdentityAndZero) {
  EXPECT_EQ(smith_normal_form(ZMat::identity(4)).D, ZMat::identity(4));
  auto z = smith_normal_form(zmat({{0, 0}, {0, 0}}));
  EXPECT_EQ(z.D, zmat({{0, 0}, {0, 0}}));
  EXPECT_EQ(z.U, ZMat::identity(2));
  EXPECT_EQ(z.V, ZMat::identity(2));
}

TEST(SmithNormalForm, RectangularAndNeedsDivisibilityFix) {
  expect_smith_identities(zmat({{2, 0}, {0, 3}}));  // becomes diag(1, 6)
  EXPECT_EQ(smith_normal_form(zmat({{2, 0}, {0, 3}})).D, zmat({{1, 0}, {0, 6}}));
  expect_smith_identities(zmat({{1, 1, -2}}));
  expect_smith_identities(zmat({{3}, {5}, {7}}));
  EXPECT_THROW(smith_normal_form(ZMat()), Error);
}

TEST(SmithNormalForm, RandomIdentities) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> size(1, 5), entry(-1000, 1000), sparse(0, 3);
  for (int trial = 0; trial < 60; ++trial) {
    ZMat a(size(rng), size(rng));
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = sparse(rng) == 0 ? 0 : entry(rng);
    expect_smith_identities(a);
  }
}

TEST(RankKernel, Examples) {
  EXPECT_EQ(rank(QMat::identity(3)), 3u);
  EXPECT_TRUE(kernel_basis(QMat::identity(3)).empty());

  auto a = qmat({{1, 1}, {2, 2}});
  EXPECT_EQ(rank(a), 1u);
  auto k = kernel_basis(a);
  ASSERT_EQ(k.size(), 1u);
  EXPECT_EQ(primitive(k[0]), (ZVec{-1, 1}));
  EXPECT_TRUE(is_zero(a * k[0]));

  auto z = QMat(2, 3);
  EXPECT_EQ(rank(z), 0u);
  auto kz = kernel_basis(z);
  ASSERT_EQ(kz.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(kz[i][j], i == j ? 1 : 0);
}

TEST(RankKernel, RankNullityOnRandomMatrices) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> size(1, 6), entry(-3, 3);
  for (int trial = 0; trial < 100; ++trial) {
    QMat a(size(rng), size(rng));
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = entry(rng);
    auto k = kernel_basis(a);
    EXPECT_EQ(rank(a) + k.size(), a.cols());
    for (const auto& v : k) EXPECT_TRUE(is_zero(a * v));
    EXPECT_EQ(rank(k, a.cols()), k.size());
  }
}

TEST(Saturate, PrimitiveGenerators) {
  EXPECT_EQ(saturate({{2, 0}}), (std::vector<ZVec>{{1, 0}}));
  EXPECT_EQ(saturate({{2, 2}}), (std::vector<ZVec>{{1, 1}}));
  EXPECT_EQ(saturate({{-3, 6}}), (std::vector<ZVec>{{1, -2}}));
  EXPECT_TRUE(saturate({}).empty());
  EXPECT_TRUE(saturate({{0, 0}}).empty());
}

TEST(Saturate, RankTwoInThreeSpace) {
  auto basis = saturate({{1, 1, 0}, {0, 2, 2}});
  ASSERT_EQ(basis.size(), 2u);
  // Brute force: every integral point of the span in a box is an integral
  // combination of the returned basis, and (0,1,1) is among them.
  std::vector<QVec> qb{to_q(basis[0]), to_q(basis[1])};
  std::vector<QVec> span{{1, 1, 0}, {0, 1, 1}};
  int hits = 0;
  for (int x = -3; x <= 3; ++x)
    for (int y = -3; y <= 3; ++y)
      for (int z = -3; z <= 3; ++z) {
        QVec p{x, y, z};
        if (!coordinates_in(span, p)) continue;
        ++hits;
        auto c = coordinates_in(qb, p);
        ASSERT_TRUE(c.has_value());
        for (const auto& ci : *c) EXPECT_TRUE(is_integer(ci));
      }
  EXPECT_GT(hits, 10);
  auto c011 = coordinates_in(qb, QVec{0, 1, 1});
  ASSERT_TRUE(c011.has_value());
  for (const auto& ci : *c011) EXPECT_TRUE(is_integer(ci));
  EXPECT_EQ(saturate(basis), basis);
}

TEST(Saturate, IdempotentAndIndexDividesSmithProduct) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> entry(-6, 6), count(1, 3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<ZVec> vs(count(rng), ZVec(4));
    for (auto& v : vs)
      for (auto& x : v) x = entry(rng);
    auto sat = saturate(vs);
    EXPECT_EQ(saturate(sat), sat);
    if (sat.empty()) continue;
    // Index of the lattice spanned by vs inside its saturation.
    QMat coords(vs.size(), sat.size());
    std::vector<QVec> qs;
    for (const auto& s : sat) qs.push_back(to_q(s));
    for (std::size_t i = 0; i < vs.size(); ++i) {
      auto c = coordinates_in(qs, to_q(vs[i]));
      ASSERT_TRUE(c.has_value());
      for (std::size_t j = 0; j < sat.size(); ++j) {
        ASSERT_TRUE(is_integer((*c)[j]));
        coords(i, j) = (*c)[j];
      }
    }
    ZMat zc(coords.rows(), coords.cols());
    for (std::size_t i = 0; i < zc.rows(); ++i)
      for (std::size_t j = 0; j < zc.cols(); ++j) zc(i, j) = numerator(coords(i, j));
    auto inner = smith_normal_form(zc);
    Int index = 1;
    for (std::size_t i = 0; i < sat.size(); ++i) index *= inner.D(i, i);
    auto outer = smith_normal_form(ZMat::from_rows(vs, 4));
    Int product = 1;
    for (std::size_t i = 0; i < std::min(outer.D.rows(), outer.D.cols()); ++i)
      if (outer.D(i, i) != 0) product *= outer.D(i, i);
    ASSERT_NE(index, 0);
    EXPECT_EQ(product % index, 0);
  }
}

TEST(GcdOfRationals, Examples) {
  EXPECT_EQ(gcd_of_rationals({3, 1}), 1);
  EXPECT_EQ(gcd_of_rationals({2, 2}), 2);
  EXPECT_EQ(gcd_of_rationals({Rat(1, 2), Rat(1, 3)}), Rat(1, 6));
  EXPECT_EQ(gcd_of_rationals({Rat(-4), 0, Rat(6)}), 2);
  try {
    gcd_of_rationals({0, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::AllZero);
  }
}

TEST(GcdOfRationals, DividesEveryInputAndIsACombination) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> num(-30, 30), den(1, 12), count(1, 4);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Rat> vs;
    for (int i = count(rng); i > 0; --i) vs.emplace_back(num(rng), den(rng));
    if (std::all_of(vs.begin(), vs.end(), [](const Rat& x) { return x == 0; })) continue;
    Rat g = gcd_of_rationals(vs);
    EXPECT_GT(g, 0);
    for (const auto& v : vs) EXPECT_TRUE(is_integer(v / g));
    // Integer combination: the quotients v/g have gcd 1.
    Int q = 0;
    for (const auto& v : vs) q = gcd(q, numerator(v / g));
    EXPECT_EQ(q, 1);
  }
}
