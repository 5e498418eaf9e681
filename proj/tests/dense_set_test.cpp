#include "stel/dense_set.hpp"

#include <gtest/gtest.h>

namespace stel {
namespace {

TEST(DenseSet, BasicOps) {
  DenseSet s(70);  // spans two blocks
  EXPECT_EQ(s.universe(), 70u);
  EXPECT_TRUE(s.none());
  s.set(0);
  s.set(69);
  EXPECT_TRUE(s.test(0));
  EXPECT_TRUE(s.test(69));
  EXPECT_FALSE(s.test(1));
  EXPECT_EQ(s.count(), 2u);
  s.reset(0);
  EXPECT_EQ(s.count(), 1u);
  EXPECT_EQ(s.indices(), (std::vector<std::size_t>{69}));
}

TEST(DenseSet, ComplementKeepsTailBitsClear) {
  DenseSet s(70);
  s.set(3);
  const DenseSet c = s.complement();
  EXPECT_EQ(c.count(), 69u);
  EXPECT_FALSE(c.test(3));
  EXPECT_EQ(c.complement(), s);
  EXPECT_EQ(DenseSet::full(70).count(), 70u);
  EXPECT_EQ(DenseSet::full(64).count(), 64u);  // exact block boundary
}

TEST(DenseSet, SetAlgebra) {
  DenseSet a(10), b(10);
  a.set(1);
  a.set(2);
  b.set(2);
  b.set(3);
  EXPECT_EQ((a & b).indices(), (std::vector<std::size_t>{2}));
  EXPECT_EQ((a | b).count(), 3u);
  EXPECT_EQ((a - b).indices(), (std::vector<std::size_t>{1}));
  EXPECT_EQ(intersection_count(a, b), 1u);
  EXPECT_FALSE(is_subset(a, b));
  EXPECT_TRUE(is_subset(a & b, a));
  EXPECT_TRUE(is_subset(DenseSet(10), b));
}

}  // namespace
}  // namespace stel
