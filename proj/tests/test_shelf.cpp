#include <gtest/gtest.h>

#include <cmath>

#include "squarepack/rng.hpp"
#include "squarepack/shelf.hpp"

using namespace squarepack;

namespace {

Shelf p1() { return Shelf::horizontal(0, "p1", {0, 0, 1, 0.25}, 0.25, 0.5); }
Shelf p2() { return Shelf::horizontal(1, "p2", {0, 0.25, 1, 0.25}, 0.25, 0.5); }
Shelf c1_column() { return Shelf::vertical(5, "b1", {0, 0.75, 0.125, 0.25}, 1); }

// Fill a shelf by hand: sum extents until the first that would not fit.
struct HandFill {
  double area = 0;
  double closer = 0;
};
HandFill hand_fill(double h, double r, double ell, Rng& rng) {
  HandFill f;
  double used = 0;
  for (;;) {
    double q = h * r + (h - h * r) * (1.0 - rng.uniform01());
    if (q <= h * r) q = std::nextafter(h * r, h);
    if (used + q > ell) {
      f.closer = q;
      return f;
    }
    used += q;
    f.area += q * q;
  }
}

}  // namespace

TEST(ShelfFits, Examples) {
  Shelf s = p1();
  s.used = 0.8;
  EXPECT_TRUE(s.fits(0.2, 1.0));
  EXPECT_FALSE(s.fits(0.21, 1.0));
  s.used = 0.5;
  EXPECT_FALSE(s.fits(0.2, 0.69));
  EXPECT_TRUE(s.fits(0.19, 0.69));
}

TEST(ShelfInsert, HorizontalIsLeftToRightBottomFlush) {
  Shelf s = p1();
  s.used = 0.13;
  EXPECT_EQ(s.insert(ShelfItem::square(0, 0.2, 0)), (Rect{0.13, 0, 0.2, 0.2}));
  EXPECT_DOUBLE_EQ(s.used, 0.33);
  EXPECT_DOUBLE_EQ(s.frontier(), 0.33);
}

TEST(ShelfInsert, VerticalIsBottomUpLeftFlush) {
  Shelf s = c1_column();
  s.used = 0.1;
  EXPECT_EQ(s.insert(ShelfItem::square(0, 0.09, 0)), (Rect{0, 0.85, 0.09, 0.09}));
  EXPECT_DOUBLE_EQ(s.ell, 0.25);
  EXPECT_DOUBLE_EQ(s.h, 0.125);
  EXPECT_DOUBLE_EQ(s.r, 0.71);
  EXPECT_DOUBLE_EQ(s.frontier(), 0.75 + 0.19);
}

TEST(ShelfInsert, ColumnTakesFullRowHeight) {
  Shelf s = p2();
  EXPECT_EQ(s.insert(ShelfItem::column(9, 0.125, 0)), (Rect{0, 0.25, 0.125, 0.25}));
  EXPECT_DOUBLE_EQ(s.used, 0.125);
  ASSERT_EQ(s.items.size(), 1u);
  EXPECT_EQ(s.items[0].kind, ShelfItem::Kind::column);
}

TEST(ShelfInsert, Errors) {
  Shelf s = p1();
  try {
    s.insert(ShelfItem::square(0, 0.1, 0));
    FAIL() << "expected class mismatch";
  } catch (const ShelfError& e) {
    EXPECT_EQ(e.kind(), ShelfError::Kind::class_mismatch);
  }
  try {
    s.insert(ShelfItem::square(0, 0.125, 0));
    FAIL() << "lower bound is exclusive";
  } catch (const ShelfError& e) {
    EXPECT_EQ(e.kind(), ShelfError::Kind::class_mismatch);
  }
  s.used = 0.9;
  try {
    s.insert(ShelfItem::square(0, 0.2, 0));
    FAIL() << "expected no fit";
  } catch (const ShelfError& e) {
    EXPECT_EQ(e.kind(), ShelfError::Kind::no_fit);
  }
  EXPECT_DOUBLE_EQ(s.used, 0.9);
  EXPECT_TRUE(s.items.empty());
}

TEST(ShelfClose, Examples) {
  Shelf s = p1();
  s.used = 0.9;
  s.close();
  EXPECT_EQ(s.state, ShelfState::closed);
  EXPECT_DOUBLE_EQ(s.used, 0.9);
  try {
    s.close();
    FAIL() << "expected already closed";
  } catch (const ShelfError& e) {
    EXPECT_EQ(e.kind(), ShelfError::Kind::already_closed);
  }
  try {
    s.insert(ShelfItem::square(0, 0.01 + 0.125, 0));
    FAIL() << "expected closed";
  } catch (const ShelfError& e) {
    EXPECT_EQ(e.kind(), ShelfError::Kind::closed);
  }
}

TEST(ShelfClose, ClosedToMediumStillTakesSmalls) {
  Shelf s = p1();
  s.state = ShelfState::closed_to_medium;
  EXPECT_TRUE(s.is_open_to_small());
  EXPECT_NO_THROW(s.insert(ShelfItem::square(0, 0.2, 0)));
}

TEST(ShelfProperty, ExtentsSumToUsedAndItemsAreDisjoint) {
  Rng rng(31);
  for (int trial = 0; trial < 500; ++trial) {
    Shelf s = trial % 2 ? p1() : c1_column();
    const double lo = s.h * s.r;
    for (;;) {
      const double q = rng.uniform_open_closed(lo, s.h);
      if (!s.fits(q)) break;
      s.insert(ShelfItem::square(0, q, 0));
    }
    double sum = 0;
    for (std::size_t i = 0; i < s.items.size(); ++i) {
      sum += s.items[i].extent;
      EXPECT_TRUE(rect_contains(s.rect, s.items[i].rect, kEps));
      for (std::size_t j = i + 1; j < s.items.size(); ++j) {
        EXPECT_FALSE(rects_overlap(s.items[i].rect, s.items[j].rect));
      }
    }
    EXPECT_EQ(sum, s.used);
  }
}

// Shelf-closing bound: packed area + closer area > l h r - (h r)^2 + h_Q h r,
// checked with an independent hand fill rather than the Shelf type.
TEST(ShelfClosingBound, HandFillOracle) {
  Rng rng(32);
  const double hs[] = {0.25, 0.125, 0.08875, 0.05};
  const double rs[] = {0.5, 0.58, 0.65, 0.71, 0.9};
  const double ells[] = {0.25, 0.5, 0.69, 1.0};
  int trials = 0;
  for (double h : hs) {
    for (double r : rs) {
      for (double ell : ells) {
        if (ell < h) continue;
        for (int i = 0; i < 40; ++i, ++trials) {
          const HandFill f = hand_fill(h, r, ell, rng);
          const double hr = h * r;
          const double rhs = ell * hr - hr * hr + f.closer * hr;
          EXPECT_GT(f.area + f.closer * f.closer, rhs - 1e-9)
              << "h=" << h << " r=" << r << " l=" << ell;
        }
      }
    }
  }
  EXPECT_GT(trials, 2000);
}

TEST(ShelfClosingBound, WorstCaseIsNearlyTight) {
  // Items just above h r: n = floor(l / (h r)) of them; the bound is
  // approached when the closer is also minimal.
  const double h = 0.25, r = 0.5, ell = 1.0;
  const double q = h * r * (1 + 1e-9);
  double used = 0, area = 0;
  while (used + q <= ell) used += q, area += q * q;
  const double lhs = area + q * q;
  const double rhs = ell * h * r - (h * r) * (h * r) + q * h * r;
  EXPECT_GT(lhs, rhs);
  EXPECT_LT(lhs - rhs, 0.02);
}
