#include <gtest/gtest.h>

#include "posetab/lattice.hpp"
#include "posetab/randgen.hpp"
#include "support.hpp"

using namespace posetab;

TEST(Matrix, InitializerIsRowMajor) {
  const Matrix m{{1, 2, 3}, {4, 5, 6}};
  EXPECT_EQ(m.rows(), 2u);
  EXPECT_EQ(m.cols(), 3u);
  EXPECT_EQ(m(1, 0), 4);
  EXPECT_EQ(m(0, 2), 3);
  const std::vector<Integer> expected{1, 2, 3, 4, 5, 6};
  EXPECT_EQ(m.row_major(), expected);
  EXPECT_EQ(Matrix::from_row_major(2, 3, expected), m);
}

TEST(Matrix, ProductAndTranspose) {
  const Matrix a{{1, 2}, {3, 4}};
  const Matrix b{{0, 1}, {1, 0}};
  EXPECT_EQ(a * b, (Matrix{{2, 1}, {4, 3}}));
  EXPECT_EQ(a.transpose(), (Matrix{{1, 3}, {2, 4}}));
  EXPECT_EQ(determinant(a), -2);
  EXPECT_EQ(hcat(a, b).cols(), 4u);
  EXPECT_EQ(vcat(a, b).rows(), 4u);
}

TEST(Matrix, EmptyShapesMultiply) {
  const Matrix a(3, 0), b(0, 2);
  const Matrix c = a * b;
  EXPECT_EQ(c.rows(), 3u);
  EXPECT_EQ(c.cols(), 2u);
  EXPECT_TRUE(c.is_zero());
}

TEST(Smith, RowVector) {
  const SmithForm s = smith_normal_form(Matrix{{2, -2}});
  EXPECT_EQ(s.diagonal, (Matrix{{2, 0}}));
  EXPECT_EQ(s.left * (Matrix{{2, -2}}) * s.right, s.diagonal);
}

TEST(Smith, Identity) {
  const SmithForm s = smith_normal_form(Matrix::identity(3));
  EXPECT_EQ(s.diagonal, Matrix::identity(3));
}

TEST(Smith, IntroBoundary) {
  const Matrix m{{-1, -1}, {2, 0}, {0, 2}};
  const SmithForm s = smith_normal_form(m);
  EXPECT_EQ(s.diagonal, (Matrix{{1, 0}, {0, 2}, {0, 0}}));
  EXPECT_EQ(s.left * m * s.right, s.diagonal);
  EXPECT_EQ(abs(determinant(s.left)), 1);
  EXPECT_EQ(abs(determinant(s.right)), 1);
}

TEST(Smith, EmptyMatrix) {
  const SmithForm s = smith_normal_form(Matrix(0, 3));
  EXPECT_EQ(s.diagonal.rows(), 0u);
  EXPECT_EQ(s.right.rows(), 3u);
  EXPECT_TRUE(smith_diagonal(Matrix(2, 0)).empty());
}

TEST(Smith, HugeEntriesStayExact) {
  Integer big("123456789012345678901234567890");
  Matrix m(2, 2);
  m(0, 0) = big;
  m(1, 1) = big * 2;
  m(0, 1) = big * 3;
  const SmithForm s = smith_normal_form(m);
  EXPECT_EQ(s.left * m * s.right, s.diagonal);
  EXPECT_EQ(s.diagonal(0, 0), big);
  EXPECT_EQ(s.diagonal(1, 1), big * 2);
}

TEST(Smith, DiagonalMatchesFullForm) {
  Rng rng(5);
  for (int k = 0; k < 100; ++k) {
    const Matrix m = random_matrix(rng, static_cast<std::size_t>(rng.uniform(1, 6)),
                                   static_cast<std::size_t>(rng.uniform(1, 6)), 9);
    const SmithForm s = smith_normal_form(m);
    EXPECT_TRUE(posetab::testing::is_smith_diagonal(s.diagonal));
    std::vector<Integer> nonzero;
    for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i)
      if (s.diagonal(i, i) != 0) nonzero.push_back(s.diagonal(i, i));
    EXPECT_EQ(smith_diagonal(m), nonzero);
  }
}

TEST(Hermite, BasisProperties) {
  const Matrix m{{2, 4, 6}, {1, 3, 5}};
  const ColumnEchelon e = column_echelon(m, true);
  EXPECT_EQ(e.rank, 2u);
  EXPECT_EQ(m * e.transform, e.hermite);
  EXPECT_EQ(abs(determinant(e.transform)), 1);
  EXPECT_GT(e.hermite(0, 0), 0);
  EXPECT_TRUE(e.hermite.block(0, 2, 2, 1).is_zero());
}

TEST(Kernel, AndSolve) {
  const Matrix m{{1, 2, 3}, {2, 4, 6}};
  const Matrix k = integer_kernel(m);
  EXPECT_EQ(k.cols(), 2u);
  EXPECT_TRUE((m * k).is_zero());
  const std::vector<Integer> b{Integer(5), Integer(10)};
  const auto x = solve_integer(m, b);
  ASSERT_TRUE(x);
  EXPECT_EQ(m * *x, b);
  const std::vector<Integer> odd{Integer(1)};
  EXPECT_FALSE(solve_integer(Matrix{{2, 4}}, odd));
}

TEST(Lattice, MembershipAndArithmetic) {
  const Lattice even = Lattice::from_generators(Matrix{{2}});
  const Lattice three = Lattice::from_generators(Matrix{{3}});
  const std::vector<Integer> four{4}, five{5};
  EXPECT_TRUE(even.contains(four));
  EXPECT_FALSE(even.contains(five));
  EXPECT_EQ(even + three, Lattice::full(1));
  EXPECT_EQ(even.intersect(three), Lattice::from_generators(Matrix{{6}}));
  EXPECT_TRUE(Lattice::full(1).contains(even));
  EXPECT_FALSE(even.contains(Lattice::full(1)));
}

TEST(Lattice, PreimageAndImage) {
  const Matrix a{{2, 0}, {0, 3}};
  const Lattice target = Lattice::from_generators(Matrix{{6, 0}, {0, 6}});
  const Lattice pre = Lattice::preimage(a, target);
  EXPECT_EQ(pre, Lattice::from_generators(Matrix{{3, 0}, {0, 2}}));
  const Lattice img = Lattice::image(a, Lattice::full(2));
  EXPECT_EQ(img, Lattice::from_generators(a));
}

TEST(Lattice, CoordinatesAndAxes) {
  const std::size_t axes[] = {0, 2};
  const Lattice c = Lattice::coordinate(3, axes);
  EXPECT_EQ(c.rank(), 2u);
  const std::vector<Integer> in{1, 0, 7}, out{0, 1, 0};
  EXPECT_TRUE(c.contains(in));
  EXPECT_FALSE(c.contains(out));
  const auto coords = c.coordinates(in);
  ASSERT_TRUE(coords);
  EXPECT_EQ(c.basis() * *coords, in);
}

TEST(Lattice, RandomPreimageContract) {
  Rng rng(11);
  for (int k = 0; k < 50; ++k) {
    const Matrix a = random_matrix(rng, 3, 3, 4);
    const Lattice t = Lattice::from_generators(random_matrix(rng, 3, 2, 4));
    const Lattice pre = Lattice::preimage(a, t);
    for (std::size_t c = 0; c < pre.rank(); ++c) EXPECT_TRUE(t.contains(a * pre.basis().column(c)));
    // Unit vectors that map into t must lie in the preimage.
    for (std::size_t i = 0; i < 3; ++i) {
      std::vector<Integer> e(3);
      e[i] = 1;
      if (t.contains(a * e)) {
        EXPECT_TRUE(pre.contains(e));
      }
    }
  }
}
