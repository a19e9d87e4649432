#include <gtest/gtest.h>

#include <unsupported/Eigen/MatrixFunctions>
#include <cmath>
#include <random>

#include "ybt/errors.hpp"
#include "ybt/models.hpp"
#include "ybt/operator.hpp"

namespace ybt {
namespace {

Operator random_generator(int n, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(0.0, 2.0);
  Matrix g = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) g(i, j) = u(rng);
    }
    g(i, i) = -g.row(i).sum();
  }
  return Operator(g);
}

Operator two_state(double a, double b) {
  Matrix g(2, 2);
  g << -a, a, b, -b;
  return Operator(g);
}

TEST(Operator, RejectsBadShapes) {
  EXPECT_THROW(Operator({2, 2}, Matrix::Identity(3, 3)), Error);
  EXPECT_THROW(Operator(Matrix::Zero(2, 3)), Error);
  try {
    Operator::identity(std::vector<int>(21, 2));
    FAIL() << "expected the state-space cap";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::StateSpaceTooLarge);
  }
}

TEST(Kron, SiteOrdering) {
  Matrix a(2, 2), b(2, 2);
  a << 1, 2, 3, 4;
  b << 0, 1, 1, 0;
  const Operator k = kron(Operator(a), Operator(b));
  EXPECT_EQ(k.site_dims(), (std::vector<int>{2, 2}));
  // Site 0 is the slow index.
  EXPECT_EQ(k(0 * 2 + 1, 1 * 2 + 0), a(0, 1) * b(1, 0));
  EXPECT_EQ(k(1 * 2 + 0, 0 * 2 + 1), a(1, 0) * b(0, 1));
}

TEST(EmbedLocal, FullWidthIsIdentityMap) {
  const Operator l = asep_local_generator(0.5);
  EXPECT_EQ(max_norm(embed_local(l, 0, 2, 2) - l), 0.0);
}

TEST(EmbedLocal, IdentityEmbedsToIdentity) {
  const Operator id = Operator::identity({2, 2});
  EXPECT_EQ(max_norm(embed_local(id, 1, 4, 2) - Operator::identity({2, 2, 2, 2})), 0.0);
}

TEST(EmbedLocal, DisjointSupportsCommute) {
  const Operator l = asep_local_generator(0.5);
  const Operator a = embed_local(l, 0, 4, 2);
  const Operator b = embed_local(l, 2, 4, 2);
  EXPECT_EQ(max_norm(a * b - b * a), 0.0);
  // Overlapping supports do not commute.
  const Operator c = embed_local(l, 1, 4, 2);
  EXPECT_GT(max_norm(a * c - c * a), 1e-3);
}

TEST(EmbedLocal, MatchesKronPadding) {
  Matrix m = Matrix::Random(3, 3);
  const Operator op(m);
  const Operator e = embed_local(op, 1, {2, 3, 2});
  const Operator expect = kron(kron(Operator::identity({2}), op), Operator::identity({2}));
  EXPECT_EQ(max_norm(e - expect), 0.0);
}

TEST(EmbedLocal, RejectsMisfit) {
  const Operator l = asep_local_generator(0.5);
  EXPECT_THROW(embed_local(l, 3, 4, 2), Error);
  EXPECT_THROW(embed_local(l, -1, 4, 2), Error);
  EXPECT_THROW(embed_local(l, 0, {3, 2}), Error);
}

TEST(Permutation, Involution) {
  const Operator p = permutation_operator(2, 2);
  EXPECT_EQ(max_norm(p * p - Operator::identity({2, 2})), 0.0);
  const Operator p3 = permutation_operator(3, 3);
  EXPECT_EQ(max_norm(p3 * p3 - Operator::identity({3, 3})), 0.0);
}

TEST(Permutation, SwapsBasisVectors) {
  // Row convention: e_r^T P is the image of basis state r.
  for (int d1 : {2, 3}) {
    for (int d2 : {2, 4}) {
      const Operator p = permutation_operator(d1, d2);
      for (int a = 0; a < d1; ++a) {
        for (int b = 0; b < d2; ++b) {
          Eigen::RowVectorXcd e = Eigen::RowVectorXcd::Zero(d1 * d2);
          e(a * d2 + b) = 1.0;
          const Eigen::RowVectorXcd img = e * p.matrix();
          EXPECT_EQ(img(b * d1 + a), cplx(1.0));
          EXPECT_EQ(img.cwiseAbs().sum(), 1.0);
        }
      }
    }
  }
}

TEST(Permutation, ConjugatesKron) {
  Matrix a = Matrix::Random(2, 2), b = Matrix::Random(3, 3);
  const Operator p = permutation_operator(2, 3);
  const Operator pt = permutation_operator(3, 2);
  const Operator lhs = Operator(pt.matrix() * kron(Operator(a), Operator(b)).matrix() * p.matrix());
  EXPECT_LE(max_norm(lhs.matrix() - kron(Operator(b), Operator(a)).matrix()), 1e-15);
}

TEST(Predicates, GeneratorAndStochastic) {
  EXPECT_TRUE(is_generator(two_state(1.0, 2.0), 1e-12));
  Matrix bad(2, 2);
  bad << -1, 1.5, 0, 0;
  EXPECT_FALSE(is_generator(Operator(bad), 1e-12));
  Matrix neg(2, 2);
  neg << 1, -1, 0, 0;
  EXPECT_FALSE(is_generator(Operator(neg), 1e-12));
  Matrix p(2, 2);
  p << 0.3, 0.7, 1.0, 0.0;
  EXPECT_TRUE(is_stochastic(Operator(p), 1e-12));
  EXPECT_FALSE(is_stochastic(two_state(1.0, 1.0), 1e-12));
}

TEST(Stationary, SymmetricTwoState) {
  const ProbVector pi = stationary_distribution(two_state(1.0, 1.0), 1e-12);
  EXPECT_NEAR(pi(0), 0.5, 1e-14);
  EXPECT_NEAR(pi(1), 0.5, 1e-14);
}

TEST(Stationary, OpenAsepAgainstEigenSolver) {
  AsepParams p;
  p.q = 0.5;
  p.alpha = 1.0;
  p.beta = 1.0;
  p.L = 2;
  const Operator g = asep_generator(p, true);
  const ProbVector pi = stationary_distribution(g, 1e-12);
  Eigen::EigenSolver<RealMatrix> es(g.matrix().real().transpose());
  int k = 0;
  es.eigenvalues().cwiseAbs().minCoeff(&k);
  Eigen::VectorXd v = es.eigenvectors().col(k).real();
  v /= v.sum();
  EXPECT_LE((pi - v).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LE((pi.transpose() * g.matrix().real()).cwiseAbs().maxCoeff(), 10 * 1e-12);
}

TEST(Stationary, BalanceOnRandomChains) {
  std::mt19937 rng(7);
  for (int n : {3, 8, 30}) {
    const Operator g = random_generator(n, rng);
    const ProbVector pi = stationary_distribution(g, 1e-12);
    EXPECT_LE((pi.transpose() * g.matrix().real()).cwiseAbs().maxCoeff(), 1e-11);
    EXPECT_NEAR(pi.sum(), 1.0, 1e-12);
    EXPECT_GE(pi.minCoeff(), 0.0);
  }
}

TEST(Stationary, NotAGenerator) {
  Matrix g(2, 2);
  g << -1, 2, 1, -1;
  try {
    stationary_distribution(Operator(g), 1e-12);
    FAIL() << "expected NotAGenerator";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotAGenerator);
  }
}

TEST(Stationary, ReducibleAndClosedClass) {
  // 0 -> 1 and 0 -> 2; states 1 and 2 are absorbing.
  Matrix g = Matrix::Zero(3, 3);
  g(0, 1) = 1.0;
  g(0, 2) = 1.0;
  g(0, 0) = -2.0;
  try {
    stationary_distribution(Operator(g), 1e-12);
    FAIL() << "expected ReducibleChain";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ReducibleChain);
  }
  const ProbVector pi = stationary_distribution(Operator(g), 1e-12, std::vector<long>{2});
  EXPECT_NEAR(pi(2), 1.0, 1e-14);
  EXPECT_NEAR(pi(0) + pi(1), 0.0, 1e-14);
}

TEST(Semigroup, TimeZeroIsIdentity) {
  std::mt19937 rng(1);
  const Operator g = random_generator(5, rng);
  EXPECT_LE(max_norm(transition_semigroup(g, 0.0, 1e-14) - Operator::identity({5})), 1e-15);
}

TEST(Semigroup, TwoStateClosedForm) {
  for (double t : {0.1, 1.0, 3.5}) {
    const double a = 0.7, b = 1.9;
    const Operator p = transition_semigroup(two_state(a, b), t, 1e-15);
    EXPECT_NEAR(p(0, 1).real(), a / (a + b) * (1 - std::exp(-(a + b) * t)), 1e-12);
  }
}

TEST(Semigroup, StochasticAndMatchesExponential) {
  std::mt19937 rng(3);
  for (int rep = 0; rep < 5; ++rep) {
    const Operator g = random_generator(6, rng);
    const Operator p = transition_semigroup(g, 1.3, 1e-15);
    EXPECT_TRUE(is_stochastic(p, 1e-12));
    const RealMatrix expect = (1.3 * g.matrix().real()).exp();
    EXPECT_LE((p.matrix().real() - expect).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Semigroup, ChapmanKolmogorov) {
  std::mt19937 rng(11);
  const Operator g = random_generator(7, rng);
  const Operator lhs = transition_semigroup(g, 2.1, 1e-15);
  const Operator rhs = transition_semigroup(g, 0.8, 1e-15) * transition_semigroup(g, 1.3, 1e-15);
  EXPECT_LE(max_norm(lhs - rhs), 1e-10);
}

TEST(Semigroup, LongTimesSlice) {
  // rate * t well above one slice.
  const Operator p = transition_semigroup(two_state(5.0, 3.0), 20.0, 1e-15);
  EXPECT_NEAR(p(0, 1).real(), 5.0 / 8.0, 1e-12);
}

TEST(Propagate, MatchesDense) {
  std::mt19937 rng(5);
  const Operator g = random_generator(9, rng);
  SparseGenerator s = g.matrix().real().sparseView();
  Eigen::VectorXd p0 = Eigen::VectorXd::Zero(9);
  p0(2) = 1.0;
  const Eigen::VectorXd p = propagate_distribution(s, p0, 0.9, 1e-15);
  const RealMatrix dense = transition_semigroup(g, 0.9, 1e-15).matrix().real();
  EXPECT_LE((p.transpose() - dense.row(2)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Csv, RoundTrip) {
  Matrix m(4, 4);
  m.setRandom();
  m(1, 2) = cplx(0.1, -2.5e-17);
  const Operator op({2, 2}, m);
  const std::string text = to_csv(op);
  const Operator back = from_csv(text, {2, 2});
  EXPECT_EQ(max_norm(back - op), 0.0);
  EXPECT_THROW(from_csv(text, {3}), Error);
}

}  // namespace
}  // namespace ybt
