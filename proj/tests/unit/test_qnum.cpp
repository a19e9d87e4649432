#include <gtest/gtest.h>

#include <cmath>

#include "ybt/errors.hpp"
#include "ybt/qnum.hpp"

namespace ybt {
namespace {

// Independent termwise evaluation of (a; q)_k.
cplx naive_poch(cplx a, double q, int k) {
  cplx r = 1.0;
  for (int i = 0; i < k; ++i) r *= 1.0 - a * std::pow(q, i);
  return r;
}

TEST(QPochhammer, EmptyProductIsOne) {
  EXPECT_EQ(q_pochhammer(cplx(3.7, -1.2), 0.4, 0), cplx(1.0));
  EXPECT_EQ(q_pochhammer(cplx(0.0), 2.5, 0), cplx(1.0));
}

TEST(QPochhammer, SmallCase) {
  EXPECT_NEAR(std::abs(q_pochhammer(0.5, 0.5, 2) - 0.375), 0.0, 1e-15);
}

TEST(QPochhammer, VanishesAtOne) {
  for (int n = 1; n < 6; ++n) EXPECT_EQ(q_pochhammer(1.0, 0.7, n), cplx(0.0));
}

TEST(QPochhammer, SplitsOverLengths) {
  const cplx a(0.3, 0.2);
  for (double q : {0.3, 0.8, 1.4}) {
    for (int m = 0; m <= 10; ++m) {
      for (int n = 0; n <= 10; ++n) {
        const cplx lhs = q_pochhammer(a, q, m + n);
        const cplx rhs = q_pochhammer(a, q, m) * q_pochhammer(a * std::pow(q, m), q, n);
        EXPECT_LE(std::abs(lhs - rhs), 1e-12 * std::max(1.0, std::abs(lhs)));
      }
    }
  }
}

TEST(QPochhammer, NegativeLength) {
  const double q = 0.6;
  const cplx a = 0.25;
  for (int n = 1; n < 5; ++n) {
    const cplx expect = 1.0 / naive_poch(a * std::pow(q, -n), q, n);
    EXPECT_LE(std::abs(q_pochhammer_signed(a, q, -n) - expect), 1e-12);
  }
  // a q^{-1} = 1 makes the single denominator factor vanish.
  try {
    q_pochhammer_signed(q, q, -1);
    FAIL() << "expected a pole";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::PoleInPochhammer);
  }
}

TEST(QPochhammer, TemplateMatchesComplex) {
  const double q = 0.45;
  for (int n = -3; n <= 6; ++n) {
    const double t = q_pochhammer_signed_t<double>(0.7, q, n);
    EXPECT_NEAR(t, q_pochhammer_signed(0.7, q, n).real(), 1e-13);
  }
}

TEST(QNumbers, ClassicalLimit) {
  EXPECT_DOUBLE_EQ(q_integer(5, 1.0), 5.0);
  EXPECT_NEAR(q_integer(5, 1.0 + 1e-10), 5.0, 1e-9);
  EXPECT_NEAR(q_integer(3, 0.5), 1.75, 1e-15);
  EXPECT_NEAR(q_number_symmetric(2, 2.0), 2.5, 1e-15);
  EXPECT_NEAR(q_factorial(3, 0.5), 1.0 * 1.5 * 1.75, 1e-15);
}

TEST(QBinomial, Boundaries) {
  for (int l = 0; l < 7; ++l) EXPECT_DOUBLE_EQ(q_binomial(l, 0, 0.3), 1.0);
  EXPECT_DOUBLE_EQ(q_binomial(3, -1, 0.3), 0.0);
  EXPECT_DOUBLE_EQ(q_binomial(3, 4, 0.3), 0.0);
  EXPECT_NEAR(q_binomial(4, 2, 1.0), 6.0, 1e-12);
}

TEST(QBinomial, PascalRule) {
  for (double q : {0.2, 0.5, 0.9, 1.7}) {
    for (int l = 1; l <= 8; ++l) {
      for (int j = 0; j <= l; ++j) {
        const double lhs = std::pow(q, j) * q_binomial(l - 1, j, q) + q_binomial(l - 1, j - 1, q);
        EXPECT_NEAR(lhs, q_binomial(l, j, q), 1e-10 * q_binomial(l, j, q)) << l << " " << j << " " << q;
      }
    }
  }
}

TEST(QBinomial, Symmetric) {
  for (int l = 0; l <= 8; ++l)
    for (int j = 0; j <= l; ++j) EXPECT_NEAR(q_binomial(l, j, 0.35), q_binomial(l, l - j, 0.35), 1e-12);
}

TEST(BasicHypergeometric, ZeroArgument) {
  HypergeometricSpec s;
  s.upper = {0.3, 0.4};
  s.lower = {0.7};
  s.q = 0.5;
  s.z = 0.0;
  EXPECT_EQ(basic_hypergeometric(s), cplx(1.0));
}

TEST(BasicHypergeometric, UnitUpperParameter) {
  HypergeometricSpec s;
  s.upper = {1.0, 0.4};
  s.lower = {0.7};
  s.q = 0.5;
  s.z = 0.9;
  EXPECT_NEAR(std::abs(basic_hypergeometric(s) - 1.0), 0.0, 1e-15);
}

TEST(BasicHypergeometric, ThreeTermSum) {
  const double q = 0.5, a = 0.3, b = 0.7, z = 0.2;
  HypergeometricSpec s;
  s.upper = {std::pow(q, -2), a};
  s.lower = {b};
  s.q = q;
  s.z = z;
  // 2phi1: no balancing factor. k = 0, 1, 2 by hand.
  const double u = 4.0;  // q^{-2}
  const double t1 = (1 - u) * (1 - a) / ((1 - b) * (1 - q)) * z;
  const double t2 = (1 - u) * (1 - u * q) * (1 - a) * (1 - a * q) /
                    ((1 - b) * (1 - b * q) * (1 - q) * (1 - q * q)) * z * z;
  EXPECT_NEAR(std::abs(basic_hypergeometric(s) - (1 + t1 + t2)), 0.0, 1e-14);
}

TEST(BasicHypergeometric, QBinomialTheorem) {
  // 1phi0(a;;q,z) = (az;q)_inf / (z;q)_inf for |z| < 1.
  const double q = 0.6;
  const cplx a(0.3, 0.1), z(0.4, -0.2);
  HypergeometricSpec s;
  s.upper = {a};
  s.q = q;
  s.z = z;
  const cplx expect = naive_poch(a * z, q, 400) / naive_poch(z, q, 400);
  EXPECT_LE(std::abs(basic_hypergeometric(s) - expect), 1e-13);
}

TEST(BasicHypergeometric, BalancingFactor) {
  // 0phi0(;;q,z) = (z;q)_inf, Euler: sum (-1)^k q^{k(k-1)/2} z^k / (q;q)_k.
  const double q = 0.5;
  const cplx z = 0.8;
  HypergeometricSpec s;
  s.q = q;
  s.z = z;
  EXPECT_LE(std::abs(basic_hypergeometric(s) - naive_poch(z, q, 200)), 1e-14);
}

TEST(BasicHypergeometric, Divergent) {
  HypergeometricSpec s;
  s.upper = {0.3, 0.4};
  s.lower = {0.2};
  s.q = 0.5;
  s.z = 3.0;
  s.max_terms = 200;
  try {
    basic_hypergeometric(s);
    FAIL() << "expected divergence";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NonTerminatingDivergent);
  }
}

TEST(BasicHypergeometric, LowerPoleBeforeTermination) {
  const double q = 0.5;
  HypergeometricSpec s;
  s.upper = {std::pow(q, -3), 0.2};
  s.lower = {std::pow(q, -1)};
  s.q = q;
  s.z = 0.3;
  try {
    basic_hypergeometric(s);
    FAIL() << "expected a lower-parameter pole";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::PoleInLowerParameters);
  }
}

QRacahParams racah_case(int n, int x) {
  QRacahParams p;
  p.q = 0.5;
  p.N = 4;
  p.alpha = std::pow(p.q, -4) / p.q;  // alpha q = q^{-N}
  p.beta = 0.3;
  p.gamma = 0.2;
  p.delta = 0.4;
  p.n = n;
  p.x = x;
  return p;
}

TEST(QRacah, DegreeOrArgumentZero) {
  for (int k = 0; k <= 4; ++k) {
    EXPECT_NEAR(std::abs(q_racah(racah_case(0, k)) - 1.0), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(q_racah(racah_case(k, 0)) - 1.0), 0.0, 1e-14);
  }
}

TEST(QRacah, MatchesTermwiseSum) {
  for (int n = 0; n <= 4; ++n) {
    for (int x = 0; x <= 4; ++x) {
      const QRacahParams p = racah_case(n, x);
      const double q = p.q;
      const cplx u[4] = {std::pow(q, -n), p.alpha * p.beta * std::pow(q, n + 1), std::pow(q, -x),
                         p.gamma * p.delta * std::pow(q, x + 1)};
      const cplx b[3] = {p.alpha * q, p.beta * p.delta * q, p.gamma * q};
      cplx sum = 0.0;
      for (int k = 0; k <= std::min(n, x); ++k) {
        cplx t = std::pow(q, k) / naive_poch(q, q, k);
        for (const auto& a : u) t *= naive_poch(a, q, k);
        for (const auto& c : b) t /= naive_poch(c, q, k);
        sum += t;
      }
      EXPECT_LE(std::abs(q_racah(p) - sum), 1e-12 * std::max(1.0, std::abs(sum))) << n << " " << x;
    }
  }
}

TEST(QRacah, RegularizedClearsLowerPochhammers) {
  for (int n = 0; n <= 4; ++n) {
    for (int x = 0; x <= 4; ++x) {
      const QRacahParams p = racah_case(n, x);
      const double q = p.q;
      const cplx clear = naive_poch(p.alpha * q, q, n) * naive_poch(p.beta * p.delta * q, q, n) *
                         naive_poch(p.gamma * q, q, n);
      const cplx expect = q_racah(p) * clear;
      EXPECT_LE(std::abs(q_racah_regularized(p) - expect), 1e-10 * std::max(1.0, std::abs(expect)));
    }
  }
}

TEST(QRacah, TruncationConditionEnforced) {
  QRacahParams p = racah_case(1, 1);
  p.alpha = 0.9;
  try {
    q_racah(p);
    FAIL() << "expected invalid parameters";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::InvalidParameters);
  }
}

TEST(QRacah, MuConvention) {
  const QRacahParams p = racah_case(1, 2);
  const cplx expect = std::pow(0.5, -2) + 0.2 * 0.4 * std::pow(0.5, 3);
  EXPECT_NEAR(std::abs(q_racah_mu(p) - expect), 0.0, 1e-14);
}

TEST(Termination, RecognisesInversePowers) {
  EXPECT_EQ(termination_index(std::pow(0.5, -3), 0.5), 3);
  EXPECT_EQ(termination_index(1.0, 0.5), 0);
  EXPECT_EQ(termination_index(3.0, 0.5), -1);
  EXPECT_EQ(termination_index(cplx(8.0, 1.0), 0.5), -1);
}

}  // namespace
}  // namespace ybt
