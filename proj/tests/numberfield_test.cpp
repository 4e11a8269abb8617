#include <gtest/gtest.h>

#include <cmath>

#include "regprod/numberfield/numberfield.hpp"

namespace regprod {
namespace {

using LD = long double;
using C = Complex<LD>;

const NumberFieldEngine<LD>& engine() {
  static const NumberFieldEngine<LD> e;
  return e;
}

TEST(Kronecker, Characters) {
  auto chi = kronecker_character(-4);
  EXPECT_EQ(chi.modulus(), 4u);
  EXPECT_EQ(chi, enumerate_characters(4)[1]);
  EXPECT_EQ(kronecker_character(-3).value<LD>(2).re, -1);
  EXPECT_EQ(kronecker_character(5).value<LD>(2).re, -1);
  EXPECT_EQ(kronecker_character(5).parity(), 1);
  EXPECT_EQ(kronecker_character(-3).parity(), -1);
  EXPECT_EQ(kronecker_character(8).value<LD>(3).re, -1);
  EXPECT_EQ(kronecker_character(12).value<LD>(5).re, -1);
  EXPECT_THROW(kronecker_character(-12), DomainError);
  EXPECT_THROW(kronecker_character(9), DomainError);
  EXPECT_THROW(kronecker_character(-8 * 9), DomainError);
}

// Oracle: quadratic reciprocity-free brute force, (D/p) = 1 iff D is a nonzero square mod p.
TEST(Kronecker, MatchesSquaresModOddPrimes) {
  for (std::int64_t D : {-4, -3, -7, -8, 5, 8, 12, 13, -15, 21, -20}) {
    if (!is_fundamental_discriminant(D)) continue;
    for (std::int64_t p : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31}) {
      if (D % p == 0) continue;
      bool square = false;
      const std::int64_t r = ((D % p) + p) % p;
      for (std::int64_t x = 1; x < p; ++x) square |= (x * x) % p == r;
      EXPECT_EQ(kronecker_symbol(D, p), square ? 1 : -1) << D << " " << p;
    }
  }
}

TEST(Dedekind, RationalTaylor) {
  auto t = engine().dedekind_zeta_taylor0(number_field_preset<LD>("Q"), 2);
  EXPECT_NEAR(t[0], -0.5L, 1e-15L);
  EXPECT_NEAR(t[1], -0.5L * std::log(2 * pi<LD>()), 1e-15L);
}

TEST(Dedekind, GaussianLeibniz) {
  auto field = number_field_preset<LD>("Q(i)");
  auto t = engine().dedekind_zeta_taylor0(field, 1);
  const auto z = engine().lfunctions().l_taylor_at_zero(principal_character(1), 1).taylor;
  const auto l = engine().lfunctions().l_taylor_at_zero(kronecker_character(-4), 1).taylor;
  EXPECT_NEAR(t[1], (z[1] * l[0] + z[0] * l[1]).re, 1e-15L);
  auto c = engine().leading_check(field);
  EXPECT_NEAR(c.expected, -0.25L, 1e-18L);
  EXPECT_LE(c.relative_error, 1e-12L);
  // zeta(0) L(0, chi_-4) = (-1/2)(1/2)
  EXPECT_NEAR(engine().dedekind_zeta_taylor0(field, 0)[0], -0.25L, 1e-15L);
}

TEST(Dedekind, PresetsPassLeadingCheck) {
  for (const auto& name : number_field_preset_names()) {
    auto c = engine().leading_check(number_field_preset<LD>(name));
    EXPECT_LE(c.relative_error, 1e-8L) << name;
  }
}

TEST(Dedekind, WrongInvariantsAreRejected) {
  auto f = number_field_preset<LD>("Q(i)");
  f.h = 2;
  EXPECT_THROW(engine().leading_check(f), ValidationError);
  EXPECT_THROW(engine().regprod_number_field(f), ValidationError);
  auto g = number_field_preset<LD>("Q(sqrt5)");
  g.r1 = 0;
  g.r2 = 1;
  EXPECT_THROW(engine().regprod_number_field(g), DomainError);
}

// Oracle: Cauchy-circle Taylor extraction of zeta(s) L(s, chi_D) from Hurwitz values.
TEST(Dedekind, LeibnizMatchesProductFunction) {
  HurwitzEvaluator<LD> hz;
  for (std::int64_t D : {-4, 5, -3}) {
    const auto chi = kronecker_character(D);
    const auto m = chi.modulus();
    const int nodes = 128;
    const LD radius = 0.25L;
    std::vector<C> vals;
    for (int j = 0; j < nodes; ++j) {
      const C s = root_of_unity<LD>(j, nodes) * C(radius);
      C l;
      for (std::uint64_t a = 1; a <= m; ++a)
        if (chi.index(a) >= 0) l += chi.value<LD>(a) * hz.zeta(s, static_cast<LD>(a) / m);
      l = l * exp(-s * C(std::log(static_cast<LD>(m))));
      vals.push_back(hz.zeta(s, 1) * l);
    }
    const auto field = D == -4 ? number_field_preset<LD>("Q(i)")
                               : (D == 5 ? number_field_preset<LD>("Q(sqrt5)") : number_field_preset<LD>("Q(sqrt-3)"));
    const auto t = engine().dedekind_zeta_taylor0(field, 3);
    LD rp = 1;
    for (int k = 0; k <= 3; ++k) {
      C c;
      for (int j = 0; j < nodes; ++j) c += vals[j] * root_of_unity<LD>(-j * k, nodes);
      c = c * C(1 / (nodes * rp));
      EXPECT_NEAR(c.re, t[k], 1e-9L) << D << " k=" << k;
      rp *= radius;
    }
  }
}

TEST(TheoremNF, RationalField) {
  auto rep = engine().regprod_all_primes();
  EXPECT_NEAR(rep.exponent, 2 * std::log(2 * pi<LD>()), 1e-14L);
  EXPECT_NEAR(rep.value / (4 * pi<LD>() * pi<LD>()), 1, 1e-12L);
  auto direct = engine().regprod_number_field(number_field_preset<LD>("Q"));
  EXPECT_EQ(direct.exponent, rep.exponent);
}

TEST(TheoremNF, GaussianField) {
  const auto z = engine().lfunctions().l_taylor_at_zero(principal_character(1), 1).taylor;
  const auto l = engine().lfunctions().l_taylor_at_zero(kronecker_character(-4), 1).taylor;
  const LD zk1 = (z[1] * l[0] + z[0] * l[1]).re;
  auto rep = engine().regprod_number_field(number_field_preset<LD>("Q(i)"));
  EXPECT_NEAR(rep.exponent, -8 * zk1, 1e-13L);
}

TEST(TheoremNF, RealQuadraticSelfConsistency) {
  auto field = number_field_preset<LD>("Q(sqrt5)");
  const auto z = engine().lfunctions().l_taylor_at_zero(principal_character(1), 2).taylor;
  const auto l = engine().lfunctions().l_taylor_at_zero(kronecker_character(5), 2).taylor;
  EXPECT_NEAR(l[0].re, 0, 1e-15L);
  const LD zk2 = (z[2] * l[0] + z[1] * l[1] + z[0] * l[2]).re;
  auto rep = engine().regprod_number_field(field);
  EXPECT_NEAR(rep.exponent, -(2 * 2) / (2 * field.regulator) * 2 * zk2, 1e-12L);
  EXPECT_NEAR(engine().leading_check(field).computed, -std::log((1 + std::sqrt(5.0L)) / 2) / 2, 1e-12L);
}

}  // namespace
}  // namespace regprod
