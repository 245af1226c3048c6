#include <gtest/gtest.h>

#include <cmath>
#include <future>
#include <numbers>
#include <random>
#include <vector>

#include "groupcalc/errors.hpp"
#include "groupcalc/group_class.hpp"

using namespace groupcalc;

namespace {

std::vector<GroupClass> builtin_classes() {
  return {GroupClass::bg(),          GroupClass::tsallis(-0.5),     GroupClass::tsallis(0.0),
          GroupClass::tsallis(0.5),  GroupClass::tsallis(0.9),      GroupClass::tsallis(1.5),
          GroupClass::kaniadakis(0.25), GroupClass::kaniadakis(1.0), GroupClass::kaniadakis(2.0),
          GroupClass::abe(1.0, -1.0), GroupClass::abe(0.5, -2.0),   GroupClass::abe(0.0, -1.0)};
}

}  // namespace

TEST(GOf, ExamplesFromClosedForms) {
  EXPECT_EQ(g_of(GroupClass::bg(), 1.7), 1.7);
  EXPECT_NEAR(g_of(GroupClass::tsallis(0.0), std::numbers::ln2), 1.0, 1e-15);
  EXPECT_EQ(g_of(GroupClass::kaniadakis(1.0), 0.0), 0.0);
  EXPECT_NEAR(g_of(GroupClass::abe(0.5, -2.0), 1.0), 0.60535439498540618, 1e-15);
}

TEST(GInv, ClosedFormInverses) {
  EXPECT_NEAR(g_inv(GroupClass::tsallis(0.0), 1.0), std::numbers::ln2, 1e-15);
  EXPECT_NEAR(g_inv(GroupClass::kaniadakis(1.0), 1.0), 0.88137358701954303, 1e-15);
  const auto abe = GroupClass::abe(1.0, -1.0);
  EXPECT_NEAR(g_inv(abe, g_of(abe, 0.3)), 0.3, 1e-15);
}

TEST(GInv, OutsideDomainThrows) {
  EXPECT_THROW(g_inv(GroupClass::tsallis(0.0), -1.0), DomainError);
  EXPECT_THROW(g_inv(GroupClass::tsallis(0.0), -2.0), DomainError);
  EXPECT_THROW(g_inv(GroupClass::tsallis(3.0), 0.5), DomainError);
  EXPECT_NO_THROW(g_inv(GroupClass::tsallis(3.0), 0.49));
}

TEST(GDerivatives, Examples) {
  EXPECT_EQ(g_prime(GroupClass::bg(), 5.0), 1.0);
  EXPECT_EQ(g_second(GroupClass::bg(), 5.0), 0.0);
  EXPECT_NEAR(g_prime(GroupClass::tsallis(0.5), 0.0), 1.0, 1e-15);
  EXPECT_NEAR(g_prime(GroupClass::kaniadakis(2.0), 1.0), 3.7621956910836315, 1e-14);
}

TEST(GDerivatives, MatchFiniteDifferences) {
  const double h = 1e-5;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> t(-2.0, 2.0);
  for (const auto& cls : builtin_classes()) {
    for (int i = 0; i < 200; ++i) {
      const double x = t(rng);
      const double d1 = (g_of(cls, x + h) - g_of(cls, x - h)) / (2 * h);
      const double d2 = (g_prime(cls, x + h) - g_prime(cls, x - h)) / (2 * h);
      const double d3 = (g_second(cls, x + h) - g_second(cls, x - h)) / (2 * h);
      EXPECT_LE(std::abs(d1 - g_prime(cls, x)), 1e-8 * std::max(1.0, std::abs(g_prime(cls, x)))) << cls.spec();
      EXPECT_LE(std::abs(d2 - g_second(cls, x)), 1e-8 * std::max(1.0, std::abs(g_second(cls, x)))) << cls.spec();
      EXPECT_LE(std::abs(d3 - g_third(cls, x)), 1e-8 * std::max(1.0, std::abs(g_third(cls, x)))) << cls.spec();
    }
  }
}

TEST(GroupClass, AnchoredAtOrigin) {
  for (const auto& cls : builtin_classes()) {
    EXPECT_EQ(g_of(cls, 0.0), 0.0) << cls.spec();
    EXPECT_NEAR(g_prime(cls, 0.0), 1.0, 1e-15) << cls.spec();
  }
}

TEST(GroupClass, RoundTripOnThousandSamples) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> t(-5.0, 5.0);
  for (const auto& cls : builtin_classes()) {
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double x = t(rng);
      worst = std::max(worst, std::abs(g_inv(cls, g_of(cls, x)) - x) / (1.0 + std::abs(x)));
    }
    EXPECT_LE(worst, 1e-12) << cls.spec();
  }
}

TEST(GroupClass, ForwardRoundTripIsRelative) {
  for (const auto& cls : builtin_classes()) {
    for (double t : {-3.0, -0.7, 0.01, 0.4, 2.5}) {
      const double s = g_of(cls, t);
      EXPECT_LE(std::abs(g_of(cls, g_inv(cls, s)) - s), 1e-12 * std::abs(s)) << cls.spec() << " t=" << t;
    }
  }
}

TEST(GroupClass, StrictlyIncreasing) {
  for (const auto& cls : builtin_classes()) {
    double prev = g_of(cls, -5.0);
    for (int i = 1; i <= 1000; ++i) {
      const double cur = g_of(cls, -5.0 + 0.01 * i);
      ASSERT_GT(cur, prev) << cls.spec();
      prev = cur;
    }
  }
}

TEST(GroupClass, BgIsIdentityExactly) {
  const auto bg = GroupClass::bg();
  for (double t : {-3.25, -1e-300, 0.0, 1e-17, 2.0, 1e200}) {
    EXPECT_EQ(g_of(bg, t), t);
    EXPECT_EQ(g_inv(bg, t), t);
  }
}

TEST(GroupClass, DegenerateParametersNormalizeToBg) {
  EXPECT_TRUE(GroupClass::tsallis(1.0).is_bg());
  EXPECT_TRUE(GroupClass::kaniadakis(0.0).is_bg());
  EXPECT_TRUE(GroupClass::parse("tsallis:q=1").is_bg());
  const auto k = GroupClass::kaniadakis(-2.0);
  EXPECT_EQ(std::get<classes::Kaniadakis>(k.kind()).kappa, 2.0);
}

TEST(GroupClass, AbeParameterValidation) {
  EXPECT_THROW(GroupClass::abe(1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(GroupClass::abe(1.0, 3.0), std::invalid_argument);
  EXPECT_THROW(GroupClass::abe(-1.0, -2.0), std::invalid_argument);
  const auto swapped = GroupClass::abe(-1.0, 2.0);
  EXPECT_NEAR(g_of(swapped, 0.8), g_of(GroupClass::abe(2.0, -1.0), 0.8), 1e-15);
}

TEST(GroupClass, AbeDomainFollowsSigns) {
  const auto a = GroupClass::abe(0.0, -1.0);  // G(t) = 1 - e^{-t}
  EXPECT_TRUE(a.domain().contains(0.99));
  EXPECT_FALSE(a.domain().contains(1.0));
  EXPECT_THROW(g_inv(a, 1.5), DomainError);
  EXPECT_NEAR(g_inv(a, 0.5), std::numbers::ln2, 1e-14);
}

TEST(GroupClass, SeriesOrderValidation) {
  EXPECT_THROW(GroupClass::series({0.5}, 2), std::invalid_argument);
  EXPECT_THROW(GroupClass::series({0.5}, 0), std::invalid_argument);
  EXPECT_THROW(GroupClass::series({}), std::invalid_argument);
  EXPECT_NO_THROW(GroupClass::series({0.5, 0.1}, 1));
}

TEST(GroupClass, SeriesIsRestrictedAndInvertsLocally) {
  const auto s = GroupClass::series({0.5});  // G = t + t^2/4, G' = 1 + t/2
  EXPECT_TRUE(s.restricted());
  EXPECT_NEAR(s.t_domain().lo, -1.0, 2e-3);
  EXPECT_NEAR(g_inv(s, g_of(s, 0.3)), 0.3, 1e-14);
  EXPECT_NEAR(g_inv(s, -0.3), -2.0 + 2.0 * std::sqrt(0.7), 1e-14);
  EXPECT_THROW(g_inv(s, -0.8), ConvergenceError);  // below G(-1) = -0.75
}

TEST(GroupClass, SeriesReproducesTsallisExpansion) {
  const double gamma = 0.5;  // q = 0.5
  const auto ts = GroupClass::tsallis(1.0 - gamma);
  for (int order = 1; order <= 5; ++order) {
    std::vector<double> a;
    double fact = 1.0;
    for (int k = 1; k <= order; ++k) {
      fact *= k;
      a.push_back(std::pow(gamma, k) / fact);  // G_q = sum gamma^k t^{k+1} / (k+1)!
    }
    const auto s = GroupClass::series(a);
    double next_fact = fact * (order + 1) * (order + 2);
    for (double t = -0.1; t <= 0.1; t += 0.005) {
      const double bound = 2.0 * std::pow(gamma, order + 1) * std::pow(std::abs(t), order + 2) / next_fact + 1e-16;
      EXPECT_LE(std::abs(g_of(s, t) - g_of(ts, t)), bound) << "order " << order << " t " << t;
    }
  }
}

TEST(ElementaryFunctions, LogExpExamples) {
  const auto q = GroupClass::tsallis(0.5);
  EXPECT_NEAR(log_g(q, 4.0), 2.0, 1e-15);
  EXPECT_NEAR(exp_g(q, 2.0), 4.0, 1e-14);
  for (const auto& cls : builtin_classes()) {
    EXPECT_EQ(exp_g(cls, 0.0), 1.0) << cls.spec();
    EXPECT_EQ(log_g(cls, 1.0), 0.0) << cls.spec();
    for (double x : {0.2, 0.9, 1.7, 3.0}) {
      EXPECT_NEAR(exp_g(cls, log_g(cls, x)), x, 1e-13 * x) << cls.spec();
    }
  }
  EXPECT_THROW(log_g(q, 0.0), DomainError);
  EXPECT_THROW(log_g(q, -1.0), DomainError);
  EXPECT_THROW(exp_g(GroupClass::tsallis(3.0), 5.0), DomainError);
}

TEST(ElementaryFunctions, SineCosineExamples) {
  EXPECT_NEAR(sin_g(GroupClass::bg(), std::numbers::pi / 2), 1.0, 1e-15);
  EXPECT_NEAR(sin_g(GroupClass::tsallis(0.0), std::exp(std::numbers::pi / 2) - 1.0), 1.0, 1e-15);
  for (const auto& cls : builtin_classes()) {
    EXPECT_EQ(cos_g(cls, 0.0), 1.0) << cls.spec();
    for (double t = -4.0; t <= 4.0; t += 0.37) {
      const double x = g_of(cls, t);
      EXPECT_NEAR(std::pow(cos_g(cls, x), 2) + std::pow(sin_g(cls, x), 2), 1.0, 1e-12) << cls.spec();
    }
  }
}

TEST(DeformationFactor, ClosedForms) {
  // Tsallis: A = 1 + gamma x, A' = gamma, A'' = 0
  const auto q = GroupClass::tsallis(0.25);
  const auto fq = deformation_factor(q, 0.8);
  EXPECT_NEAR(fq.a, 1.0 + 0.75 * 0.8, 1e-14);
  EXPECT_NEAR(fq.da, 0.75, 1e-14);
  EXPECT_NEAR(fq.d2a, 0.0, 1e-13);
  // Kaniadakis: A = sqrt(1 + k^2 x^2)
  const auto k = GroupClass::kaniadakis(1.0);
  const auto fk = deformation_factor(k, 0.5);
  EXPECT_NEAR(fk.a, std::sqrt(1.25), 1e-14);
  EXPECT_NEAR(fk.da, 0.5 / std::sqrt(1.25), 1e-14);
  EXPECT_NEAR(fk.d2a, 1.0 / std::pow(1.25, 1.5), 1e-13);
}

TEST(Parse, AcceptsEverySpelling) {
  EXPECT_TRUE(GroupClass::parse("bg").is_bg());
  EXPECT_NEAR(std::get<classes::Tsallis>(GroupClass::parse("tsallis:q=0.5").kind()).q, 0.5, 0);
  EXPECT_EQ(std::get<classes::Kaniadakis>(GroupClass::parse("kaniadakis:k=2").kind()).kappa, 2.0);
  EXPECT_EQ(std::get<classes::Kaniadakis>(GroupClass::parse("kaniadakis:kappa=2").kind()).kappa, 2.0);
  const auto abe = std::get<classes::Abe>(GroupClass::parse("abe:a=1,b=-0.5").kind());
  EXPECT_EQ(abe.a, 1.0);
  EXPECT_EQ(abe.b, -0.5);
  const auto s = std::get<classes::Series>(GroupClass::parse("series:a1=0.5,a2=0.1,order=1").kind());
  EXPECT_EQ(s.order, 1);
  EXPECT_EQ(s.coeffs.size(), 2u);
}

TEST(Parse, SpecRoundTrips) {
  for (const auto& cls : builtin_classes()) {
    const auto again = GroupClass::parse(cls.spec());
    EXPECT_EQ(again.spec(), cls.spec());
    EXPECT_EQ(g_of(again, 0.77), g_of(cls, 0.77));
  }
}

TEST(Parse, ErrorsCarryOffsets) {
  try {
    GroupClass::parse("tsallis:q=abc");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 10u);
  }
  EXPECT_THROW(GroupClass::parse("renyi:q=1"), ParseError);
  EXPECT_THROW(GroupClass::parse("tsallis"), ParseError);
  EXPECT_THROW(GroupClass::parse("abe:a=1"), ParseError);
  EXPECT_THROW(GroupClass::parse(""), ParseError);
}

TEST(DeformedValue, SpacesRoundTrip) {
  for (const auto& cls : builtin_classes()) {
    for (double x : {-0.3, 0.0, 0.45, 1.2}) {
      if (!cls.domain().contains(x)) continue;
      const DeformedValue g{g_inv(cls, x), Space::G, cls};
      EXPECT_NEAR(g_of(g.cls, g.value), x, 1e-12 * (1.0 + std::abs(x)));
      const DeformedValue d{g_of(cls, x), Space::DualG, cls};
      EXPECT_NEAR(g_inv(d.cls, d.value), x, 1e-12 * (1.0 + std::abs(x)));
    }
  }
}

TEST(Concurrency, NumericInversionIsThreadSafe) {
  const auto abe = GroupClass::abe(0.5, -2.0);
  std::vector<double> xs;
  for (int i = 0; i < 400; ++i) xs.push_back(-0.35 + 0.003 * i);
  std::vector<double> serial;
  for (double x : xs) serial.push_back(g_inv(abe, x));
  std::vector<std::future<std::vector<double>>> jobs;
  for (int w = 0; w < 8; ++w) {
    jobs.push_back(std::async(std::launch::async, [&] {
      std::vector<double> r;
      for (double x : xs) r.push_back(g_inv(abe, x));
      return r;
    }));
  }
  for (auto& j : jobs) EXPECT_EQ(j.get(), serial);
}
