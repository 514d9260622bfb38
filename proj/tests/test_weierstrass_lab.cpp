#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "instanton/weierstrass/families.hpp"
#include "instanton/weierstrass/json_io.hpp"
#include "instanton/weierstrass/weierstrass.hpp"

using namespace instanton;

namespace {

using Coeffs = std::vector<mpq_class>;  // entry i multiplies z1^i z2^(d-i)

Coeffs convolve(const Coeffs& a, const Coeffs& b) {
  Coeffs c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

/// 4A^3 + 27B^2 by explicit coefficient convolution.
Coeffs naive_discriminant(const HomogPoly& A, const HomogPoly& B) {
  const Coeffs a3 = convolve(convolve(A.coeffs(), A.coeffs()), A.coeffs());
  const Coeffs b2 = convolve(B.coeffs(), B.coeffs());
  Coeffs d(13);
  for (std::size_t i = 0; i < 13; ++i) d[i] = 4 * a3[i] + 27 * b2[i];
  return d;
}

HomogPoly z2_form(int degree, std::vector<long> c) {
  std::vector<mpq_class> q(c.begin(), c.end());
  return HomogPoly::from_z2_ascending(degree, q);
}

QPoly qpoly(std::vector<long> c) { return QPoly(std::vector<mpq_class>(c.begin(), c.end())); }

PlaceOrders orders_at_infinity(const WeierstrassData& d) { return vanishing_orders(d).front(); }

}  // namespace

TEST(Discriminant, MatchesNaiveConvolution) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 25; ++k) {
    const WeierstrassData d = random_allowable_data(rng);
    EXPECT_EQ(discriminant(d).coeffs(), naive_discriminant(d.A, d.B));
  }
}

TEST(Discriminant, AgreesWithPointEvaluation) {
  std::mt19937_64 rng(12);
  const WeierstrassData d = random_allowable_data(rng);
  const HomogPoly delta = discriminant(d);
  for (int k = 0; k < 10; ++k) {
    const mpq_class z1 = random_rational(rng), z2 = random_rational(rng);
    const mpq_class a = d.A.evaluate(z1, z2), b = d.B.evaluate(z1, z2);
    EXPECT_EQ(delta.evaluate(z1, z2), 4 * a * a * a + 27 * b * b);
  }
}

TEST(Discriminant, IdenticallyZeroRaises) {
  const WeierstrassData d{z2_form(4, {0, 0, -3, 0, 0}), z2_form(6, {0, 0, 0, 2, 0, 0, 0})};
  EXPECT_THROW(discriminant(d), DegenerateError);
  EXPECT_THROW(discriminant({HomogPoly(3), HomogPoly(6)}), InvalidParams);
}

TEST(Discriminant, IStarCoefficientsAtRandomTuples) {
  std::mt19937_64 rng(13);
  for (int k = 0; k < 10; ++k) {
    const std::array<mpq_class, 3> a{random_rational(rng), random_rational(rng), random_rational(rng)};
    const std::array<mpq_class, 4> b{random_rational(rng), random_rational(rng), random_rational(rng),
                                     random_rational(rng)};
    const HomogPoly A = HomogPoly::from_z2_ascending(4, {a[0], a[1], a[2], 0, 0});
    const HomogPoly B = HomogPoly::from_z2_ascending(6, {b[0], b[1], b[2], b[3], 0, 0, 0});
    const Coeffs naive = naive_discriminant(A, B);
    const auto c = istar_discriminant_coefficients(a, b);
    for (int j = 0; j < 6; ++j) EXPECT_EQ(naive[j], 0) << "z1^" << j;
    for (int j = 0; j < 7; ++j) EXPECT_EQ(naive[6 + j], c[j]) << "z1^" << 6 + j;
  }
}

TEST(Tate, SpotChecks) {
  EXPECT_EQ(tate_classify(2, 3, 6).type.name(), "I0*");
  for (int N = 1; N <= 6; ++N) {
    const TateResult r = tate_classify(2, 3, N + 6);
    EXPECT_EQ(r.type.name(), "I" + std::to_string(N) + "*");
    EXPECT_EQ(r.euler, N + 6);
  }
  const TateResult r = tate_classify(4, 5, 10);
  EXPECT_EQ(r.type.name(), "II*");
  EXPECT_EQ(r.euler, 10);
  EXPECT_EQ(tate_classify(0, 0, 3).type.name(), "I3");
  EXPECT_EQ(tate_classify(kInfiniteOrder, 1, 2).type.name(), "II");
  EXPECT_THROW(tate_classify(1, 1, 5), UnclassifiableError);
  EXPECT_THROW(tate_classify(-1, 0, 0), InvalidParams);
}

TEST(Tate, TableRowsFromWitnesses) {
  // I0 at p_∞: A = z1^4 + z2^4, B = 0.
  {
    const WeierstrassData d = make_weierstrass(z2_form(4, {1, 0, 0, 0, 1}), HomogPoly(6));
    const PlaceOrders o = orders_at_infinity(d);
    EXPECT_EQ(o.delta, 0);
    EXPECT_EQ(tate_classify(o.a, o.b, o.delta).type.name(), "I0");
    const SurfaceClassification cls = classify_surface(d);
    EXPECT_EQ(cls.at_infinity.type.name(), "I0");
    EXPECT_EQ(euler_ledger(cls), 12);
  }
  // I_N: A = -3 z2^4, B = 2 z2^6 + z1^N z2^(6-N).
  for (int N = 1; N <= 6; ++N) {
    std::vector<long> b(7, 0);
    b[6] = 2;
    b[6 - N] += 1;
    const WeierstrassData d = make_weierstrass(z2_form(4, {0, 0, 0, 0, -3}), z2_form(6, b));
    const PlaceOrders o = orders_at_infinity(d);
    EXPECT_EQ(o.a, 0);
    EXPECT_EQ(o.b, 0);
    EXPECT_EQ(o.delta, N);
    EXPECT_EQ(tate_classify(o.a, o.b, o.delta).type.name(), "I" + std::to_string(N));
  }
  std::mt19937_64 rng(14);
  for (FamilyType t : kAllFamilies) {
    const WeierstrassData d = family_generator(t, random_family_parameters(t, rng));
    const PlaceOrders o = orders_at_infinity(d);
    EXPECT_EQ(tate_classify(o.a, o.b, o.delta).type, expected_fiber(t)) << to_string(t);
  }
}

TEST(Factor, RecombinesSwinnertonDyerQuartic) {
  // x^4 - 10x^2 + 1 is irreducible over Q but splits modulo every prime.
  const QPoly f = qpoly({1, 0, -10, 0, 1});
  const auto fs = irreducible_factors(f);
  ASSERT_EQ(fs.size(), 1u);
  EXPECT_EQ(fs[0], f);
}

TEST(Factor, FullFactorizationWithMultiplicities) {
  const QPoly x2m2 = qpoly({-2, 0, 1}), xm3 = qpoly({-3, 1}), xp1 = qpoly({1, 1});
  const QPoly f = mpq_class(5, 2) * x2m2 * xm3 * xm3 * xp1 * xp1 * xp1;
  const auto sq = squarefree_decomposition(f);
  ASSERT_EQ(sq.size(), 3u);
  EXPECT_EQ(sq[0].factor, x2m2);
  EXPECT_EQ(sq[1].factor, xm3);
  EXPECT_EQ(sq[2].factor, xp1);
  const auto fs = factor_over_q(f);
  ASSERT_EQ(fs.size(), 3u);
  EXPECT_EQ(fs[0].factor, xm3);
  EXPECT_EQ(fs[0].multiplicity, 2);
  EXPECT_EQ(fs[1].factor, xp1);
  EXPECT_EQ(fs[1].multiplicity, 3);
  EXPECT_EQ(fs[2].factor, x2m2);
  EXPECT_EQ(fs[2].multiplicity, 1);
  EXPECT_THROW(factor_over_q(QPoly()), DegenerateError);
}

TEST(Factor, ProductOfQuadraticsSplits) {
  const QPoly p = qpoly({1, 1, 1}), q = qpoly({2, 0, 1}), r = qpoly({-7, 3});
  const auto fs = irreducible_factors(p * q * r);
  ASSERT_EQ(fs.size(), 3u);
  EXPECT_EQ(fs[0], qpoly({-7, 3}).monic());
}

TEST(Allowable, RejectsNonMinimalPlaces) {
  // a_∞ = 4, b_∞ = 6.
  EXPECT_THROW(make_weierstrass(z2_form(4, {1, 0, 0, 0, 0}), z2_form(6, {1, 0, 0, 0, 0, 0, 0})),
               NotAllowableError);
  // (z2 - z1)^4 and (z2 - z1)^6 at the finite place t = 1.
  const HomogPoly l = z2_form(1, {-1, 1});
  try {
    make_weierstrass(l.pow(4), l.pow(6));
    FAIL() << "non-minimal place accepted";
  } catch (const NotAllowableError& e) {
    EXPECT_NE(std::string(e.what()).find("[1:1]"), std::string::npos) << e.what();
  }
  EXPECT_THROW(make_weierstrass(HomogPoly(4), HomogPoly(6)), NotAllowableError);
}

TEST(Classification, EulerSumIsTwelveOnRandomData) {
  std::mt19937_64 rng(15);
  for (int k = 0; k < 60; ++k) {
    const SurfaceClassification cls = classify_surface(random_allowable_data(rng));
    EXPECT_EQ(cls.delta_total, 12);
    EXPECT_EQ(euler_ledger(cls), 12);
    for (const auto& r : cls.records) EXPECT_EQ(r.euler, r.delta);
  }
}

TEST(Classification, GoodMeansSquarefreeAwayFromInfinity) {
  std::mt19937_64 rng(18);
  int good = 0, bad = 0;
  for (int k = 0; k < 60; ++k) {
    const WeierstrassData d = random_allowable_data(rng);
    const QPoly d1 = discriminant(d).dehomogenize();
    const bool squarefree = QPoly::gcd(d1, d1.derivative()).degree() <= 0;
    const bool verdict = classify_surface(d).good;
    EXPECT_EQ(verdict, squarefree);
    (verdict ? good : bad) += 1;
  }
  EXPECT_GT(good, 0);
  EXPECT_GT(bad, 0);
}

TEST(Classification, IrrationalPlacesCountWithTheirDegree) {
  // Δ(1, t) has the factor t^2 + 4/27 for this II* witness.
  const SurfaceClassification cls =
      classify_surface(make_weierstrass(z2_form(4, {1, 0, 0, 0, 0}), z2_form(6, {0, 1, 0, 0, 0, 0, 0})));
  EXPECT_EQ(cls.at_infinity.type.name(), "II*");
  bool found = false;
  for (const auto& r : cls.records)
    if (r.place.degree() == 2) {
      found = true;
      EXPECT_EQ(r.place.kind, PlacePoint::Kind::irreducible_factor);
      EXPECT_EQ(r.type.name(), "I1");
    }
  EXPECT_TRUE(found);
  EXPECT_TRUE(cls.good);  // II* sits at [0:1]; the finite places are all simple
}

TEST(Families, GeneratorsRealiseTheirTypeAtInfinity) {
  std::mt19937_64 rng(16);
  for (FamilyType t : kAllFamilies)
    for (int k = 0; k < 5; ++k) {
      const SurfaceClassification cls = classify_surface(family_generator(t, random_family_parameters(t, rng)));
      EXPECT_EQ(cls.at_infinity.type, expected_fiber(t)) << to_string(t);
      EXPECT_EQ(euler_ledger(cls), 12);
    }
}

TEST(Families, ParameterErrors) {
  EXPECT_THROW(family_generator(FamilyType::II, {{"b5", 0}}), ConstraintError);
  EXPECT_THROW(family_generator(FamilyType::IIs, {{"a3", 1}, {"b1", 1}}), InvalidParams);
  EXPECT_THROW(family_generator(FamilyType::I2s, {{"t", 1}, {"a2", -3}}), InvalidParams);
  EXPECT_THROW(family_generator(FamilyType::I1s, {{"a2", -3}, {"b3", 1}}), ConstraintError);
  EXPECT_NO_THROW(family_generator(FamilyType::I1s, {{"a2", -3}, {"b3", 2}, {"a1", 1}}));
  EXPECT_THROW(parse_family_type("I5*"), ParseError);
  EXPECT_EQ(parse_family_type("IV*"), FamilyType::IVs);
}

TEST(JsonIo, RationalParsing) {
  EXPECT_EQ(parse_rational("-6/4"), mpq_class(-3, 2));
  EXPECT_EQ(parse_rational("+7"), mpq_class(7));
  for (const char* bad : {"", "1/0", "1.5", "a", "3/-4", "/2"}) EXPECT_THROW(parse_rational(bad), ParseError) << bad;
}

TEST(JsonIo, RoundTripAndErrors) {
  std::mt19937_64 rng(17);
  const WeierstrassData d = random_allowable_data(rng);
  const WeierstrassData back = parse_weierstrass_json(weierstrass_json(d).dump());
  EXPECT_EQ(back.A, d.A);
  EXPECT_EQ(back.B, d.B);
  EXPECT_THROW(parse_weierstrass_json("{"), ParseError);
  EXPECT_THROW(parse_weierstrass_json("[]"), ParseError);
  EXPECT_THROW(parse_weierstrass_json(R"({"A": {"degree": 4, "coefficients": ["1","0","0","0","0"]}})"), ParseError);
  EXPECT_THROW(parse_weierstrass_json(R"({"A": {"degree": 3, "coefficients": ["1","0","0","0"]},
                                         "B": {"degree": 6, "coefficients": ["1","0","0","0","0","0","0"]}})"),
               ParseError);
  EXPECT_THROW(read_weierstrass_file("/nonexistent/file.json"), ParseError);
}

TEST(JsonIo, DataFilesClassify) {
  const std::string dir = INSTANTON_DATA_DIR;
  const SurfaceClassification two = classify_surface(read_weierstrass_file(dir + "/two_I0star.json"));
  EXPECT_EQ(two.at_infinity.type.name(), "I0*");
  EXPECT_EQ(euler_ledger(two), 12);
  const SurfaceClassification one = classify_surface(read_weierstrass_file(dir + "/I1_star_family.json"));
  EXPECT_EQ(one.at_infinity.type.name(), "I1*");
  EXPECT_THROW(classify_surface(read_weierstrass_file(dir + "/non_allowable.json")), NotAllowableError);
}
