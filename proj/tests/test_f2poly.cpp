#include "doctest.h"

#include "klein/f2poly.hpp"
#include "klein/tubes.hpp"

using namespace klein;

namespace {

// p(t) evaluated at a square matrix, over F2
F2Matrix eval_at(F2Poly p, const F2Matrix& a) {
  F2Matrix r(a.rows(), a.cols()), pw = F2Matrix::identity(a.rows());
  for (int i = 0; i <= p.degree(); ++i) {
    if (p.coeff(i)) r += pw;
    pw = pw * a;
  }
  return r;
}

// irreducibility by brute force: no root in F_{2^k} means nothing; use
// exhaustive products of all lower-degree monic polynomials instead
bool irreducible_by_products(F2Poly p) {
  const int d = p.degree();
  if (d < 1) return false;
  for (std::uint64_t x = 2; x < (std::uint64_t{1} << d); ++x)
    for (std::uint64_t y = 2; y < (std::uint64_t{1} << d); ++y)
      if (F2Poly(x).degree() + F2Poly(y).degree() == d && F2Poly(x) * F2Poly(y) == p) return false;
  return true;
}

}  // namespace

TEST_CASE("parsing and printing") {
  CHECK(F2Poly::parse("t^2+t+1") == F2Poly(7));
  CHECK(F2Poly::parse("111") == F2Poly(7));
  CHECK(F2Poly::parse("t^3 + t + 1").to_string() == "t^3+t+1");
  CHECK_THROWS(F2Poly::parse("t^2+x"));
  CHECK(F2Poly::from_coeffs({1, 1, 1}) == F2Poly(7));
}

TEST_CASE("arithmetic") {
  F2Poly a = F2Poly::parse("t^2+t+1"), b = F2Poly::parse("t+1");
  CHECK(a * b == F2Poly::parse("t^3+1"));
  CHECK((a * b) % b == F2Poly());
  CHECK((a * b) / b == a);
  CHECK(gcd(a * b, b * b) == b);
  CHECK(b.pow(2) == F2Poly::parse("t^2+1"));
}

TEST_CASE("irreducibles") {
  for (int d = 1; d <= 6; ++d)
    for (std::uint64_t x = std::uint64_t{1} << d; x < (std::uint64_t{2} << d); ++x)
      CHECK(F2Poly(x).is_irreducible() == irreducible_by_products(F2Poly(x)));
  // counts of monic irreducibles over F2: 2, 1, 2, 3, 6, 9
  const std::size_t counts[] = {2, 1, 2, 3, 6, 9};
  for (int d = 1; d <= 6; ++d) CHECK(irreducibles_of_degree(d).size() == counts[d - 1]);
}

TEST_CASE("companion and characteristic polynomial") {
  CHECK(frobenius_matrix(F2Poly::parse("t+1"), 1) == F2Matrix{{1}});
  CHECK(frobenius_matrix(F2Poly::parse("t^2+t+1"), 1) == F2Matrix{{0, 1}, {1, 1}});
  CHECK(frobenius_matrix(F2Poly::parse("t+1"), 2) == F2Matrix{{0, 1}, {1, 0}});
  for (std::uint64_t x = 2; x < 512; ++x) {
    F2Poly p(x);
    F2Matrix c = companion(p);
    CHECK(characteristic_polynomial(c) == p);
    CHECK(eval_at(p, c).is_zero());  // Cayley-Hamilton
  }
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + rng() % 7;
    F2Matrix m = F2Matrix::random(n, n, rng);
    F2Poly p = characteristic_polynomial(m);
    CHECK(p.degree() == static_cast<int>(n));
    CHECK(eval_at(p, m).is_zero());
    // invariant under conjugation
    F2Matrix g = F2Matrix::random(n, n, rng);
    if (g.is_invertible()) CHECK(characteristic_polynomial(g * m * g.inverse()) == p);
  }
}

TEST_CASE("irreducible power roots") {
  F2Poly f = F2Poly::parse("t^2+t+1");
  auto r = irreducible_power_root(f.pow(3));
  REQUIRE(r);
  CHECK(r->first == f);
  CHECK(r->second == 3);
  CHECK_FALSE(irreducible_power_root(f * F2Poly::parse("t+1")));
}

TEST_CASE("S3 on polynomials and tube ids") {
  F2Poly f = F2Poly::parse("t^2+t+1");
  CHECK(s3_on_polynomial(f, S3Generator::tau3) == f);
  CHECK(s3_on_polynomial(f, S3Generator::tau2) == f);
  CHECK_THROWS_WITH(s3_on_polynomial(F2Poly::t(), S3Generator::tau2), "special label required");
  CHECK_THROWS_WITH(s3_on_polynomial(F2Poly::parse("t+1"), S3Generator::tau3), "special label required");
  for (int d = 2; d <= 6; ++d)
    for (F2Poly p : irreducibles_of_degree(d))
      for (auto w : {S3Generator::tau2, S3Generator::tau3}) {
        F2Poly q = s3_on_polynomial(p, w);
        CHECK(q.is_irreducible());
        CHECK(q.degree() == d);
        CHECK(s3_on_polynomial(q, w) == p);
      }
  std::vector<TubeId> ids = {TubeId::special_point(SpecialPoint::zero), TubeId::special_point(SpecialPoint::one),
                             TubeId::special_point(SpecialPoint::infinity)};
  for (int d = 2; d <= 4; ++d)
    for (F2Poly p : irreducibles_of_degree(d)) ids.push_back(TubeId::homogeneous(p));
  for (const auto& id : ids) {
    TubeId x = id;
    for (int k = 0; k < 3; ++k) x = s3_on_tube(s3_on_tube(x, S3Generator::tau2), S3Generator::tau3);
    CHECK(x == id);
    CHECK(s3_on_tube(s3_on_tube(id, S3Generator::tau2), S3Generator::tau2) == id);
    CHECK(s3_on_tube(s3_on_tube(id, S3Generator::tau3), S3Generator::tau3) == id);
  }
  // the special points are permuted like the vertices +-, -+, --
  CHECK(s3_on_tube(TubeId::special_point(SpecialPoint::one), S3Generator::tau2).lambda == SpecialPoint::infinity);
  CHECK(s3_on_tube(TubeId::special_point(SpecialPoint::one), S3Generator::tau3).lambda == SpecialPoint::zero);
}

TEST_CASE("tube ids") {
  CHECK_THROWS_WITH(TubeId::homogeneous(F2Poly::parse("t^2+1")), "invalid tube id");
  CHECK_THROWS_WITH(TubeId::homogeneous(F2Poly::t()), "invalid tube id");
  CHECK(TubeId::parse("special:inf") == TubeId::special_point(SpecialPoint::infinity));
  CHECK(TubeId::parse("hom:t^2+t+1").to_string() == "hom:t^2+t+1");
}
