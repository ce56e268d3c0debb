#include "doctest.h"

#include <algorithm>
#include <functional>
#include <set>

#include "klein/exactlin.hpp"

using namespace klein;

namespace {

IntMatrix random_int(std::size_t r, std::size_t c, Rng& rng, long lo, long hi) {
  std::uniform_int_distribution<long> d(lo, hi);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

bool is_unimodular(const IntMatrix& m) {
  Int d = m.determinant();
  return d == 1 || d == -1;
}

// gcd of all k x k minors, by brute-force subset enumeration
Int determinantal_divisor(const IntMatrix& a, std::size_t k) {
  std::vector<std::size_t> rs, cs;
  Int g = 0;
  std::function<void(std::size_t, std::size_t)> pick_cols;
  std::function<void(std::size_t)> pick_rows = [&](std::size_t start) {
    if (rs.size() == k) {
      cs.clear();
      pick_cols(0, 0);
      return;
    }
    for (std::size_t i = start; i < a.rows(); ++i) {
      rs.push_back(i);
      pick_rows(i + 1);
      rs.pop_back();
    }
  };
  pick_cols = [&](std::size_t start, std::size_t) {
    if (cs.size() == k) {
      IntMatrix s(k, k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) s(i, j) = a(rs[i], cs[j]);
      Int d = s.determinant();
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      return;
    }
    for (std::size_t j = start; j < a.cols(); ++j) {
      cs.push_back(j);
      pick_cols(j + 1, 0);
      cs.pop_back();
    }
  };
  pick_rows(0);
  return g;
}

}  // namespace

TEST_CASE("smith form examples") {
  auto s = smith_form(IntMatrix::identity(3));
  CHECK(s.D == IntMatrix::identity(3));
  s = smith_form(IntMatrix::zero(2, 2));
  CHECK(s.D == IntMatrix::zero(2, 2));
  IntMatrix a{{2, 4}, {6, 8}};
  s = smith_form(a);
  CHECK(s.D == IntMatrix{{2, 0}, {0, 4}});
  CHECK(s.U * a * s.V == s.D);
}

TEST_CASE("smith form agrees with determinantal divisors") {
  Rng rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    IntMatrix a = random_int(r, c, rng, -6, 6);
    if (trial % 3 == 0) a = a * Int(2);
    auto s = smith_form(a);
    REQUIRE(s.U * a * s.V == s.D);
    CHECK(is_unimodular(s.U));
    CHECK(is_unimodular(s.V));
    CHECK(s.U * s.Uinv == IntMatrix::identity(r));
    CHECK(s.V * s.Vinv == IntMatrix::identity(c));
    auto d = s.diagonal();
    for (std::size_t i = 0; i < d.size(); ++i) {
      CHECK(d[i] >= 0);
      if (i + 1 < d.size() && sgn(d[i]) != 0) CHECK(mpz_divisible_p(d[i + 1].get_mpz_t(), d[i].get_mpz_t()));
    }
    Int prod = 1;
    for (std::size_t k = 1; k <= d.size(); ++k) {
      prod *= d[k - 1];
      CHECK(prod == determinantal_divisor(a, k));
    }
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (i != j) CHECK(sgn(s.D(i, j)) == 0);
    CHECK(smith_form(a).D == s.D);
  }
}

TEST_CASE("hnf examples") {
  CHECK(hnf(IntMatrix{{1, 0}, {0, 1}, {1, 1}}).basis() == IntMatrix::identity(2));
  ZLattice l = hnf(IntMatrix{{2, 0}, {0, 2}, {1, 1}});
  CHECK(l.basis() == IntMatrix{{1, 1}, {0, 2}});
  CHECK(hnf(IntMatrix(0, 3)).rank() == 0);

  // enumerate small combinations of the generators and compare membership
  IntMatrix gens{{2, 0}, {0, 2}, {1, 1}};
  std::set<std::pair<long, long>> generated;
  for (long x = -4; x <= 4; ++x)
    for (long y = -4; y <= 4; ++y)
      for (long z = -4; z <= 4; ++z) generated.insert({2 * x + z, 2 * y + z});
  for (long u = -3; u <= 3; ++u)
    for (long v = -3; v <= 3; ++v) {
      IntVector w{Int(u), Int(v)};
      CHECK(l.contains(w) == (generated.count({u, v}) > 0));
    }
}

TEST_CASE("hnf is idempotent and basis independent") {
  Rng rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    IntMatrix g = random_int(1 + rng() % 5, 4, rng, -5, 5);
    ZLattice l = hnf(g);
    CHECK(hnf(l.basis()) == l);
    IntMatrix mix = IntMatrix::identity(g.rows());
    for (int k = 0; k < 6; ++k) {
      std::size_t i = rng() % g.rows(), j = rng() % g.rows();
      if (i == j) continue;
      IntMatrix e = IntMatrix::identity(g.rows());
      e(i, j) = static_cast<long>(rng() % 7) - 3;
      mix = e * mix;
    }
    CHECK(hnf(mix * g) == l);
    for (std::size_t i = 0; i < g.rows(); ++i) CHECK(l.contains(g.row(i)));
  }
}

TEST_CASE("lattice operations") {
  ZLattice z2 = ZLattice::full(2);
  ZLattice two = z2.scaled(Int(2));
  auto q = quotient_invariants(z2, two);
  CHECK(q.torsion == IntVector{Int(2), Int(2)});
  CHECK(q.index == Int(4));
  q = quotient_invariants(z2, z2);
  CHECK(q.torsion.empty());
  CHECK(q.index == Int(1));
  ZLattice l1 = hnf(IntMatrix{{1, 1}, {0, 2}});
  q = quotient_invariants(l1, two);
  CHECK(q.index == Int(2));
  // coset count by enumeration in a 4x4 box of residues mod 2Z^2
  int cosets = 0;
  for (long u = 0; u < 2; ++u)
    for (long v = 0; v < 2; ++v) cosets += l1.contains(IntVector{Int(u), Int(v)}) ? 1 : 0;
  CHECK(cosets == 2);
  CHECK_THROWS_WITH(quotient_invariants(two, z2), "not a sublattice");

  ZLattice a = hnf(IntMatrix{{2, 0}, {0, 3}});
  ZLattice b = hnf(IntMatrix{{3, 0}, {0, 2}});
  CHECK(lattice_intersection(a, b) == hnf(IntMatrix{{6, 0}, {0, 6}}));
  CHECK(lattice_sum(a, b) == z2);
  CHECK(saturation(hnf(IntMatrix{{2, 4, 6}})) == hnf(IntMatrix{{1, 2, 3}}));
  auto inf = quotient_invariants(z2, hnf(IntMatrix{{2, 0}}));
  CHECK(!inf.index.has_value());
  CHECK(inf.free_rank == 1);
}

TEST_CASE("kernels") {
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    IntMatrix a = random_int(2 + rng() % 3, 2 + rng() % 3, rng, -3, 3);
    IntMatrix k = right_kernel(a);
    CHECK((a * k).is_zero());
    CHECK(k.cols() + smith_form(a).rank() == a.cols());
    IntMatrix lk = left_kernel(a);
    CHECK((lk * a).is_zero());
  }
}

TEST_CASE("lift_invertible") {
  CHECK(lift_invertible(F2Matrix::identity(3)) == IntMatrix::identity(3));
  IntMatrix sw = lift_invertible(F2Matrix{{0, 1}, {1, 0}});
  CHECK(is_unimodular(sw));
  CHECK(F2Matrix::reduce(sw) == F2Matrix{{0, 1}, {1, 0}});
  CHECK(lift_invertible(F2Matrix{{1, 1}, {0, 1}}) == IntMatrix{{1, 1}, {0, 1}});
  CHECK_THROWS_WITH(lift_invertible(F2Matrix{{1, 1}, {1, 1}}), "not invertible mod 2");

  Rng rng(3);
  int done = 0;
  while (done < 1000) {
    std::size_t n = 1 + rng() % 8;
    F2Matrix a = F2Matrix::random(n, n, rng);
    if (!a.is_invertible()) continue;
    IntMatrix l = lift_invertible(a);
    REQUIRE(F2Matrix::reduce(l) == a);
    REQUIRE(is_unimodular(l));
    ++done;
  }
}

TEST_CASE("lift_exact_sequence") {
  auto s = lift_exact_sequence(F2Matrix{{1}, {0}}, F2Matrix{{0, 1}});
  CHECK(s.alpha == IntMatrix{{1}, {0}});
  CHECK(s.beta == IntMatrix{{0, 1}});

  F2Matrix bb{{1, 1}, {0, 1}};
  s = lift_exact_sequence(F2Matrix(2, 0), bb);
  CHECK(s.beta == lift_invertible(bb));

  CHECK_THROWS_WITH(lift_exact_sequence(F2Matrix{{1}, {0}}, F2Matrix{{1, 0}}), "input sequence not exact");

  Rng rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    F2Matrix g = F2Matrix::random(4, 4, rng);
    if (!g.is_invertible()) continue;
    F2Matrix alpha = g.block(0, 0, 4, 2);
    F2Matrix beta = g.inverse().block(2, 0, 2, 4);
    auto lifted = lift_exact_sequence(alpha, beta);
    CHECK(F2Matrix::reduce(lifted.alpha) == alpha);
    CHECK(F2Matrix::reduce(lifted.beta) == beta);
    CHECK((lifted.beta * lifted.alpha).is_zero());
    for (const auto& d : smith_form(lifted.alpha).diagonal()) CHECK(d == 1);
    for (const auto& d : smith_form(lifted.beta).diagonal()) CHECK(d == 1);
  }
}

TEST_CASE("f2 linear algebra") {
  Rng rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    F2Matrix a = F2Matrix::random(1 + rng() % 6, 1 + rng() % 6, rng);
    F2Matrix n = a.nullspace();
    CHECK((a * n).is_zero());
    CHECK(n.cols() + a.rank() == a.cols());
    F2System sys(a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
      auto e = sys.add_equation();
      for (std::size_t j = 0; j < a.cols(); ++j)
        if (a.get(i, j)) sys.toggle(e, j);
    }
    auto basis = sys.nullspace();
    CHECK(basis.size() == n.cols());
    for (const auto& v : basis) {
      auto r = a * std::span<const std::uint8_t>(v);
      CHECK(std::all_of(r.begin(), r.end(), [](auto x) { return x == 0; }));
    }
    if (a.is_invertible()) CHECK(a * a.inverse() == F2Matrix::identity(a.rows()));
  }
}
