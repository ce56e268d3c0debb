#include "doctest.h"

#include <map>
#include <set>

#include "klein/cohomology.hpp"

using namespace klein;

namespace {

const TubeId kOne = TubeId::special_point(SpecialPoint::one);
const TubeId kZero = TubeId::special_point(SpecialPoint::zero);
const TubeId kInf = TubeId::special_point(SpecialPoint::infinity);
TubeId hom(const char* f) { return TubeId::homogeneous(F2Poly::parse(f)); }

std::vector<TubeLabel> sweep(std::size_t max_m) {
  std::vector<TubeLabel> out;
  for (std::size_t m = 1; m <= max_m; ++m) out.push_back({hom("t^2+t+1"), 0, m});
  for (auto id : {kZero, kOne, kInf})
    for (int j : {1, 2})
      for (std::size_t m = 1; m <= max_m; ++m) out.push_back({id, j, m});
  return out;
}

GroupRingElt elt(long one, long a, long b, long ab) {
  GroupRingElt r;
  r.c = {Int(one), Int(a), Int(b), Int(ab)};
  return r;
}

Cochain random_cochain(std::size_t n, std::size_t rank, Rng& rng) {
  Cochain g = Cochain::zero(n, rank);
  for (auto& v : g.values)
    for (auto& x : v) x = static_cast<long>(rng() % 7) - 3;
  return g;
}

std::vector<TubeModule> modules(const std::vector<TubeLabel>& ls) {
  std::vector<TubeModule> out;
  for (const auto& l : ls) out.push_back(tube_module(l));
  return out;
}

// Brute-force comparison of canonical-form fibres with orbits.
void check_fibres_are_orbits(const std::vector<TubeLabel>& ls, std::size_t n) {
  SumCohomology H = sum_cohomology(modules(ls), n);
  REQUIRE(H.class_length() <= 8);
  auto orbit = orbit_partition(H, automorphism_family(H));
  std::map<std::size_t, std::set<std::string>> forms_of_orbit;
  std::map<std::string, std::set<std::size_t>> orbits_of_form;
  for (std::size_t x = 0; x < orbit.size(); ++x) {
    CanonicalForm cf = canonical_form(H, class_from_index(H, x));
    forms_of_orbit[orbit[x]].insert(cf.data.to_string());
    orbits_of_form[cf.data.to_string()].insert(orbit[x]);
  }
  for (const auto& [o, fs] : forms_of_orbit) CHECK(fs.size() == 1);
  for (const auto& [f, os] : orbits_of_form) CHECK(os.size() == 1);
}

}  // namespace

TEST_CASE("the resolution") {
  RMatrix d1 = resolution_differential(1);
  // d(y) = (b - 1), d(x) = (a - 1)
  CHECK(d1[0][0] == elt(-1, 0, 1, 0));
  CHECK(d1[1][0] == elt(-1, 1, 0, 0));
  RMatrix d2 = resolution_differential(2);
  CHECK(d2[2][1] == elt(1, 1, 0, 0));  // d(x^2) = (a + 1) x
  CHECK(d2[2][0].is_zero());
  for (std::size_t n = 2; n <= 6; ++n) CHECK((resolution_matrix(n - 1) * resolution_matrix(n)).is_zero());
  // exact in positive degrees, with cokernel of d_1 equal to Z
  for (std::size_t n = 1; n <= 5; ++n) {
    IntMatrix K = right_kernel(resolution_matrix(n));
    ZLattice ker = ZLattice::from_generators(K.transpose());
    ZLattice img = ZLattice::from_generators(resolution_matrix(n + 1).transpose());
    CHECK(ker == img);
  }
  QuotientInvariants q = quotient_invariants(ZLattice::full(4), ZLattice::from_generators(resolution_matrix(1).transpose()));
  CHECK(q.free_rank == 1);
  CHECK(q.torsion.empty());
}

TEST_CASE("coboundaries") {
  KLattice Z = KLattice::trivial(1);
  CHECK(coboundary(Cochain::zero(2, 1), Z).is_zero());
  // gamma(y) = 0, gamma(x) = 1 on the trivial module
  Cochain g{1, {{Int(0)}, {Int(1)}}};
  Cochain dg = coboundary(g, Z);
  REQUIRE(dg.values.size() == 3);
  CHECK(dg.values[0][0] == 0);
  CHECK(dg.values[1][0] == 0);
  CHECK(dg.values[2][0] == 2);
  CHECK_THROWS_WITH(coboundary(Cochain{1, {{Int(0)}}}, Z), "dimension mismatch");

  Rng rng(4);
  std::vector<KLattice> menu = {KLattice::regular(), KLattice::trivial(2), tube_module(kOne, 1, 3).lattice,
                                tube_module(hom("t^2+t+1"), 0, 1).lattice,
                                direct_sum(KLattice::sign_module(kSignPairs[3]), tube_module(kInf, 2, 2).lattice)};
  for (int trial = 0; trial < 100; ++trial) {
    const KLattice& M = menu[trial % menu.size()];
    const std::size_t n = 1 + rng() % 4;
    Cochain c = random_cochain(n, M.rank(), rng);
    Cochain d = coboundary(c, M);
    CHECK(coboundary(d, M).is_zero());
    // the displayed formula, written out
    for (std::size_t k = 0; k <= n + 1; ++k) {
      IntVector want(M.rank());
      const int sk = k % 2 ? -1 : 1, sl = (n + 1 - k) % 2 ? -1 : 1;
      if (k >= 1) {
        IntVector t = M.a() * c.values[k - 1];
        for (std::size_t i = 0; i < want.size(); ++i) want[i] += t[i] + sk * c.values[k - 1][i];
      }
      if (k <= n) {
        IntVector t = M.b() * c.values[k];
        for (std::size_t i = 0; i < want.size(); ++i) want[i] += sk * (t[i] + sl * c.values[k][i]);
      }
      CHECK(d.values[k] == want);
    }
  }
}

TEST_CASE("cohomology groups") {
  auto orders = [](const KLattice& M, std::size_t n) { return cohomology_group(M, n).divisors; };
  // trivial coefficients: 0, (Z/2)^2, Z/2, (Z/2)^3
  CHECK(orders(KLattice::trivial(1), 1).empty());
  CHECK(orders(KLattice::trivial(1), 2) == IntVector{2, 2});
  CHECK(orders(KLattice::trivial(1), 3) == IntVector{2});
  CHECK(orders(KLattice::trivial(1), 4) == IntVector{2, 2, 2});
  // free module
  for (std::size_t n = 1; n <= 4; ++n) CHECK(orders(KLattice::regular(), n).empty());
  CHECK_THROWS_WITH(cohomology_group(KLattice::trivial(1), 0), "degree must be positive");
  CHECK(orders(tube_module(kOne, 1, 1).lattice, 1).empty());
  for (std::size_t m = 1; m <= 2; ++m)
    for (std::size_t n = 1; n <= 4; ++n) CHECK(cohomology_group(tube_module(hom("t^2+t+1"), 0, m).lattice, n).log2_order() == 2 * m);

  // exponent divides 4, and 2 for regular lattices; periodicity; cocycle generators
  std::vector<KLattice> menu = {KLattice::trivial(1), KLattice::sign_module(kSignPairs[1], 2),
                                direct_sum(KLattice::trivial(1), KLattice::regular())};
  for (const auto& L : sweep(3)) menu.push_back(tube_module(L).lattice);
  for (const auto& M : menu) {
    bool regular = M.rank() != 1 && !(M == direct_sum(KLattice::trivial(1), KLattice::regular())) &&
                   !(M == KLattice::sign_module(kSignPairs[1], 2));
    for (std::size_t n = 1; n <= 3; ++n) {
      CohomologyGroup H = cohomology_group(M, n);
      for (const auto& d : H.divisors) {
        CHECK((d == 2 || d == 4));
        if (regular) CHECK(d == 2);
      }
      if (regular) CHECK(H.log2_order() == cohomology_group(M, n + 2).log2_order());
      for (std::size_t i = 0; i < H.generators.size(); ++i) {
        CohClass want = H.zero();
        want[i] = 1;
        CHECK(H.class_of(H.generators[i]) == want);
      }
      Rng rng(n);
      Cochain b = coboundary(random_cochain(n - 1, M.rank(), rng), M);
      CHECK(H.is_zero(H.class_of(b)));
      CHECK_THROWS_WITH(H.class_of(Cochain{n, std::vector<IntVector>(n + 1, IntVector(M.rank(), 1))}),
                        "not a cocycle");
    }
  }
  // additivity
  KLattice A = tube_module(kOne, 1, 3).lattice, B = tube_module(hom("t^2+t+1"), 0, 1).lattice;
  for (std::size_t n = 1; n <= 2; ++n)
    CHECK(cohomology_group(direct_sum(A, B), n).log2_order() ==
          cohomology_group(A, n).log2_order() + cohomology_group(B, n).log2_order());
}

TEST_CASE("target components and xi") {
  CHECK(target_component(tube_module(hom("t^2+t+1"), 0, 1), 2).rank() == 2);
  CHECK(target_component(tube_module(kInf, 1, 1).lattice, 1) ==
        eigencomponent(tube_module(kInf, 1, 1).lattice, kSignPairs[1]));
  CHECK(target_component(tube_module(kOne, 1, 1), 1).rank() == 0);
  CHECK_THROWS_WITH(target_component(KLattice::trivial(1), 1), "not regular");
  CHECK_THROWS_WITH(target_component(direct_sum(tube_module(kOne, 1, 1).lattice, tube_module(kOne, 1, 1).lattice), 1),
                    "not regular");

  TubeModule T = tube_module(hom("t^2+t+1"), 0, 1);
  IntVector v = target_component(T, 2).basis().row(0);
  Cochain x = xi(T, v, 2);
  CHECK(x.values[2] == v);
  CHECK(x.values[0] == IntVector(v.size()));
  CHECK(coboundary(x, T.lattice).is_zero());
  CHECK_THROWS_WITH(xi(T, IntVector(v.size(), 1), 2), "v not in M(n)");
  CHECK(xi(T, IntVector(v.size()), 2).is_zero());

  TubeModule I = tube_module(kInf, 2, 3);
  IntVector w = target_component(I, 1).basis().row(0);
  CHECK(xi(I, w, 1).values[0] == w);
  CHECK(xi(I.lattice, w, 1) == xi(I, w, 1));

  // T^{1,1}_1, n = 2: one generator with nonzero class
  TubeModule S = tube_module(kOne, 1, 1);
  CohomologyGroup H = cohomology_group(S.lattice, 2);
  CHECK(H.divisors == IntVector{2});
  CHECK(!H.is_zero(H.class_of(xi(S, target_component(S, 2).basis().row(0), 2))));

  // linearity: xi_{u+v} and xi_u + xi_v have the same class
  TubeModule F = tube_module(hom("t^2+t+1"), 0, 2);
  ZLattice t1 = target_component(F, 1);
  CohomologyGroup H1 = cohomology_group(F.lattice, 1);
  IntVector u = t1.basis().row(0), u2 = t1.basis().row(1), sum(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) sum[i] = u[i] + 3 * u2[i];
  CohClass cs = H1.class_of(xi(F, sum, 1)), c1 = H1.class_of(xi(F, u, 1)), c2 = H1.class_of(xi(F, u2, 1));
  for (std::size_t i = 0; i < cs.size(); ++i) c1[i] += 3 * c2[i];
  CHECK(cs == H1.reduce(c1));

  for (const auto& L : sweep(3))
    for (std::size_t n = 1; n <= 4; ++n) {
      CAPTURE(L.to_string());
      CAPTURE(n);
      TubeModule M = tube_module(L);
      CHECK(verify_xi_iso(M.lattice, n));
      CHECK(cohomology_group(M.lattice, n).log2_order() == target_component(M, n).rank());
    }
  CHECK(verify_xi_iso(tube_module(hom("t^3+t+1"), 0, 1).lattice, 2));
}

TEST_CASE("filtration positions") {
  TubeModule T = tube_module(hom("t^2+t+1"), 0, 2);
  Filtration F = filtration(T, 1);
  CHECK_FALSE(filtration_position(F, F.group.zero()));
  CHECK(filtration_position(F, F.group.class_of(xi(T, standard_element(T, 0, 1), 1))) == std::optional<std::size_t>(0));
  CHECK(filtration_position(T, F.group.class_of(xi(T, standard_element(T, 1, 1), 1)), 1) ==
        std::optional<std::size_t>(1));

  for (const auto& L : sweep(4))
    for (std::size_t n = 1; n <= 2; ++n) {
      CAPTURE(L.to_string());
      CAPTURE(n);
      TubeModule M = tube_module(L);
      Filtration G = filtration(M, n);
      REQUIRE(G.images.size() == L.m + 1);
      for (std::size_t k = 0; k < L.m; ++k) {
        // H_k is spanned by xi over M_k(n)
        ZLattice Mk = lattice_intersection(M.chain[k], target_component(M, n));
        F2Matrix span(G.group.divisors.size(), Mk.rank());
        for (std::size_t i = 0; i < Mk.rank(); ++i) {
          CohClass c = G.group.class_of(xi(M, Mk.basis().row(i), n));
          for (std::size_t t = 0; t < c.size(); ++t) span.set(t, i, c[t] == 1);
        }
        CHECK(span.rank() == G.images[k].cols());
        CHECK(hstack(span, G.images[k]).rank() == span.rank());
        // E_k is nonempty exactly when the layer M_k / M_{k+1} carries degree-n classes
        TubeLabel layer = expected_layer(L, k, 1);
        bool carries = !L.id.special || (n % 2 == 0) == (layer.j == 1);
        CHECK(position_admissible(M, k, n) == carries);
        CHECK(G.images[k].cols() - G.images[k + 1].cols() == (carries ? target_component(tube_module({L.id, layer.j, 1}), n).rank() : 0));
        if (carries) {
          CohClass c = G.group.class_of(xi(M, standard_element(M, k, n), n));
          CHECK(filtration_position(G, c) == std::optional<std::size_t>(k));
        } else {
          CHECK_THROWS_WITH(standard_element(M, k, n), "parity mismatch");
        }
      }
    }
}

TEST_CASE("standard sequence rules") {
  CHECK(satisfies_sequence_rules({{0, 3, 2}, {0, 1, 0}}, false) == false);  // 2 < 0 + 2 fails
  CHECK(satisfies_sequence_rules({{0, 4, 2}, {0, 1, 0}}, false));
  CHECK_FALSE(satisfies_sequence_rules({{0, 2, 1}, {0, 2, 0}}, false));
  CHECK_FALSE(satisfies_sequence_rules({{0, 2, 2}}, false));
  CHECK(satisfies_sequence_rules({{0, 2, 1}}, false));
}

TEST_CASE("canonical forms") {
  // zero class
  {
    SumCohomology H = sum_cohomology(modules({{hom("t^2+t+1"), 0, 2}, {kOne, 1, 1}}), 2);
    CanonicalForm cf = canonical_form(H, CohClass(H.class_length(), 0));
    CHECK(cf.data.empty());
    CHECK(cf.delta.empty());
    CHECK(cf.rest.size() == 2);
  }
  // single summands: sigma = [(m, k)]
  for (std::size_t k = 0; k < 3; ++k) {
    TubeModule T = tube_module(hom("t^2+t+1"), 0, 3);
    SumCohomology H = sum_cohomology({T}, 1);
    CohClass e = H.parts[0].group.class_of(xi(T, standard_element(T, k, 1), 1));
    CanonicalForm cf = canonical_form(H, e);
    REQUIRE(cf.data.tubes.size() == 1);
    CHECK(cf.data.tubes[0].second == std::vector<StandardEntry>{{0, 3, k}});
    CHECK(cf.data.parity == "none");
  }
  // every class on a few sums: standard data, witness, idempotence
  std::vector<std::pair<std::vector<TubeLabel>, std::size_t>> cases = {
      {{{hom("t^2+t+1"), 0, 2}, {hom("t^2+t+1"), 0, 1}}, 1},
      {{{kOne, 1, 4}, {kOne, 2, 2}, {kOne, 1, 1}}, 2},
      {{{kInf, 1, 3}, {kInf, 2, 3}, {kInf, 2, 2}, {kZero, 1, 2}}, 1},
      {{{kOne, 1, 5}, {kOne, 2, 4}, {kOne, 1, 3}, {kOne, 1, 1}}, 2}};
  for (const auto& [ls, n] : cases) {
    SumCohomology H = sum_cohomology(modules(ls), n);
    for (std::size_t x = 0; x < (std::size_t{1} << H.class_length()); ++x) {
      CohClass e = class_from_index(H, x);
      CanonicalForm cf = canonical_form(H, e);
      for (const auto& [id, seq] : cf.data.tubes) {
        CHECK(satisfies_sequence_rules(seq, false));
        for (const auto& s : seq)
          if (id.special) CHECK((s.k + s.j) % 2 == (n % 2 == 0 ? 1u : 0u));
      }
      if (!cf.data.empty() && ls[0].id.special) CHECK(cf.data.parity == (n % 2 ? "odd" : "even"));
      CHECK(is_equivariant(cf.witness, H.total(), H.total()));
      CHECK(mpz_odd_p(cf.witness.determinant().get_mpz_t()));
      CHECK(canonical_form(H, cf.image).data == cf.data);
      CHECK(cf.delta.size() + cf.rest.size() == ls.size());
    }
  }
}

TEST_CASE("canonical form fibres are the orbits") {
  check_fibres_are_orbits({{hom("t^2+t+1"), 0, 2}, {hom("t^2+t+1"), 0, 1}}, 1);
  check_fibres_are_orbits({{hom("t^2+t+1"), 0, 3}}, 2);
  check_fibres_are_orbits({{kOne, 1, 3}, {kOne, 1, 2}, {kOne, 2, 1}}, 1);
  check_fibres_are_orbits({{kOne, 1, 4}, {kOne, 2, 2}, {kOne, 1, 1}}, 2);
  check_fibres_are_orbits({{kInf, 1, 3}, {kInf, 2, 3}, {kInf, 2, 2}, {kOne, 1, 2}}, 1);
  check_fibres_are_orbits({{kZero, 1, 5}, {kZero, 2, 4}, {kZero, 1, 3}, {kZero, 1, 1}}, 2);
}

TEST_CASE("canonical forms are invariant under automorphisms") {
  for (std::size_t n : {1, 2}) {
    SumCohomology H = sum_cohomology(modules({{kOne, 1, 4}, {kOne, 2, 3}, {kOne, 1, 2}, {kOne, 2, 1}}), n);
    auto family = automorphism_family(H, 7);
    std::vector<F2Matrix> action;
    for (const auto& g : family) action.push_back(H.push_matrix(g));
    Rng rng(n);
    std::map<std::size_t, StandardData> memo;
    for (int trial = 0; trial < 500; ++trial) {
      std::size_t x = rng() % (std::size_t{1} << H.class_length());
      CohClass e = class_from_index(H, x);
      if (!memo.count(x)) memo[x] = canonical_form(H, e).data;
      // a product of three generators, applied to e
      std::vector<std::uint8_t> bits(e.size());
      for (std::size_t t = 0; t < e.size(); ++t) bits[t] = e[t] == 1;
      for (int s = 0; s < 3; ++s) bits = action[rng() % action.size()] * std::span<const std::uint8_t>(bits);
      std::size_t y = 0;
      for (std::size_t t = 0; t < bits.size(); ++t)
        if (bits[t]) y |= std::size_t{1} << t;
      if (!memo.count(y)) memo[y] = canonical_form(H, class_from_index(H, y)).data;
      CHECK(memo[x] == memo[y]);
    }
  }
}

TEST_CASE("automorphisms of K act on classes and data") {
  std::vector<TubeLabel> ls = {{kOne, 1, 3}, {kOne, 2, 2}, {hom("t^3+t+1"), 0, 1}};
  auto summands = modules(ls);
  for (std::size_t n : {1, 2}) {
    SumCohomology H = sum_cohomology(summands, n);
    Rng rng(n);
    for (int trial = 0; trial < 8; ++trial) {
      CohClass e = class_from_index(H, rng() % (std::size_t{1} << H.class_length()));
      CanonicalForm cf = canonical_form(H, e);
      Cochain g = H.representative(e);
      // psi = id
      TwistedClass same = apply_group_automorphism({}, summands, g);
      CHECK(same.cocycle == g);
      for (S3Word psi : {S3Word{S3Generator::tau2}, S3Word{S3Generator::tau3},
                         S3Word{S3Generator::tau2, S3Generator::tau3}}) {
        CAPTURE(to_string(psi));
        TwistedClass tw = apply_group_automorphism(psi, summands, g);
        SumCohomology Ht = sum_cohomology(tw.summands, n);
        CohClass et = Ht.class_of(tw.cocycle);
        StandardData want = cf.data;
        for (auto w : psi) want = apply_s3(want, w);
        CHECK(canonical_form(Ht, et).data == want);
        for (std::size_t i = 0; i < tw.summands.size(); ++i)
          CHECK(identify_tube(phi(tw.summands[i].lattice)) == std::optional<TubeLabel>(tw.summands[i].label));
      }
    }
  }
  // the computed direction of the special points
  TubeModule S = tube_module(kOne, 1, 1);
  CHECK(twist_module(S, S3Generator::tau2).label.id == kInf);
  CHECK(twist_module(S, S3Generator::tau3).label.id == kZero);
  CHECK(twist_module(tube_module(hom("t^2+t+1"), 0, 1), S3Generator::tau3).label.id == hom("t^2+t+1"));
  // twisting twice by an involution returns the class
  TubeModule T = tube_module(kOne, 1, 2);
  CohomologyGroup H = cohomology_group(T.lattice, 2);
  for (const auto& gen : H.generators) {
    Cochain back = twist_cochain(twist_cochain(gen, T.lattice, S3Generator::tau3),
                                 twist(T.lattice, S3Generator::tau3), S3Generator::tau3);
    CHECK(H.class_of(back) == H.class_of(gen));
  }
}
