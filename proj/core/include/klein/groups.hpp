#pragma once

// Extensions of K by a K-lattice or a truncated colattice, built from
// 2-cocycles. Bar cocycles are obtained from the polynomial resolution by a
// comparison of resolutions. Also: presentations of the standard groups
// Cr(Delta) and Ch(Delta), and classification up to isomorphism.

#include <array>
#include <string>
#include <vector>

#include "klein/colattices.hpp"

namespace klein {

/// The base of an extension: Z^rank with K acting through `action`, read
/// mod `modulus` when that is nonzero.
struct BaseModule {
  KLattice action;
  Int modulus = 0;

  std::size_t rank() const { return action.rank(); }
  IntVector act(GroupElt g, const IntVector& v) const;
  IntVector reduce(IntVector v) const;
  bool equal(const IntVector& x, const IntVector& y) const;
};

/// A normalized 2-cochain of the bar resolution: gamma(g, h) for g, h in K,
/// stored at 4 g + h; zero whenever g or h is 1.
struct BarCocycle {
  std::array<IntVector, 16> table;

  static BarCocycle zero(std::size_t rank);
  const IntVector& operator()(GroupElt g, GroupElt h) const { return table[4 * g.index() + h.index()]; }
  IntVector& at(GroupElt g, GroupElt h) { return table[4 * g.index() + h.index()]; }
  bool normalized() const;
};

/// g gamma(h, k) - gamma(gh, k) + gamma(g, hk) - gamma(g, h) = 0 everywhere.
bool is_bar_cocycle(const BaseModule& M, const BarCocycle& gamma);

/// Differential of the normalized bar resolution B_n -> B_{n-1}. B_n is
/// free on the 3^n tuples of nonidentity elements; coordinate 4 t + g is the
/// group element g times tuple t, tuples numbered in base 3 with the first
/// entry most significant and a, b, ab as digits 0, 1, 2.
IntMatrix bar_differential(std::size_t n);

/// Chain maps between the bar and polynomial resolutions lifting the
/// identity of Z, as integer matrices in the coordinates above and those of
/// resolution_matrix.
struct ComparisonMaps {
  std::vector<IntMatrix> bar_to_poly;  // B_n -> P_n
  std::vector<IntMatrix> poly_to_bar;  // P_n -> B_n
};
/// Throws "no solution" if some degree cannot be lifted.
ComparisonMaps comparison_map(std::size_t max_degree = 2);
const ComparisonMaps& default_comparison();

/// gamma o u for a polynomial 2-cochain gamma.
BarCocycle bar_cocycle(const BaseModule& M, const Cochain& g, const ComparisonMaps& maps = default_comparison());
/// gamma o v for a bar 2-cochain.
Cochain polynomial_cochain(const BaseModule& M, const BarCocycle& gamma,
                           const ComparisonMaps& maps = default_comparison());

/// M x K with (u, g)(v, h) = (u + g v + gamma(g, h), gh).
struct ExtensionGroup {
  BaseModule base;
  BarCocycle gamma;

  struct Element {
    IntVector u;
    GroupElt g;
  };

  Element identity() const;
  Element embed(const IntVector& u) const { return {base.reduce(u), GroupElt{}}; }
  Element lift(GroupElt g) const { return {IntVector(base.rank()), g}; }
  Element multiply(const Element& x, const Element& y) const;
  Element inverse(const Element& x) const;
  bool equal(const Element& x, const Element& y) const;
  /// (xy)z = x(yz) for every triple of K-parts, M-parts drawn from rng.
  bool associative(Rng& rng, int rounds = 1) const;
};

ExtensionGroup extension_from_cochain(const BaseModule& M, const Cochain& g);
/// The extension of K by M for a class in H^2(K, M).
ExtensionGroup extension_from_class(const KLattice& M, const CohClass& e);

/// Generators a, b over the base, with the conjugation, commutation and
/// square relations. Numeric data is kept for mechanical checks.
struct GroupPresentation {
  std::vector<std::string> generators;
  std::vector<std::string> relations;
  std::string base;
  std::vector<TubeLabel> delta_summands;
  std::vector<TubeLabel> rest_summands;
  BaseModule module;
  unsigned level = 0;  // truncation level of a colattice base, 0 for lattices
  IntVector a_square;
  IntVector b_square;
  Cochain cocycle;  // polynomial 2-cocycle of the extension

  std::string to_text() const;
};

/// Cr(Delta), extended by M_0 = sum of `rest` on which it acts through K.
/// Throws "odd special data in degree 2".
GroupPresentation cr_presentation(const StandardData& delta, const std::vector<TubeLabel>& rest = {});
/// Ch(Delta) over N_Delta + N_0 at the given truncation level; base
/// elements are written as dyadic fractions. Throws "odd special data in
/// degree 2".
GroupPresentation ch_presentation(const CostandardData& delta, const std::vector<TubeLabel>& rest = {},
                                  unsigned level = 3);
ExtensionGroup extension_of(const GroupPresentation& p);
/// Checks every relation on the generators and on a basis of the base.
bool satisfies_presentation(const ExtensionGroup& G, const GroupPresentation& p);

/// At least two of the eigencomponents +-, -+, -- are nonzero.
bool is_crystallographic(const KLattice& M);

/// The six automorphisms of K as words in tau2, tau3.
std::vector<S3Word> s3_elements();

struct Classification {
  bool isomorphic = false;
  S3Word psi;
  StandardData first;
  StandardData second;
  std::vector<TubeLabel> first_rest;
  std::vector<TubeLabel> second_rest;
};
/// Extensions given by classes on sums of tube modules (lattices, or their
/// duals with `dual` set). Isomorphic iff some psi carries the data and the
/// complementary summands of the first onto those of the second.
Classification classify(const std::vector<TubeModule>& s1, const CohClass& e1, const std::vector<TubeModule>& s2,
                        const CohClass& e2, bool dual = false);

}  // namespace klein
