#pragma once

// Duals N = Hom(M, Q_2/Z_2) of K-lattices, truncated to Hom(M, 2^-k Z/Z):
// their cohomology, the cocycles eta_u, the dual chain of a tube module and
// canonical forms of classes on sums of such duals.

#include <optional>
#include <vector>

#include "klein/cohomology.hpp"

namespace klein {

/// Hom(M, 2^-k Z/Z) = (Z/2^k)^rank. Coordinates are those of the dual basis,
/// so g acts by the transpose of its matrix on M.
struct ColatticeLevel {
  KLattice base;
  unsigned level = 1;

  std::size_t rank() const { return base.rank(); }
  Int modulus() const;
  /// The dual lattice Hom(M, Z); N is its reduction mod 2^level.
  KLattice dual() const;
  /// Coordinates in level + 1 (multiplication by 2).
  IntVector include(const IntVector& u) const;
};

/// Throws "level must be positive".
ColatticeLevel dual_level(const KLattice& M, unsigned k);

/// H^n(K, N) at the given truncation level. With `stable` set, the image of
/// H^n(K, Dual(M)) is divided out: the inclusion into the next level
/// multiplies that part by 2, so it dies in the limit once 2^level bounds the
/// exponent.
CohomologyGroup level_cohomology(const ColatticeLevel& N, std::size_t n, bool stable = true);
/// H^n(K, DM): computed at `level` and level + 1; throws "not stabilized"
/// unless the inclusion induces an isomorphism of the stable groups. Returns
/// the group at `level`.
CohomologyGroup colattice_cohomology(const KLattice& M, std::size_t n, unsigned level = 3);
/// True when the stable H^n at `level` maps isomorphically onto level + 1.
bool stabilizes(const KLattice& M, std::size_t n, unsigned level);

/// The sublattice E of Dual(M) with N(n) = 2^(level-1) E mod 2^level:
/// E_{++} for n odd, otherwise E_{-+}, or E_{+-} in the tube at infinity.
/// Throws "not regular".
ZLattice colattice_component(const KLattice& M, std::size_t n);
/// Basis of N(n) as level vectors.
std::vector<IntVector> colattice_target(const ColatticeLevel& N, std::size_t n);
bool in_colattice_target(const ColatticeLevel& N, const IntVector& u, std::size_t n);
/// Throws "u not in N(n)".
Cochain eta(const ColatticeLevel& N, const IntVector& u, std::size_t n);
bool verify_eta_iso(const KLattice& M, std::size_t n, unsigned level = 3);

/// N_k = annihilator of M_k, k = 0..m. steps[k] holds a basis of N_k as
/// columns; N_k is a free Z/2^level module because M_k is pure.
struct DualChain {
  ColatticeLevel module;
  std::vector<IntMatrix> steps;

  bool annihilates(std::size_t k, const ZLattice& sub) const;
};
DualChain dual_chain(const TubeModule& T, unsigned level = 3);

/// Costandard data share the shape of standard data; sequences have m
/// increasing and positions 1 <= k <= m.
using CostandardData = StandardData;

/// H^n(K, DT) with the images H_k of H^n(K, N_k), stored as images[t] =
/// H_{m - t}.
Filtration cofiltration(const TubeModule& T, std::size_t n, unsigned level = 3);
/// Smallest k with e in H_k (1..m); nullopt for e = 0.
std::optional<std::size_t> cofiltration_position(const Filtration& F, const CohClass& e);
/// A fixed element of N_k(n) outside N_{k-1}, for 1 <= k <= m, whose eta
/// class sits exactly at position k. Throws "parity mismatch".
IntVector costandard_element(const TubeModule& T, std::size_t k, std::size_t n, unsigned level = 3);

SumCohomology co_sum_cohomology(const std::vector<TubeModule>& summands, std::size_t n, unsigned level = 3);
/// Normal form of e under the automorphisms of the sum of duals. The
/// witness acts on level coordinates.
CanonicalForm co_canonical_form(const SumCohomology& H, const CohClass& e, std::uint64_t seed = 0);

}  // namespace klein
