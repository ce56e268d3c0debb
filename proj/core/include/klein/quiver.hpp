#pragma once

// Representations of the star quiver with centre "dot" and four sign
// vertices over F_2, the functor from A-lattices to them and its inverse,
// morphisms, decomposition and tube identification.

#include <array>
#include <optional>
#include <vector>

#include "klein/exactlin.hpp"
#include "klein/f2poly.hpp"
#include "klein/klein_core.hpp"

namespace klein {

struct LambdaRep {
  std::size_t dot = 0;
  std::array<F2Matrix, 4> f;  // f[s] is d_s x dot

  LambdaRep() = default;
  LambdaRep(std::size_t dot, std::array<F2Matrix, 4> f);

  DimVector dims() const;
  std::size_t dim(std::size_t s) const { return f[s].rows(); }
  /// The map into the direct sum of the sign vertices.
  F2Matrix stacked() const;

  friend bool operator==(const LambdaRep&, const LambdaRep&) = default;
};

/// Vertex maps: index 0 is the centre, 1 + s the sign vertex s.
struct RepMorphism {
  std::array<F2Matrix, 5> v;
};

LambdaRep direct_sum(const LambdaRep& x, const LambdaRep& y);
/// Exchanges the maps into sign vertices s and t.
LambdaRep swap_vertices(const LambdaRep& V, std::size_t s, std::size_t t);
/// Change of basis: new f_s = P_s^{-1} f_s P_dot.
LambdaRep transport(const LambdaRep& V, const std::array<F2Matrix, 5>& P);
bool is_morphism(const RepMorphism& phi, const LambdaRep& V, const LambdaRep& W);
RepMorphism compose(const RepMorphism& psi, const RepMorphism& phi);
RepMorphism identity_morphism(const LambdaRep& V);
bool is_iso(const RepMorphism& phi);

bool in_category_R(const LambdaRep& V);
/// A random object of R with 1 <= d_dot <= max_dot, by rejection sampling.
LambdaRep random_rep_in_R(std::size_t max_dot, Rng& rng);

/// The representation of an A-lattice together with the coordinates used:
/// the sharp frame of M and the chosen basis of M / 2M# (rows, in stacked
/// sharp coordinates mod 2).
struct PhiData {
  LambdaRep rep;
  SharpFrame frame;
  F2Matrix dot_basis;  // dot x d_+
};

PhiData phi_data(const KLattice& M);
LambdaRep phi(const KLattice& M);
/// The induced morphism of representations of an equivariant map psi: M -> N
/// (psi acts on column vectors).
RepMorphism phi_of_morphism(const IntMatrix& psi, const PhiData& M, const PhiData& N);

/// Throws "not in category R".
KLattice lattice_of(const LambdaRep& V);
/// Also returns the basis (rows) of the lattice inside the direct sum of
/// sign modules Z^{d_+} whose reduction is the image of f_+.
KLattice lattice_of(const LambdaRep& V, IntMatrix& ambient_basis);

std::vector<RepMorphism> hom_reps(const LambdaRep& V, const LambdaRep& W);
/// An equivariant integer map M -> N inducing phi; throws
/// "morphism incompatible with representations".
IntMatrix lift_morphism(const RepMorphism& phi, const PhiData& M, const PhiData& N);
IntMatrix lift_morphism(const RepMorphism& phi, const KLattice& M, const KLattice& N);
bool is_equivariant(const IntMatrix& psi, const KLattice& M, const KLattice& N);

/// A direct summand: its representation and the split inclusion/projection.
struct Piece {
  LambdaRep rep;
  RepMorphism incl;  // rep -> V
  RepMorphism proj;  // V -> rep
};

/// Indecomposable summands, sorted by (dims, label).
std::vector<Piece> decompose(const LambdaRep& V, Rng& rng);
std::vector<Piece> decompose(const LambdaRep& V, std::uint64_t seed = 0);

struct SummandCount {
  LambdaRep rep;
  std::optional<TubeLabel> label;
  std::size_t multiplicity = 0;
};
/// Indecomposable summands up to isomorphism with multiplicities.
std::vector<SummandCount> decompose_with_multiplicity(const LambdaRep& V, std::uint64_t seed = 0);

/// True if the endomorphism ring looks local: 64 random elements are all
/// nilpotent or invertible.
bool is_indecomposable(const LambdaRep& V, Rng& rng);

std::optional<RepMorphism> find_isomorphism(const LambdaRep& V, const LambdaRep& W, Rng& rng);
bool are_isomorphic(const LambdaRep& V, const LambdaRep& W, std::uint64_t seed = 0);
bool lattices_isomorphic(const KLattice& M, const KLattice& N, std::uint64_t seed = 0);

/// The six simple regular representations of the special tubes.
LambdaRep special_simple(SpecialPoint p, int j);

/// nullopt for indecomposables outside the tubes.
std::optional<TubeLabel> identify_tube(const LambdaRep& V);

/// A lattice split into indecomposable summands M = (+) M_i.
struct LatticePiece {
  KLattice lattice;
  std::optional<TubeLabel> label;
  IntMatrix incl;  // n x n_i, columns span M_i inside M
  IntMatrix proj;  // n_i x n
};
std::vector<LatticePiece> split_lattice(const KLattice& M, std::uint64_t seed = 0);

}  // namespace klein
