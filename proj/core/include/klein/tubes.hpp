#pragma once

// Regular lattices T^f_m and T^{lambda j}_m: constructors, the chain of
// submodules with its layer labels, syzygies, endomorphism rings and the
// action of Aut K on tube labels.

#include <optional>
#include <string>
#include <vector>

#include "klein/f2poly.hpp"
#include "klein/klein_core.hpp"
#include "klein/quiver.hpp"

namespace klein {

/// Companion matrix of f^m.
F2Matrix frobenius_matrix(F2Poly f, unsigned m);
/// m x m Jordan block with eigenvalue 1 (ones on the superdiagonal).
F2Matrix jordan_one(std::size_t m);

/// The representation a tube module is built from. Throws "invalid tube id".
LambdaRep tube_rep(const TubeLabel& label);
DimVector expected_dims(const TubeLabel& label);
TubeLabel make_label(const TubeId& id, int j, std::size_t m);

struct ChainLayer {
  std::size_t k = 0;
  std::size_t l = 0;
  std::optional<TubeLabel> label;  // identified label of M_k / M_{k+l}
};

struct TubeModule {
  TubeLabel label;
  LambdaRep rep;
  KLattice lattice;
  /// Rows of `ambient` are the basis of the lattice inside the direct sum of
  /// sign modules Z^{d_+}, where it is the preimage of the image of f_+.
  IntMatrix ambient;
  /// M_0 = M, ..., M_m = 0, as row lattices in the coordinates of `lattice`.
  std::vector<ZLattice> chain;
};

/// Lattice, ambient embedding and chain; throws "invalid tube id".
TubeModule tube_module(const TubeId& id, int j, std::size_t m);
TubeModule tube_module(const TubeLabel& label);

/// The chain (M_k) of a tube module.
std::vector<ZLattice> chain_of(const TubeModule& T);
/// Labels of all subquotients M_k / M_{k+l}.
std::vector<ChainLayer> chain_layers(const TubeModule& T);
/// Label predicted for M_k / M_{k+l}.
TubeLabel expected_layer(const TubeLabel& label, std::size_t k, std::size_t l);

/// The K-lattice L1 / L2 for invariant row lattices L2 inside L1 of a module M.
KLattice quotient_lattice(const KLattice& M, const ZLattice& L1, const ZLattice& L2);
/// The K-lattice L for an invariant row lattice L of M.
KLattice sublattice_module(const KLattice& M, const ZLattice& L);

/// Kernel of R^{d_dot} -> M. Throws "not regular".
KLattice syzygy(const KLattice& M);

/// Integer basis of Hom_K(M, N); each element acts on column vectors.
std::vector<IntMatrix> hom_lattice(const KLattice& M, const KLattice& N);
/// Same, from the integer kernel of the commutation equations.
std::vector<IntMatrix> hom_lattice_direct(const KLattice& M, const KLattice& N);

struct EndRingReport {
  bool lifted_equals_direct = false;  // End from End_Lambda vs. the stabiliser of M
  bool equals_stated = false;         // vs. the order of the closed form
  bool lift_independent = true;       // a second integer lift gives the same order
  std::size_t end_lambda_dim = 0;
  std::string detail;
  bool ok() const { return lifted_equals_direct && equals_stated && lift_independent; }
};
EndRingReport end_ring_check(const TubeModule& T);

struct CrossTubeReport {
  std::size_t generators = 0;
  std::size_t into_2N = 0;       // generators with image in 2N
  std::size_t into_2Nsharp = 0;  // generators with image in 2N#
};
/// Throws "same tube".
CrossTubeReport hom_cross_tube_check(const TubeModule& M, const TubeModule& N);

/// The module with g acting as psi(g): tau2 swaps a and b, tau3 swaps a and ab.
KLattice twist(const KLattice& M, S3Generator which);

}  // namespace klein
