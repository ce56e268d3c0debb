#pragma once

// H^n(K, M) from the periodic polynomial resolution of Z over ZK, the
// cocycles xi_v, the filtration of H^n(K, T) coming from the chain of a
// tube module, and canonical forms of classes on sums of tube modules.

#include <optional>
#include <string>
#include <vector>

#include "klein/klein_core.hpp"
#include "klein/tubes.hpp"

namespace klein {

/// An element of ZK; c[i + 2j] is the coefficient of a^i b^j.
struct GroupRingElt {
  std::array<Int, 4> c{};

  static GroupRingElt of(GroupElt g, long coeff = 1);
  bool is_zero() const;
  friend GroupRingElt operator+(const GroupRingElt& x, const GroupRingElt& y);
  friend GroupRingElt operator*(const GroupRingElt& x, const GroupRingElt& y);
  friend bool operator==(const GroupRingElt&, const GroupRingElt&) = default;
};

/// Matrix by which r acts on M.
IntMatrix act(const KLattice& M, const GroupRingElt& r);
/// The ring automorphism of ZK induced by an automorphism of K.
GroupRingElt apply_s3(const GroupRingElt& r, S3Generator which);
GroupElt apply_s3(GroupElt g, S3Generator which);

/// d : P_n -> P_{n-1}. Entry [k][k'] is the coefficient of x^k' y^(n-1-k')
/// in d(x^k y^(n-k)). P_n is free of rank n + 1.
using RMatrix = std::vector<std::vector<GroupRingElt>>;
RMatrix resolution_differential(std::size_t n);
/// d_n as an integer matrix on Z^{4(n+1)} -> Z^{4n}; coordinate 4k + g is
/// the group element g times x^k y^(n-k).
IntMatrix resolution_matrix(std::size_t n);

/// An n-cochain; values[j] = gamma(x^j y^(n-j)).
struct Cochain {
  std::size_t n = 0;
  std::vector<IntVector> values;

  static Cochain zero(std::size_t n, std::size_t rank);
  static Cochain from_flat(std::size_t n, std::size_t rank, std::span<const Int> v);
  IntVector flat() const;
  bool is_zero() const;
  friend bool operator==(const Cochain&, const Cochain&) = default;
};

/// C^n -> C^{n+1}, acting on flattened cochains.
IntMatrix coboundary_matrix(const KLattice& M, std::size_t n);
/// Throws "dimension mismatch".
Cochain coboundary(const Cochain& g, const KLattice& M);

/// Coordinates of a class in Z/d_1 x ... x Z/d_r.
using CohClass = IntVector;

struct CohomologyGroup {
  std::size_t n = 0;
  std::size_t rank = 0;
  IntVector divisors;               // all > 1
  std::vector<Cochain> generators;  // cocycles, one per divisor
  IntMatrix projection;             // cocycle -> denominator * coordinates
  IntMatrix cocycle_test;           // the coboundary C^n -> C^{n+1}
  /// Coefficients are read mod `modulus` when it is nonzero.
  Int modulus = 0;
  Int denominator = 1;

  /// Throws "not a cocycle".
  CohClass class_of(const Cochain& g) const;
  Cochain representative(const CohClass& c) const;
  CohClass reduce(CohClass c) const;
  CohClass zero() const { return CohClass(divisors.size(), 0); }
  bool is_zero(const CohClass& c) const;
  /// log2 of the order; throws unless every divisor is a power of 2.
  std::size_t log2_order() const;
  bool elementary() const;  // every divisor is 2
};

/// Throws "degree must be positive" for n = 0.
CohomologyGroup cohomology_group(const KLattice& M, std::size_t n);

/// True when M is an indecomposable regular lattice in the tube at infinity;
/// throws "not regular" when M is not indecomposable regular.
bool in_infinity_tube(const KLattice& M);
/// The eigencomponent M(n): M_{++} for n even, otherwise M_{-+}, or M_{+-}
/// in the tube at infinity. Throws "not regular".
ZLattice target_component(const KLattice& M, std::size_t n);
ZLattice target_component(const TubeModule& T, std::size_t n);
/// Position of the value of xi_v: x^n, or y^n in the tube at infinity.
std::size_t xi_slot(bool infinity, std::size_t n);
/// Throws "v not in M(n)".
Cochain xi(const KLattice& M, const IntVector& v, std::size_t n);
Cochain xi(const TubeModule& T, const IntVector& v, std::size_t n);
/// The classes of xi over a basis of M(n) form a basis of H^n.
bool verify_xi_iso(const KLattice& M, std::size_t n);

/// H^n(K, T) together with the images H^n_k of H^n(K, T_k), as F_2-spaces.
struct Filtration {
  TubeModule module;
  CohomologyGroup group;
  bool infinity = false;
  /// images[k] : columns span H^n_k (k = 0..m, images[m] = 0).
  std::vector<F2Matrix> images;
  /// Filled by sum_cohomology: a basis of End(T), its action on H^n and
  /// some integral units of End(T).
  std::vector<IntMatrix> end_basis;
  std::vector<F2Matrix> end_induced;
  std::vector<IntMatrix> units;
  /// Set for duals of lattices: images then run H_m, ..., H_0 of the
  /// increasing chain, maps are transposes, and standard[t] is the class of
  /// the fixed element at position t (nullopt when there is none).
  bool dual = false;
  std::vector<std::optional<CohClass>> standard;
};
Filtration filtration(const TubeModule& T, std::size_t n);
/// Largest k with e in H^n_k; nullopt for e = 0.
std::optional<std::size_t> filtration_position(const Filtration& F, const CohClass& e);
std::optional<std::size_t> filtration_position(const TubeModule& T, const CohClass& e, std::size_t n);

/// E_k = M_k(n) minus (2 M_k(n) + M_{k+1}(n)) is nonempty.
bool position_admissible(const TubeModule& T, std::size_t k, std::size_t n);
/// The fixed element of E_k: the first HNF basis vector of M_k(n) outside
/// 2 M_k(n) + M_{k+1}(n). Throws "parity mismatch" when E_k is empty.
IntVector standard_element(const TubeModule& T, std::size_t k, std::size_t n);

struct StandardEntry {
  int j = 0;
  std::size_t m = 0;
  std::size_t k = 0;
  friend bool operator==(const StandardEntry&, const StandardEntry&) = default;
};

struct StandardData {
  std::vector<std::pair<TubeId, std::vector<StandardEntry>>> tubes;  // sorted by tube
  std::string parity = "none";                                       // "even", "odd" or "none"

  bool empty() const { return tubes.empty(); }
  std::string to_string() const;
  friend bool operator==(const StandardData&, const StandardData&) = default;
};

/// The inequalities of a standard (increasing = false) or costandard
/// (increasing = true) sequence; entries are in the stored order.
bool satisfies_sequence_rules(const std::vector<StandardEntry>& seq, bool increasing);
/// Relabel tubes by an automorphism of K.
StandardData apply_s3(const StandardData& d, S3Generator which);

/// H^n of a direct sum of tube modules, one block per summand.
struct SumCohomology {
  std::size_t n = 0;
  std::vector<Filtration> parts;
  std::vector<std::size_t> offsets;       // module coordinates
  std::vector<std::size_t> class_offsets; // class coordinates
  /// homs[i][i']: basis of Hom(T_i, T_i') and its action on classes, for
  /// summands in the same tube.
  std::vector<std::vector<std::vector<IntMatrix>>> homs;
  std::vector<std::vector<std::vector<F2Matrix>>> hom_actions;

  std::size_t rank() const;
  std::size_t class_length() const;
  KLattice total() const;
  CohClass class_of(const Cochain& g) const;
  Cochain representative(const CohClass& c) const;
  CohClass component(const CohClass& c, std::size_t i) const;
  /// phi_*(c) for an automorphism phi of the sum (acting on columns).
  CohClass push(const IntMatrix& phi, const CohClass& c) const;
  /// The F_2 matrix of phi_* on classes; needs an elementary group.
  F2Matrix push_matrix(const IntMatrix& phi) const;
};
SumCohomology sum_cohomology(const std::vector<TubeModule>& summands, std::size_t n);
/// Assemble a sum from filtrations of its summands; fills the endomorphism
/// and hom data.
SumCohomology sum_from_parts(std::vector<Filtration> parts, std::size_t n);
/// Basis of the maps from summand A to summand B in the module category the
/// parts live in (transposed homs for duals).
std::vector<IntMatrix> part_homs(const Filtration& A, const Filtration& B);

struct CanonicalForm {
  StandardData data;
  std::vector<std::size_t> delta;  // summands making up M_Delta
  std::vector<std::size_t> rest;   // summands making up M_0
  IntMatrix witness;               // automorphism of the sum
  CohClass image;                  // witness_*(e)
  /// False when some summand needed a unit that is only invertible over the
  /// 2-adic integers (odd determinant).
  bool integral = true;
};

/// Normal form of e under Aut_K of the sum. The witness carries e to the sum
/// of the standard classes on the delta summands.
CanonicalForm canonical_form(const SumCohomology& H, const CohClass& e, std::uint64_t seed = 0);

/// Generators used by the orbit oracle and by random automorphism sampling:
/// unit endomorphisms of each summand and I + theta across summands.
std::vector<IntMatrix> automorphism_family(const SumCohomology& H, std::uint64_t seed = 0);
/// Orbit index of every class, classes enumerated by their coordinates read
/// as a binary number. Needs an elementary group of order at most 2^20.
std::vector<std::size_t> orbit_partition(const SumCohomology& H, const std::vector<IntMatrix>& family);
CohClass class_from_index(const SumCohomology& H, std::size_t index);

/// An automorphism of K as a word in tau2, tau3 (applied left to right).
using S3Word = std::vector<S3Generator>;
std::string to_string(const S3Word& w);
/// The semilinear chain map c : P_n -> P_n over psi, lifting the identity of Z.
std::vector<RMatrix> s3_chain_map(S3Generator which, std::size_t max_degree);
/// gamma o c, a cochain for the twisted module.
Cochain twist_cochain(const Cochain& g, const KLattice& M, S3Generator which);
TubeModule twist_module(const TubeModule& T, S3Generator which);

struct TwistedClass {
  std::vector<TubeModule> summands;
  Cochain cocycle;
};
TwistedClass apply_group_automorphism(const S3Word& psi, const std::vector<TubeModule>& summands,
                                      const Cochain& cocycle);

}  // namespace klein
