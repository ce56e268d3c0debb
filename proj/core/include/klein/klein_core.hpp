#pragma once

// The Kleinian 4-group K = <a, b>, K-lattices given by two commuting
// involutions, their eigencomponents and the overlattice M# = R~ M.

#include <array>
#include <string>
#include <string_view>

#include "klein/exactlin.hpp"

namespace klein {

/// a^i b^j
struct GroupElt {
  int i = 0;
  int j = 0;
  friend GroupElt operator*(GroupElt x, GroupElt y) { return {x.i ^ y.i, x.j ^ y.j}; }
  friend bool operator==(GroupElt, GroupElt) = default;
  /// 0..3 as i + 2j
  int index() const { return i + 2 * j; }
  static GroupElt from_index(int k) { return {k & 1, (k >> 1) & 1}; }
};

inline constexpr std::array<GroupElt, 4> kGroup = {GroupElt{0, 0}, GroupElt{1, 0}, GroupElt{0, 1},
                                                    GroupElt{1, 1}};

/// Signs (alpha, beta) of a and b, each +1 or -1.
struct SignPair {
  int alpha = 1;
  int beta = 1;
  friend bool operator==(SignPair, SignPair) = default;
};

/// Ordered ++, +-, -+, --.
inline constexpr std::array<SignPair, 4> kSignPairs = {SignPair{1, 1}, SignPair{1, -1}, SignPair{-1, 1},
                                                       SignPair{-1, -1}};
inline constexpr std::array<std::string_view, 4> kSignNames = {"pp", "pm", "mp", "mm"};

std::size_t sign_index(SignPair s);
std::size_t sign_index(std::string_view name);

/// Image of a group element in R~ = Z^4, one entry per sign pair.
std::array<int, 4> regular_quadruple(GroupElt g);

class KLattice {
 public:
  KLattice() = default;
  /// Throws unless a^2 = b^2 = I and ab = ba.
  KLattice(IntMatrix a, IntMatrix b);

  static KLattice trivial(std::size_t rank);
  /// Z_s for one sign pair, repeated `count` times.
  static KLattice sign_module(SignPair s, std::size_t count = 1);
  /// The group ring ZK with left multiplication, basis 1, a, b, ab.
  static KLattice regular();

  std::size_t rank() const { return a_.rows(); }
  const IntMatrix& a() const { return a_; }
  const IntMatrix& b() const { return b_; }
  /// Matrix of a^i b^j.
  IntMatrix act(GroupElt g) const;

  /// The same module in a new basis: columns of P are the new basis vectors.
  KLattice change_basis(const IntMatrix& P) const;

  friend bool operator==(const KLattice& x, const KLattice& y) { return x.a_ == y.a_ && x.b_ == y.b_; }

 private:
  IntMatrix a_;
  IntMatrix b_;
};

KLattice direct_sum(const KLattice& x, const KLattice& y);

/// { u : a u = alpha u, b u = beta u }, rows in Z^rank.
ZLattice eigencomponent(const KLattice& M, SignPair s);

/// M# and its decomposition. Actual vectors are the rows of `components[s]`
/// divided by `denom`.
struct SharpFrame {
  Int denom = 1;
  std::array<IntMatrix, 4> components;
  std::array<std::size_t, 4> dims{};
  /// Row i holds the i-th standard basis vector of M in the stacked basis
  /// of M# (components in order ++, +-, -+, --).
  IntMatrix coords;

  /// Stacked basis of M#, scaled by denom.
  IntMatrix basis() const;
  /// Offset of component s in the stacked basis.
  std::size_t offset(std::size_t s) const;
  /// denom * M#, as a lattice in Z^rank.
  ZLattice lattice() const;
};

SharpFrame sharp(const KLattice& M);

struct DimVector {
  std::size_t dot = 0;
  std::array<std::size_t, 4> d{};

  std::size_t plus() const { return d[0] + d[1] + d[2] + d[3]; }
  friend bool operator==(const DimVector&, const DimVector&) = default;
  friend auto operator<=>(const DimVector&, const DimVector&) = default;
  std::string to_string() const;
};

bool is_A_lattice(const KLattice& M);
/// Throws "not an A-lattice" unless 2M# is inside M.
DimVector dim_vector(const KLattice& M);
bool tube_membership(const KLattice& M);
bool in_tube(const DimVector& d);

}  // namespace klein
