#pragma once

// Polynomials over F_2 packed into a 64-bit word (degree < 64), and the
// labels of regular tubes.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "klein/exactlin.hpp"

namespace klein {

class F2Poly {
 public:
  F2Poly() = default;
  explicit F2Poly(std::uint64_t bits) : bits_(bits) {}
  /// Coefficients low to high.
  static F2Poly from_coeffs(const std::vector<int>& c);
  static F2Poly t() { return F2Poly(2); }
  static F2Poly one() { return F2Poly(1); }

  std::uint64_t bits() const { return bits_; }
  int degree() const;  // -1 for zero
  bool is_zero() const { return bits_ == 0; }
  bool coeff(int i) const { return ((bits_ >> i) & 1U) != 0; }
  std::vector<int> coeffs() const;

  F2Poly operator+(F2Poly o) const { return F2Poly(bits_ ^ o.bits_); }
  F2Poly operator*(F2Poly o) const;
  F2Poly operator%(F2Poly o) const;
  F2Poly operator/(F2Poly o) const;
  F2Poly pow(unsigned e) const;
  /// Value at t = 0 or t = 1.
  bool eval(bool x) const;
  /// p(t + 1)
  F2Poly shift_by_one() const;
  /// (t + 1)^d p(t / (t + 1)) with d = deg p
  F2Poly mobius() const;

  bool is_irreducible() const;

  friend bool operator==(F2Poly, F2Poly) = default;
  friend auto operator<=>(F2Poly a, F2Poly b) { return a.bits_ <=> b.bits_; }

  /// e.g. "t^2+t+1"
  std::string to_string() const;
  /// Accepts "t^2+t+1" style strings or a bit pattern like "111" (high to low).
  static F2Poly parse(const std::string& s);

 private:
  std::uint64_t bits_ = 0;
};

F2Poly gcd(F2Poly a, F2Poly b);
/// Monic irreducible polynomials of the given degree, in increasing bit order.
std::vector<F2Poly> irreducibles_of_degree(int d);
/// Companion matrix of p: ones on the subdiagonal, last column holds the
/// low coefficients.
F2Matrix companion(F2Poly p);
F2Poly characteristic_polynomial(const F2Matrix& m);
/// The irreducible f with f^m = p, if p is a power of an irreducible.
std::optional<std::pair<F2Poly, unsigned>> irreducible_power_root(F2Poly p);

enum class SpecialPoint { zero, one, infinity };

std::string to_string(SpecialPoint p);
SpecialPoint parse_special_point(const std::string& s);

/// A point of the projective line over F_2 indexing a tube.
struct TubeId {
  bool special = false;
  F2Poly f;  // homogeneous tubes
  SpecialPoint lambda = SpecialPoint::one;

  static TubeId homogeneous(F2Poly f);
  static TubeId special_point(SpecialPoint p);

  friend bool operator==(const TubeId& x, const TubeId& y) {
    return x.special == y.special && (x.special ? x.lambda == y.lambda : x.f == y.f);
  }
  friend bool operator<(const TubeId& x, const TubeId& y);
  std::string to_string() const;
  /// "special:0", "special:1", "special:inf" or "hom:t^2+t+1"
  static TubeId parse(const std::string& s);
};

/// An indecomposable module in a tube: T^f_m or T^{lambda j}_m.
struct TubeLabel {
  TubeId id;
  int j = 0;  // 1 or 2 for special tubes, 0 otherwise
  std::size_t m = 0;

  friend bool operator==(const TubeLabel&, const TubeLabel&) = default;
  friend bool operator<(const TubeLabel& x, const TubeLabel& y);
  std::string to_string() const;
};

enum class S3Generator { tau2, tau3 };

/// Throws "special label required" for t and t + 1.
F2Poly s3_on_polynomial(F2Poly f, S3Generator which);
TubeId s3_on_tube(const TubeId& id, S3Generator which);

}  // namespace klein
