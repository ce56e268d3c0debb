#pragma once

// Exact linear algebra over Z, Z/2^k and F_2.
//
// Integer matrices use GMP integers throughout; no fixed-width arithmetic is
// used on matrix entries. Lattices are stored by their row Hermite normal
// form, so two lattices are equal iff their stored bases are equal.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace klein {

using Int = mpz_class;
using IntVector = std::vector<Int>;
using Rng = std::mt19937_64;

/// Raised for violated preconditions and failed mathematical assertions.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix zero(std::size_t rows, std::size_t cols) { return IntMatrix(rows, cols); }
  static IntMatrix diagonal(std::span<const Int> d);
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);
  static IntMatrix column(const IntVector& v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntVector row(std::size_t i) const;
  IntVector col(std::size_t j) const;
  void set_row(std::size_t i, std::span<const Int> v);
  void set_col(std::size_t j, std::span<const Int> v);

  IntMatrix transpose() const;
  IntMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const IntMatrix& b);
  IntMatrix select_rows(std::span<const std::size_t> idx) const;

  bool is_zero() const;
  bool is_square() const { return rows_ == cols_; }
  Int determinant() const;

  IntMatrix& operator+=(const IntMatrix& o);
  IntMatrix& operator-=(const IntMatrix& o);
  IntMatrix& operator*=(const Int& s);

  friend IntMatrix operator+(IntMatrix a, const IntMatrix& b) { return a += b; }
  friend IntMatrix operator-(IntMatrix a, const IntMatrix& b) { return a -= b; }
  friend IntMatrix operator*(IntMatrix a, const Int& s) { return a *= s; }
  friend IntMatrix operator*(const Int& s, IntMatrix a) { return a *= s; }
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntVector operator*(const IntMatrix& a, std::span<const Int> v);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);
IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);
IntMatrix direct_sum(const IntMatrix& a, const IntMatrix& b);
/// Row vector times matrix.
IntVector row_times(std::span<const Int> v, const IntMatrix& a);

class F2Matrix {
 public:
  F2Matrix() = default;
  F2Matrix(std::size_t rows, std::size_t cols);
  F2Matrix(std::initializer_list<std::initializer_list<int>> rows);

  static F2Matrix identity(std::size_t n);
  static F2Matrix zero(std::size_t rows, std::size_t cols) { return F2Matrix(rows, cols); }
  static F2Matrix reduce(const IntMatrix& m);
  static F2Matrix random(std::size_t rows, std::size_t cols, Rng& rng);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool get(std::size_t i, std::size_t j) const { return data_[i * cols_ + j] != 0; }
  void set(std::size_t i, std::size_t j, bool v) { data_[i * cols_ + j] = v ? 1 : 0; }
  void flip(std::size_t i, std::size_t j) { data_[i * cols_ + j] ^= 1; }

  std::vector<std::uint8_t> row(std::size_t i) const;
  std::vector<std::uint8_t> col(std::size_t j) const;
  void set_col(std::size_t j, std::span<const std::uint8_t> v);

  /// The {0,1} integer lift.
  IntMatrix lift() const;
  F2Matrix transpose() const;
  F2Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const F2Matrix& b);

  bool is_zero() const;
  std::size_t rank() const;
  bool is_invertible() const { return rows_ == cols_ && rank() == rows_; }
  F2Matrix inverse() const;
  /// Columns form a basis of the right kernel.
  F2Matrix nullspace() const;
  /// Columns form a basis of the column space, chosen among the columns of *this.
  F2Matrix column_space() const;
  /// Solve this * x = b; nullopt if inconsistent.
  std::optional<std::vector<std::uint8_t>> solve(std::span<const std::uint8_t> b) const;

  F2Matrix& operator+=(const F2Matrix& o);
  friend F2Matrix operator+(F2Matrix a, const F2Matrix& b) { return a += b; }
  friend F2Matrix operator*(const F2Matrix& a, const F2Matrix& b);
  friend std::vector<std::uint8_t> operator*(const F2Matrix& a, std::span<const std::uint8_t> v);
  friend bool operator==(const F2Matrix& a, const F2Matrix& b) = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint8_t> data_;
};

F2Matrix hstack(const F2Matrix& a, const F2Matrix& b);
F2Matrix vstack(const F2Matrix& a, const F2Matrix& b);
F2Matrix direct_sum(const F2Matrix& a, const F2Matrix& b);
/// Extend the independent columns of `cols` to a basis of F_2^n; the given
/// columns come first.
F2Matrix complete_basis(const F2Matrix& cols);
/// Basis (as columns) of the intersection of two column spaces.
F2Matrix intersect_spaces(const F2Matrix& a, const F2Matrix& b);

/// Right kernel over F_2 of a system given as packed rows; used for large
/// homogeneous systems. Each equation is a bit vector over `nvars` unknowns.
class F2System {
 public:
  explicit F2System(std::size_t nvars);
  std::size_t nvars() const { return nvars_; }
  /// Adds an empty equation and returns its index.
  std::size_t add_equation();
  void toggle(std::size_t eq, std::size_t var);
  /// Basis of the solution space, one 0/1 vector per solution.
  std::vector<std::vector<std::uint8_t>> nullspace() const;

 private:
  std::size_t nvars_;
  std::size_t words_;
  std::vector<std::vector<std::uint64_t>> eqs_;
};

struct SmithForm {
  IntMatrix U;     // unimodular, rows x rows
  IntMatrix V;     // unimodular, cols x cols
  IntMatrix D;     // U * A * V
  IntMatrix Uinv;  // U^{-1}
  IntMatrix Vinv;  // V^{-1}

  std::size_t rank() const;
  IntVector diagonal() const;
};

/// U * A * V = D with d_1 | d_2 | ... and d_i >= 0. Pivots are chosen by
/// smallest nonzero absolute value, ties broken by lowest (row, col).
SmithForm smith_form(const IntMatrix& A);

struct HermiteForm {
  IntMatrix H;  // row HNF, zero rows at the bottom
  IntMatrix T;  // unimodular with T * A = H
  std::size_t rank = 0;
};

/// Row-style Hermite normal form: positive pivots, entries above each pivot
/// reduced into [0, pivot).
HermiteForm hermite_form(const IntMatrix& A, bool with_transform = true);

/// Rows form a basis of { x : x * A = 0 }; the result is saturated.
IntMatrix left_kernel(const IntMatrix& A);
/// Columns form a basis of { x : A * x = 0 }.
IntMatrix right_kernel(const IntMatrix& A);
/// Inverse of a unimodular matrix.
IntMatrix unimodular_inverse(const IntMatrix& A);
/// Integer Y with Y * X = Z, for X of full row rank; nullopt if no
/// integer solution exists.
std::optional<IntMatrix> solve_left(const IntMatrix& X, const IntMatrix& Z);
/// Integer X with A * X = B for any A; nullopt if none exists.
std::optional<IntMatrix> solve_right(const IntMatrix& A, const IntMatrix& B);

class ZLattice {
 public:
  ZLattice() = default;
  /// Lattice spanned by the rows of `generators`.
  static ZLattice from_generators(const IntMatrix& generators);
  static ZLattice zero(std::size_t ambient);
  static ZLattice full(std::size_t ambient);

  std::size_t ambient_rank() const { return ambient_; }
  std::size_t rank() const { return basis_.rows(); }
  const IntMatrix& basis() const { return basis_; }

  bool contains(std::span<const Int> v) const;
  /// Coordinates with respect to basis(); nullopt if v is not in the lattice.
  std::optional<IntVector> coordinates(std::span<const Int> v) const;
  /// Coordinates of each row of `vs`; throws if some row is outside.
  IntMatrix coordinates_of_rows(const IntMatrix& vs) const;
  bool contains_lattice(const ZLattice& other) const;
  ZLattice scaled(const Int& k) const;

  friend bool operator==(const ZLattice& a, const ZLattice& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  ZLattice(std::size_t ambient, IntMatrix basis);
  std::size_t ambient_ = 0;
  IntMatrix basis_;
};

ZLattice hnf(const IntMatrix& generators);
ZLattice lattice_sum(const ZLattice& a, const ZLattice& b);
ZLattice lattice_intersection(const ZLattice& a, const ZLattice& b);
/// The smallest pure sublattice of Z^n containing the lattice.
ZLattice saturation(const ZLattice& a);

struct QuotientInvariants {
  IntVector torsion;        // elementary divisors > 1 of L1/L2
  std::size_t free_rank = 0;
  std::optional<Int> index;  // nullopt when infinite
};

/// Invariants of L1 / L2; throws "not a sublattice" unless L2 is inside L1.
QuotientInvariants quotient_invariants(const ZLattice& L1, const ZLattice& L2);

/// Integer matrix with determinant +-1 reducing to `a` mod 2.
IntMatrix lift_invertible(const F2Matrix& a);

struct LiftedSequence {
  IntMatrix alpha;  // n x m
  IntMatrix beta;   // l x n
};

/// Lifts an exact sequence 0 -> F2^m -> F2^n -> F2^l -> 0 to one over Z.
LiftedSequence lift_exact_sequence(const F2Matrix& alpha, const F2Matrix& beta);

Int gcd_of(std::span<const Int> v);

}  // namespace klein
