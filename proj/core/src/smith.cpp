#include "klein/exactlin.hpp"

#include <algorithm>
#include <utility>

namespace klein {

namespace {

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) swap(m(a, j), m(b, j));
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) swap(m(i, a), m(i, b));
}

// row[dst] -= q * row[src]
void row_submul(IntMatrix& m, std::size_t dst, std::size_t src, const Int& q) {
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (sgn(m(src, j)) != 0) mpz_submul(m(dst, j).get_mpz_t(), q.get_mpz_t(), m(src, j).get_mpz_t());
}

void col_submul(IntMatrix& m, std::size_t dst, std::size_t src, const Int& q) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (sgn(m(i, src)) != 0) mpz_submul(m(i, dst).get_mpz_t(), q.get_mpz_t(), m(i, src).get_mpz_t());
}

void negate_row(IntMatrix& m, std::size_t i) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = -m(i, j);
}

void negate_col(IntMatrix& m, std::size_t j) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) = -m(i, j);
}

// Tracks U, U^{-1}, V, V^{-1} alongside elementary operations on D.
struct SmithState {
  IntMatrix D, U, Uinv, V, Vinv;

  void rswap(std::size_t a, std::size_t b) {
    swap_rows(D, a, b);
    swap_rows(U, a, b);
    swap_cols(Uinv, a, b);
  }
  void cswap(std::size_t a, std::size_t b) {
    swap_cols(D, a, b);
    swap_cols(V, a, b);
    swap_rows(Vinv, a, b);
  }
  // r_i -= q r_t
  void rsub(std::size_t i, std::size_t t, const Int& q) {
    row_submul(D, i, t, q);
    row_submul(U, i, t, q);
    col_submul(Uinv, t, i, -q);
  }
  // c_j -= q c_t
  void csub(std::size_t j, std::size_t t, const Int& q) {
    col_submul(D, j, t, q);
    col_submul(V, j, t, q);
    row_submul(Vinv, t, j, -q);
  }
  void rneg(std::size_t i) {
    negate_row(D, i);
    negate_row(U, i);
    negate_col(Uinv, i);
  }
};

}  // namespace

std::size_t SmithForm::rank() const {
  std::size_t r = 0;
  const std::size_t n = std::min(D.rows(), D.cols());
  while (r < n && sgn(D(r, r)) != 0) ++r;
  return r;
}

IntVector SmithForm::diagonal() const {
  const std::size_t n = std::min(D.rows(), D.cols());
  IntVector d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = D(i, i);
  return d;
}

SmithForm smith_form(const IntMatrix& A) {
  const std::size_t m = A.rows(), n = A.cols();
  SmithState s{A, IntMatrix::identity(m), IntMatrix::identity(m), IntMatrix::identity(n),
               IntMatrix::identity(n)};
  Int q;
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      // smallest nonzero |entry| in the trailing block
      std::size_t pi = m, pj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          const Int& x = s.D(i, j);
          if (sgn(x) == 0) continue;
          if (pi == m || mpz_cmpabs(x.get_mpz_t(), s.D(pi, pj).get_mpz_t()) < 0) {
            pi = i;
            pj = j;
          }
        }
      if (pi == m) goto done;
      s.rswap(t, pi);
      s.cswap(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (sgn(s.D(i, t)) == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), s.D(i, t).get_mpz_t(), s.D(t, t).get_mpz_t());
        s.rsub(i, t, q);
        if (sgn(s.D(i, t)) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (sgn(s.D(t, j)) == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), s.D(t, j).get_mpz_t(), s.D(t, t).get_mpz_t());
        s.csub(j, t, q);
        if (sgn(s.D(t, j)) != 0) clean = false;
      }
      if (!clean) continue;

      // divisibility of the remaining block
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(s.D(i, j).get_mpz_t(), s.D(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == m) break;
      // r_t += r_bad
      s.rsub(t, bad, Int(-1));
    }
    if (sgn(s.D(t, t)) < 0) s.rneg(t);
  }
done:
  return SmithForm{std::move(s.U), std::move(s.V), std::move(s.D), std::move(s.Uinv),
                   std::move(s.Vinv)};
}

HermiteForm hermite_form(const IntMatrix& A, bool with_transform) {
  const std::size_t m = A.rows(), n = A.cols();
  IntMatrix H = A;
  IntMatrix T = with_transform ? IntMatrix::identity(m) : IntMatrix();
  auto rswap = [&](std::size_t a, std::size_t b) {
    swap_rows(H, a, b);
    if (with_transform) swap_rows(T, a, b);
  };
  auto rsub = [&](std::size_t i, std::size_t t, const Int& q) {
    row_submul(H, i, t, q);
    if (with_transform) row_submul(T, i, t, q);
  };
  std::size_t r = 0;
  Int q;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    for (;;) {
      std::size_t p = m;
      for (std::size_t i = r; i < m; ++i)
        if (sgn(H(i, c)) != 0 && (p == m || mpz_cmpabs(H(i, c).get_mpz_t(), H(p, c).get_mpz_t()) < 0)) p = i;
      if (p == m) break;
      rswap(r, p);
      bool clean = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (sgn(H(i, c)) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), H(i, c).get_mpz_t(), H(r, c).get_mpz_t());
        rsub(i, r, q);
        if (sgn(H(i, c)) != 0) clean = false;
      }
      if (clean) break;
    }
    if (sgn(H(r, c)) == 0) continue;
    if (sgn(H(r, c)) < 0) {
      negate_row(H, r);
      if (with_transform) negate_row(T, r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      mpz_fdiv_q(q.get_mpz_t(), H(i, c).get_mpz_t(), H(r, c).get_mpz_t());
      if (sgn(q) != 0) rsub(i, r, q);
    }
    ++r;
  }
  return HermiteForm{std::move(H), std::move(T), r};
}

IntMatrix left_kernel(const IntMatrix& A) {
  HermiteForm hf = hermite_form(A, true);
  const std::size_t k = A.rows() - hf.rank;
  if (k == 0) return IntMatrix(0, A.rows());
  IntMatrix K = hf.T.block(hf.rank, 0, k, A.rows());
  HermiteForm kh = hermite_form(K, false);
  return kh.H.block(0, 0, kh.rank, A.rows());
}

IntMatrix right_kernel(const IntMatrix& A) { return left_kernel(A.transpose()).transpose(); }

IntMatrix unimodular_inverse(const IntMatrix& A) {
  if (!A.is_square()) throw Error("inverse of non-square matrix");
  HermiteForm hf = hermite_form(A, true);
  if (!(hf.H == IntMatrix::identity(A.rows()))) throw Error("matrix is not unimodular");
  return hf.T;
}

std::optional<IntMatrix> solve_left(const IntMatrix& X, const IntMatrix& Z) {
  if (X.cols() != Z.cols()) throw Error("dimension mismatch in solve_left");
  HermiteForm hf = hermite_form(X, true);
  if (hf.rank != X.rows()) throw Error("solve_left needs full row rank");
  ZLattice L = ZLattice::from_generators(X);
  IntMatrix Y(Z.rows(), X.rows());
  for (std::size_t i = 0; i < Z.rows(); ++i) {
    auto c = L.coordinates(Z.row(i));
    if (!c) return std::nullopt;
    Y.set_row(i, row_times(*c, hf.T));
  }
  return Y;
}

}  // namespace klein

namespace klein {

std::optional<IntMatrix> solve_right(const IntMatrix& A, const IntMatrix& B) {
  if (A.rows() != B.rows()) throw Error("dimension mismatch in solve_right");
  SmithForm s = smith_form(A);
  IntMatrix Y = s.U * B;
  const std::size_t r = s.rank();
  IntMatrix Z(A.cols(), B.cols());
  for (std::size_t c = 0; c < B.cols(); ++c) {
    for (std::size_t i = 0; i < A.rows(); ++i) {
      if (i < r) {
        if (!mpz_divisible_p(Y(i, c).get_mpz_t(), s.D(i, i).get_mpz_t())) return std::nullopt;
        Z(i, c) = Y(i, c) / s.D(i, i);
      } else if (sgn(Y(i, c)) != 0) {
        return std::nullopt;
      }
    }
  }
  return s.V * Z;
}

}  // namespace klein
