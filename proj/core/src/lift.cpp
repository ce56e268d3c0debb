#include "klein/exactlin.hpp"

#include <utility>

namespace klein {

IntMatrix lift_invertible(const F2Matrix& a) {
  if (!a.is_invertible()) throw Error("not invertible mod 2");
  IntMatrix naive = a.lift();
  Int det = naive.determinant();
  if (det == 1 || det == -1) return naive;

  // Write a as a product of swaps and transvections over F_2 and multiply
  // their integer lifts.
  const std::size_t n = a.rows();
  F2Matrix w = a;
  struct Op {
    bool swap;
    std::size_t i, j;
  };
  std::vector<Op> ops;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (!w.get(p, c)) ++p;
    if (p != c) {
      for (std::size_t k = 0; k < n; ++k) {
        bool t = w.get(p, k);
        w.set(p, k, w.get(c, k));
        w.set(c, k, t);
      }
      ops.push_back({true, c, p});
    }
    for (std::size_t i = 0; i < n; ++i)
      if (i != c && w.get(i, c)) {
        for (std::size_t k = 0; k < n; ++k)
          if (w.get(c, k)) w.flip(i, k);
        ops.push_back({false, i, c});
      }
  }
  // a = E_1 E_2 ... E_k; right-multiplying by a row operation matrix acts on columns.
  IntMatrix L = IntMatrix::identity(n);
  for (const auto& op : ops) {
    if (op.swap) {
      for (std::size_t r = 0; r < n; ++r) swap(L(r, op.i), L(r, op.j));
    } else {
      // E = I + e_i e_j^T : column j += column i
      for (std::size_t r = 0; r < n; ++r) L(r, op.j) += L(r, op.i);
    }
  }
  return L;
}

LiftedSequence lift_exact_sequence(const F2Matrix& alpha, const F2Matrix& beta) {
  const std::size_t n = alpha.rows(), m = alpha.cols(), l = beta.rows();
  if (beta.cols() != n || !(beta * alpha).is_zero() || alpha.rank() != m || beta.rank() != l ||
      m + l != n)
    throw Error("input sequence not exact");
  F2Matrix S = complete_basis(alpha);
  F2Matrix C = (beta * S).block(0, m, l, l);
  IntMatrix Sz = lift_invertible(S);
  IntMatrix Cz = lift_invertible(C);
  IntMatrix Sinv = unimodular_inverse(Sz);
  IntMatrix zc(l, n);
  zc.set_block(0, m, Cz);
  return LiftedSequence{Sz.block(0, 0, n, m), zc * Sinv};
}

}  // namespace klein
