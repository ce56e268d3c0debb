#include "klein/exactlin.hpp"

namespace klein {

ZLattice::ZLattice(std::size_t ambient, IntMatrix basis) : ambient_(ambient), basis_(std::move(basis)) {}

ZLattice ZLattice::from_generators(const IntMatrix& generators) {
  HermiteForm hf = hermite_form(generators, false);
  return ZLattice(generators.cols(), hf.H.block(0, 0, hf.rank, generators.cols()));
}

ZLattice ZLattice::zero(std::size_t ambient) { return ZLattice(ambient, IntMatrix(0, ambient)); }

ZLattice ZLattice::full(std::size_t ambient) { return ZLattice(ambient, IntMatrix::identity(ambient)); }

std::optional<IntVector> ZLattice::coordinates(std::span<const Int> v) const {
  if (v.size() != ambient_) throw Error("dimension mismatch in lattice membership");
  IntVector rest(v.begin(), v.end());
  IntVector x(basis_.rows());
  std::size_t c = 0;
  for (std::size_t k = 0; k < basis_.rows(); ++k) {
    while (sgn(basis_(k, c)) == 0) {
      if (sgn(rest[c]) != 0) return std::nullopt;
      ++c;
    }
    if (!mpz_divisible_p(rest[c].get_mpz_t(), basis_(k, c).get_mpz_t())) return std::nullopt;
    mpz_divexact(x[k].get_mpz_t(), rest[c].get_mpz_t(), basis_(k, c).get_mpz_t());
    if (sgn(x[k]) != 0)
      for (std::size_t j = c; j < ambient_; ++j)
        mpz_submul(rest[j].get_mpz_t(), x[k].get_mpz_t(), basis_(k, j).get_mpz_t());
    ++c;
  }
  for (std::size_t j = 0; j < ambient_; ++j)
    if (sgn(rest[j]) != 0) return std::nullopt;
  return x;
}

bool ZLattice::contains(std::span<const Int> v) const { return coordinates(v).has_value(); }

IntMatrix ZLattice::coordinates_of_rows(const IntMatrix& vs) const {
  IntMatrix out(vs.rows(), rank());
  for (std::size_t i = 0; i < vs.rows(); ++i) {
    auto x = coordinates(vs.row(i));
    if (!x) throw Error("vector is not in the lattice");
    out.set_row(i, *x);
  }
  return out;
}

bool ZLattice::contains_lattice(const ZLattice& other) const {
  if (other.ambient_ != ambient_) return false;
  for (std::size_t i = 0; i < other.rank(); ++i)
    if (!contains(other.basis_.row(i))) return false;
  return true;
}

ZLattice ZLattice::scaled(const Int& k) const { return from_generators(basis_ * k); }

ZLattice hnf(const IntMatrix& generators) { return ZLattice::from_generators(generators); }

ZLattice lattice_sum(const ZLattice& a, const ZLattice& b) {
  if (a.ambient_rank() != b.ambient_rank()) throw Error("ambient rank mismatch");
  return ZLattice::from_generators(vstack(a.basis(), b.basis()));
}

ZLattice lattice_intersection(const ZLattice& a, const ZLattice& b) {
  if (a.ambient_rank() != b.ambient_rank()) throw Error("ambient rank mismatch");
  const std::size_t n = a.ambient_rank();
  if (a.rank() == 0 || b.rank() == 0) return ZLattice::zero(n);
  IntMatrix K = left_kernel(vstack(a.basis(), b.basis()));
  if (K.rows() == 0) return ZLattice::zero(n);
  return ZLattice::from_generators(K.block(0, 0, K.rows(), a.rank()) * a.basis());
}

ZLattice saturation(const ZLattice& a) {
  const std::size_t n = a.ambient_rank();
  if (a.rank() == 0) return ZLattice::zero(n);
  IntMatrix K = right_kernel(a.basis());
  if (K.cols() == 0) return ZLattice::full(n);
  return ZLattice::from_generators(left_kernel(K));
}

QuotientInvariants quotient_invariants(const ZLattice& L1, const ZLattice& L2) {
  if (!L1.contains_lattice(L2)) throw Error("not a sublattice");
  QuotientInvariants q;
  if (L2.rank() == 0) {
    q.free_rank = L1.rank();
    if (q.free_rank == 0) q.index = Int(1);
    return q;
  }
  IntMatrix C = L1.coordinates_of_rows(L2.basis());
  SmithForm s = smith_form(C);
  const std::size_t r = s.rank();
  q.free_rank = L1.rank() - r;
  Int idx = 1;
  for (const auto& d : s.diagonal()) {
    if (sgn(d) == 0) continue;
    if (d > 1) q.torsion.push_back(d);
    idx *= d;
  }
  if (q.free_rank == 0) q.index = idx;
  return q;
}

}  // namespace klein
