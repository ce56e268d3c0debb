#include "klein/klein_core.hpp"

#include <sstream>

namespace klein {

std::size_t sign_index(SignPair s) { return (s.alpha < 0 ? 2 : 0) + (s.beta < 0 ? 1 : 0); }

std::size_t sign_index(std::string_view name) {
  for (std::size_t k = 0; k < 4; ++k)
    if (kSignNames[k] == name) return k;
  throw Error("unknown sign pair '" + std::string(name) + "'");
}

std::array<int, 4> regular_quadruple(GroupElt g) {
  std::array<int, 4> q{};
  for (std::size_t k = 0; k < 4; ++k)
    q[k] = (g.i ? kSignPairs[k].alpha : 1) * (g.j ? kSignPairs[k].beta : 1);
  return q;
}

KLattice::KLattice(IntMatrix a, IntMatrix b) : a_(std::move(a)), b_(std::move(b)) {
  const std::size_t n = a_.rows();
  if (!a_.is_square() || !b_.is_square() || b_.rows() != n) throw Error("action matrices must be square of equal size");
  IntMatrix I = IntMatrix::identity(n);
  if (!(a_ * a_ == I) || !(b_ * b_ == I)) throw Error("action matrices must be involutions");
  if (!(a_ * b_ == b_ * a_)) throw Error("action matrices must commute");
}

KLattice KLattice::trivial(std::size_t rank) {
  return KLattice(IntMatrix::identity(rank), IntMatrix::identity(rank));
}

KLattice KLattice::sign_module(SignPair s, std::size_t count) {
  return KLattice(IntMatrix::identity(count) * Int(s.alpha), IntMatrix::identity(count) * Int(s.beta));
}

KLattice KLattice::regular() {
  IntMatrix a(4, 4), b(4, 4);
  for (int k = 0; k < 4; ++k) {
    GroupElt g = GroupElt::from_index(k);
    a((GroupElt{1, 0} * g).index(), k) = 1;
    b((GroupElt{0, 1} * g).index(), k) = 1;
  }
  return KLattice(a, b);
}

IntMatrix KLattice::act(GroupElt g) const {
  if (g.i && g.j) return a_ * b_;
  if (g.i) return a_;
  if (g.j) return b_;
  return IntMatrix::identity(rank());
}

KLattice KLattice::change_basis(const IntMatrix& P) const {
  IntMatrix Pinv = unimodular_inverse(P);
  return KLattice(Pinv * a_ * P, Pinv * b_ * P);
}

KLattice direct_sum(const KLattice& x, const KLattice& y) {
  return KLattice(direct_sum(x.a(), y.a()), direct_sum(x.b(), y.b()));
}

ZLattice eigencomponent(const KLattice& M, SignPair s) {
  const std::size_t n = M.rank();
  IntMatrix I = IntMatrix::identity(n);
  IntMatrix stacked = vstack(M.a() - I * Int(s.alpha), M.b() - I * Int(s.beta));
  IntMatrix k = right_kernel(stacked);
  return ZLattice::from_generators(k.transpose());
}

IntMatrix SharpFrame::basis() const {
  IntMatrix out(0, coords.cols());
  for (const auto& c : components) out = vstack(out, c);
  return out;
}

std::size_t SharpFrame::offset(std::size_t s) const {
  std::size_t o = 0;
  for (std::size_t k = 0; k < s; ++k) o += dims[k];
  return o;
}

ZLattice SharpFrame::lattice() const { return ZLattice::from_generators(basis()); }

SharpFrame sharp(const KLattice& M) {
  const std::size_t n = M.rank();
  IntMatrix I = IntMatrix::identity(n);
  std::array<IntMatrix, 4> proj;  // 4 e_s
  std::array<ZLattice, 4> comp;
  Int g = 0;
  for (std::size_t s = 0; s < 4; ++s) {
    proj[s] = (I + M.a() * Int(kSignPairs[s].alpha)) * (I + M.b() * Int(kSignPairs[s].beta));
    comp[s] = ZLattice::from_generators(proj[s].transpose());
    for (std::size_t i = 0; i < comp[s].rank(); ++i) {
      IntVector r = comp[s].basis().row(i);
      Int c = gcd_of(r);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    }
  }
  SharpFrame f;
  if (n == 0) {
    f.coords = IntMatrix(0, 0);
    for (auto& c : f.components) c = IntMatrix(0, 0);
    return f;
  }
  if (!mpz_divisible_p(Int(4).get_mpz_t(), g.get_mpz_t())) throw Error("sharp: unexpected content");
  f.denom = 4 / g;
  std::array<ZLattice, 4> scaled;
  for (std::size_t s = 0; s < 4; ++s) {
    IntMatrix b = comp[s].basis();
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < n; ++j) mpz_divexact(b(i, j).get_mpz_t(), b(i, j).get_mpz_t(), g.get_mpz_t());
    f.components[s] = b;
    f.dims[s] = b.rows();
    scaled[s] = ZLattice::from_generators(b);
  }
  std::size_t total = f.dims[0] + f.dims[1] + f.dims[2] + f.dims[3];
  if (total != n) throw Error("sharp: components do not span");
  f.coords = IntMatrix(n, n);
  for (std::size_t s = 0; s < 4; ++s) {
    std::size_t off = f.offset(s);
    for (std::size_t j = 0; j < n; ++j) {
      IntVector v = proj[s].col(j);
      for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
      auto c = scaled[s].coordinates(v);
      if (!c) throw Error("sharp: projection outside component");
      for (std::size_t k = 0; k < f.dims[s]; ++k) f.coords(j, off + k) = (*c)[k];
    }
  }
  return f;
}

std::string DimVector::to_string() const {
  std::ostringstream os;
  os << '(' << dot << ';' << d[0] << ',' << d[1] << ',' << d[2] << ',' << d[3] << ')';
  return os.str();
}

namespace {

bool contains_twice_full(const IntMatrix& X) {
  ZLattice L = ZLattice::from_generators(X);
  if (L.rank() != X.cols()) return false;
  for (std::size_t k = 0; k < L.rank(); ++k)
    if (L.basis()(k, k) != 1 && L.basis()(k, k) != 2) return false;
  // with an upper triangular basis and pivots dividing 2, 2Z^n is inside
  // exactly when each 2 e_j is a member
  for (std::size_t j = 0; j < X.cols(); ++j) {
    IntVector v(X.cols());
    v[j] = 2;
    if (!L.contains(v)) return false;
  }
  return true;
}

}  // namespace

bool is_A_lattice(const KLattice& M) {
  if (M.rank() == 0) return true;
  return contains_twice_full(sharp(M).coords);
}

DimVector dim_vector(const KLattice& M) {
  if (!is_A_lattice(M)) throw Error("not an A-lattice");
  SharpFrame f = sharp(M);
  DimVector d;
  d.d = f.dims;
  d.dot = F2Matrix::reduce(f.coords).rank();
  return d;
}

bool in_tube(const DimVector& d) { return 2 * d.dot == d.plus(); }

bool tube_membership(const KLattice& M) { return in_tube(dim_vector(M)); }

}  // namespace klein
