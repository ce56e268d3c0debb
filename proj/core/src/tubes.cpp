#include "klein/tubes.hpp"

#include <algorithm>

namespace klein {

F2Matrix frobenius_matrix(F2Poly f, unsigned m) { return companion(f.pow(m)); }

F2Matrix jordan_one(std::size_t m) {
  F2Matrix j = F2Matrix::identity(m);
  for (std::size_t i = 0; i + 1 < m; ++i) j.set(i, i + 1, true);
  return j;
}

TubeLabel make_label(const TubeId& id, int j, std::size_t m) {
  if (m == 0) throw Error("invalid tube id");
  if (id.special) {
    if (j != 1 && j != 2) throw Error("invalid tube id");
    return TubeLabel{id, j, m};
  }
  TubeId::homogeneous(id.f);  // validates
  return TubeLabel{id, 0, m};
}

namespace {

// [I 0], [0 I], [I I], [I F]
LambdaRep pencil_rep(const F2Matrix& F) {
  const std::size_t h = F.rows();
  const F2Matrix I = F2Matrix::identity(h), Z(h, h);
  return LambdaRep(2 * h, {hstack(I, Z), hstack(Z, I), hstack(I, I), hstack(I, F)});
}

// T^{1,1}_{2m-1}; centre coordinates (x, y, z) with x, y in k^{m-1}
LambdaRep odd_special_rep(std::size_t m) {
  const std::size_t h = m - 1, dot = 2 * m - 1;
  std::array<F2Matrix, 4> f = {F2Matrix(m, dot), F2Matrix(m, dot), F2Matrix(h, dot), F2Matrix(h, dot)};
  const F2Matrix J = jordan_one(h);
  for (std::size_t i = 0; i < h; ++i) {
    f[0].set(i, i, true);
    f[1].set(i, h + i, true);
    f[2].set(i, i, true);
    f[2].set(i, h + i, true);
    f[3].set(i, i, true);
    for (std::size_t c = 0; c < h; ++c)
      if (J.get(i, c)) f[3].set(i, h + c, true);
  }
  f[0].set(h, dot - 1, true);
  f[1].set(h, dot - 1, true);
  if (h > 0) f[3].set(h - 1, dot - 1, true);
  return LambdaRep(dot, f);
}

// moves the (1, 1) pattern to (lambda, j)
LambdaRep place_special(LambdaRep V, SpecialPoint p, int j) {
  if (j == 2) V = swap_vertices(swap_vertices(V, 0, 2), 1, 3);
  if (p == SpecialPoint::zero) V = swap_vertices(V, 1, 3);
  if (p == SpecialPoint::infinity) V = swap_vertices(V, 1, 2);
  return V;
}

}  // namespace

LambdaRep tube_rep(const TubeLabel& raw) {
  const TubeLabel label = make_label(raw.id, raw.j, raw.m);
  if (!label.id.special) return pencil_rep(frobenius_matrix(label.id.f, static_cast<unsigned>(label.m)));
  if (label.m % 2 == 1) return place_special(odd_special_rep((label.m + 1) / 2), label.id.lambda, label.j);
  // the Jordan pencil has socle T^{1,1}_1 and top T^{1,2}_1; the label is
  // read off the top, so it sits in the j = 2 position
  return place_special(pencil_rep(jordan_one(label.m / 2)), label.id.lambda, 3 - label.j);
}

DimVector expected_dims(const TubeLabel& raw) {
  const TubeLabel label = make_label(raw.id, raw.j, raw.m);
  DimVector d;
  if (!label.id.special) {
    const std::size_t h = static_cast<std::size_t>(label.id.f.degree()) * label.m;
    d.dot = 2 * h;
    d.d = {h, h, h, h};
    return d;
  }
  const std::size_t n = label.m, h = (n + 1) / 2;
  d.dot = n;
  if (n % 2 == 0) {
    d.d = {h, h, h, h};
    return d;
  }
  std::array<std::size_t, 4> v = {h, h, h - 1, h - 1};
  if (label.j == 2) {
    std::swap(v[0], v[2]);
    std::swap(v[1], v[3]);
  }
  if (label.id.lambda == SpecialPoint::zero) std::swap(v[1], v[3]);
  if (label.id.lambda == SpecialPoint::infinity) std::swap(v[1], v[2]);
  d.d = v;
  return d;
}

TubeLabel expected_layer(const TubeLabel& label, std::size_t k, std::size_t l) {
  if (k + l > label.m || l == 0) throw Error("layer out of range");
  if (!label.id.special) return TubeLabel{label.id, 0, l};
  return TubeLabel{label.id, k % 2 == 0 ? label.j : 3 - label.j, l};
}

namespace {

RepMorphism random_morphism(const std::vector<RepMorphism>& basis, Rng& rng) {
  RepMorphism r = basis.front();
  for (auto& m : r.v) m = F2Matrix(m.rows(), m.cols());
  for (const auto& b : basis)
    if (rng() & 1)
      for (std::size_t v = 0; v < 5; ++v) r.v[v] += b.v[v];
  return r;
}

bool is_epi(const RepMorphism& phi) {
  return std::all_of(phi.v.begin(), phi.v.end(), [](const F2Matrix& m) { return m.rank() == m.rows(); });
}

// Some epimorphism onto a simple regular representation, by random search.
std::optional<RepMorphism> epi_onto(const LambdaRep& W, const LambdaRep& S, Rng& rng) {
  auto basis = hom_reps(W, S);
  if (basis.empty()) return std::nullopt;
  for (int attempt = 0; attempt < 256; ++attempt) {
    RepMorphism phi = random_morphism(basis, rng);
    if (is_epi(phi)) return phi;
  }
  return std::nullopt;
}

// Subrepresentation flags V = V_0 > V_1 > ... > V_{m-1}, each the kernel of
// an epimorphism onto the top. Entry k holds the embeddings of V_k.
std::vector<std::array<F2Matrix, 5>> rep_flag(const TubeLabel& label, const LambdaRep& V) {
  std::vector<std::array<F2Matrix, 5>> flags;
  std::array<F2Matrix, 5> E;
  E[0] = F2Matrix::identity(V.dot);
  for (std::size_t s = 0; s < 4; ++s) E[1 + s] = F2Matrix::identity(V.dim(s));
  flags.push_back(E);
  LambdaRep W = V;
  Rng rng(0);
  for (std::size_t k = 1; k < label.m; ++k) {
    std::vector<LambdaRep> tops;
    if (label.id.special) {
      tops.push_back(tube_rep(TubeLabel{label.id, 1, 1}));
      tops.push_back(tube_rep(TubeLabel{label.id, 2, 1}));
    } else {
      tops.push_back(tube_rep(TubeLabel{label.id, 0, 1}));
    }
    std::optional<RepMorphism> epi;
    for (const auto& S : tops)
      if ((epi = epi_onto(W, S, rng))) break;
    if (!epi) throw Error("no epimorphism onto the top of a tube module");
    std::array<F2Matrix, 5> ker;
    for (std::size_t v = 0; v < 5; ++v) ker[v] = epi->v[v].nullspace();
    std::array<F2Matrix, 4> f;
    for (std::size_t s = 0; s < 4; ++s) {
      F2Matrix P = complete_basis(ker[1 + s]);
      F2Matrix img = P.inverse() * W.f[s] * ker[0];
      const std::size_t r = ker[1 + s].cols();
      if (!img.block(r, 0, img.rows() - r, img.cols()).is_zero()) throw Error("kernel is not a subrepresentation");
      f[s] = img.block(0, 0, r, img.cols());
    }
    W = LambdaRep(ker[0].cols(), f);
    for (std::size_t v = 0; v < 5; ++v) E[v] = E[v] * ker[v];
    flags.push_back(E);
  }
  return flags;
}

}  // namespace

std::vector<ZLattice> chain_of(const TubeModule& T) {
  const LambdaRep& V = T.rep;
  const std::size_t n = T.lattice.rank();
  auto flags = rep_flag(T.label, V);
  const std::size_t m = T.label.m;

  // a basis of each sign vertex adapted to the flag, smallest space first
  std::array<F2Matrix, 4> P;
  std::array<std::size_t, 4> off{};
  std::size_t total = 0;
  IntMatrix Qinv_t(0, 0);
  for (std::size_t s = 0; s < 4; ++s) {
    off[s] = total;
    total += V.dim(s);
    F2Matrix cur = flags[m - 1][1 + s].column_space();
    for (std::size_t k = m - 1; k-- > 0;) cur = hstack(cur, flags[k][1 + s]).column_space();
    P[s] = cur;
    Qinv_t = direct_sum(Qinv_t, unimodular_inverse(lift_invertible(P[s])).transpose());
  }
  IntMatrix Xn = T.ambient * Qinv_t;

  std::vector<ZLattice> chain;
  chain.push_back(ZLattice::full(n));
  for (std::size_t k = 1; k < m; ++k) {
    const auto& E = flags[k];
    IntMatrix gens(0, total);
    for (std::size_t s = 0; s < 4; ++s)
      for (std::size_t c = 0; c < E[1 + s].cols(); ++c) {
        IntMatrix e(1, total);
        e(0, off[s] + c) = 2;
        gens = vstack(gens, e);
      }
    for (std::size_t c = 0; c < E[0].cols(); ++c) {
      IntMatrix row(1, total);
      auto u = E[0].col(c);
      for (std::size_t s = 0; s < 4; ++s) {
        auto img = P[s].inverse() * (V.f[s] * std::span<const std::uint8_t>(u));
        for (std::size_t i = 0; i < img.size(); ++i)
          if (img[i]) row(0, off[s] + i) = 1;
      }
      gens = vstack(gens, row);
    }
    ZLattice L = ZLattice::from_generators(gens);
    auto Y = solve_left(Xn, L.basis());
    if (!Y) throw Error("chain member not inside the lattice");
    chain.push_back(ZLattice::from_generators(*Y));
  }
  chain.push_back(ZLattice::zero(n));
  return chain;
}

TubeModule tube_module(const TubeLabel& raw) {
  TubeModule T;
  T.label = make_label(raw.id, raw.j, raw.m);
  T.rep = tube_rep(T.label);
  T.lattice = lattice_of(T.rep, T.ambient);
  T.chain = chain_of(T);
  return T;
}

TubeModule tube_module(const TubeId& id, int j, std::size_t m) { return tube_module(make_label(id, j, m)); }

KLattice sublattice_module(const KLattice& M, const ZLattice& L) {
  const IntMatrix& B = L.basis();
  auto act = [&](const IntMatrix& g) {
    auto Y = solve_left(B, B * g.transpose());
    if (!Y) throw Error("sublattice not invariant");
    return Y->transpose();
  };
  return KLattice(act(M.a()), act(M.b()));
}

KLattice quotient_lattice(const KLattice& M, const ZLattice& L1, const ZLattice& L2) {
  if (!L1.contains_lattice(L2)) throw Error("not a sublattice");
  const IntMatrix& B1 = L1.basis();
  const std::size_t r1 = L1.rank(), r2 = L2.rank();
  IntMatrix C = L1.coordinates_of_rows(L2.basis());
  IntMatrix W = IntMatrix::identity(r1), Winv = W;
  if (r2 > 0) {
    SmithForm S = smith_form(C);
    for (const Int& d : S.diagonal())
      if (d != 1) throw Error("quotient has torsion");
    W = S.Vinv;
    Winv = S.V;
  }
  // rows of W are a basis of L1 (in its coordinates) whose first r2 span L2
  auto act = [&](const IntMatrix& g) {
    auto R = solve_left(B1, B1 * g.transpose());
    if (!R) throw Error("sublattice not invariant");
    IntMatrix Rn = W * *R * Winv;
    return Rn.block(r2, r2, r1 - r2, r1 - r2).transpose();
  };
  return KLattice(act(M.a()), act(M.b()));
}

std::vector<ChainLayer> chain_layers(const TubeModule& T) {
  std::vector<ChainLayer> out;
  const std::size_t m = T.label.m;
  for (std::size_t l = 1; l <= m; ++l)
    for (std::size_t k = 0; k + l <= m; ++k) {
      ChainLayer layer{k, l, std::nullopt};
      KLattice Q = quotient_lattice(T.lattice, T.chain[k], T.chain[k + l]);
      LambdaRep V = phi(Q);
      if (decompose(V).size() == 1) layer.label = identify_tube(V);
      out.push_back(layer);
    }
  return out;
}

KLattice syzygy(const KLattice& M) {
  if (!is_A_lattice(M)) throw Error("not regular");
  PhiData pd = phi_data(M);
  const DimVector d = pd.rep.dims();
  if (d.plus() != 2 * d.dot) throw Error("not regular");
  const std::size_t n = M.rank(), g = d.dot;
  const IntMatrix& X = pd.frame.coords;
  auto Y = solve_left(X, pd.dot_basis.lift());
  if (!Y) throw Error("generator outside the lattice");
  const std::array<IntMatrix, 4> act = {IntMatrix::identity(n), M.a(), M.b(), M.a() * M.b()};
  IntMatrix Pi(n, 4 * g);
  for (std::size_t k = 0; k < g; ++k) {
    IntMatrix y = Y->block(k, 0, 1, n).transpose();
    for (std::size_t h = 0; h < 4; ++h) Pi.set_block(0, 4 * k + h, act[h] * y);
  }
  SmithForm S = smith_form(Pi);
  if (S.rank() != n) throw Error("not regular");
  for (const Int& x : S.diagonal())
    if (x != 1) throw Error("not regular");
  KLattice R = KLattice::regular();
  IntMatrix Ra(0, 0), Rb(0, 0);
  for (std::size_t k = 0; k < g; ++k) {
    Ra = direct_sum(Ra, R.a());
    Rb = direct_sum(Rb, R.b());
  }
  IntMatrix K = right_kernel(Pi);
  const IntMatrix Kt = K.transpose();
  auto restrict = [&](const IntMatrix& A) {
    auto Z = solve_left(Kt, Kt * A.transpose());
    if (!Z) throw Error("kernel not invariant");
    return Z->transpose();
  };
  return KLattice(restrict(Ra), restrict(Rb));
}

namespace {

// integer matrices commuting with both actions, as columns of a kernel
std::vector<IntMatrix> hom_lattice_direct_impl(const KLattice& M, const KLattice& N) {
  const std::size_t p = N.rank(), q = M.rank(), nv = p * q;
  IntMatrix L(2 * nv, nv);
  std::size_t row = 0;
  for (int which = 0; which < 2; ++which) {
    const IntMatrix& A = which == 0 ? M.a() : M.b();
    const IntMatrix& B = which == 0 ? N.a() : N.b();
    // (X A - B X)(i, j) = sum_k X(i,k) A(k,j) - sum_k B(i,k) X(k,j)
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < q; ++j, ++row) {
        for (std::size_t k = 0; k < q; ++k) L(row, i * q + k) += A(k, j);
        for (std::size_t k = 0; k < p; ++k) L(row, k * q + j) -= B(i, k);
      }
  }
  IntMatrix K = right_kernel(L);
  std::vector<IntMatrix> out;
  for (std::size_t c = 0; c < K.cols(); ++c) {
    IntMatrix X(p, q);
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < q; ++j) X(i, j) = K(i * q + j, c);
    out.push_back(X);
  }
  return out;
}

}  // namespace

std::vector<IntMatrix> hom_lattice_direct(const KLattice& M, const KLattice& N) {
  return hom_lattice_direct_impl(M, N);
}

std::vector<IntMatrix> hom_lattice(const KLattice& M, const KLattice& N) {
  if (!is_A_lattice(M) || !is_A_lattice(N)) return hom_lattice_direct_impl(M, N);
  // a K-map extends to the sharp lattices, where it is block diagonal; it
  // maps M into N iff the reduction carries M/2M# into N/2N#.
  PhiData pm = phi_data(M), pn = phi_data(N);
  const SharpFrame &fm = pm.frame, &fn = pn.frame;
  std::array<std::size_t, 4> voff{};
  std::size_t nv = 0;
  for (std::size_t s = 0; s < 4; ++s) {
    voff[s] = nv;
    nv += fm.dims[s] * fn.dims[s];
  }
  auto var = [&](std::size_t s, std::size_t i, std::size_t j) { return voff[s] + i * fn.dims[s] + j; };
  F2Matrix ann = F2Matrix::reduce(fn.coords).nullspace();  // y in the row space iff y * ann = 0
  F2System sys(nv);
  for (std::size_t r = 0; r < pm.dot_basis.rows(); ++r)
    for (std::size_t c = 0; c < ann.cols(); ++c) {
      std::size_t e = sys.add_equation();
      for (std::size_t s = 0; s < 4; ++s)
        for (std::size_t i = 0; i < fm.dims[s]; ++i) {
          if (!pm.dot_basis.get(r, fm.offset(s) + i)) continue;
          for (std::size_t j = 0; j < fn.dims[s]; ++j)
            if (ann.get(fn.offset(s) + j, c)) sys.toggle(e, var(s, i, j));
        }
    }
  IntMatrix gens = IntMatrix::identity(nv) * Int(2);
  for (const auto& sol : sys.nullspace()) {
    IntMatrix row(1, nv);
    for (std::size_t v = 0; v < nv; ++v)
      if (sol[v]) row(0, v) = 1;
    gens = vstack(gens, row);
  }
  ZLattice H = ZLattice::from_generators(gens);
  std::vector<IntMatrix> out;
  for (std::size_t r = 0; r < H.rank(); ++r) {
    IntMatrix Q(fm.dims[0] + fm.dims[1] + fm.dims[2] + fm.dims[3], fn.dims[0] + fn.dims[1] + fn.dims[2] + fn.dims[3]);
    for (std::size_t s = 0; s < 4; ++s)
      for (std::size_t i = 0; i < fm.dims[s]; ++i)
        for (std::size_t j = 0; j < fn.dims[s]; ++j) Q(fm.offset(s) + i, fn.offset(s) + j) = H.basis()(r, var(s, i, j));
    auto Y = solve_left(fn.coords, fm.coords * Q);
    if (!Y) throw Error("hom_lattice: map leaves the target");
    out.push_back(Y->transpose());
  }
  return out;
}

namespace {

// A block diagonal endomorphism of Z^{d_+} flattened block by block.
struct BlockLayout {
  std::array<std::size_t, 4> dims{};
  std::array<std::size_t, 4> voff{};
  std::array<std::size_t, 4> off{};
  std::size_t nv = 0;

  explicit BlockLayout(const DimVector& d) {
    std::size_t o = 0;
    for (std::size_t s = 0; s < 4; ++s) {
      dims[s] = d.d[s];
      voff[s] = nv;
      off[s] = o;
      nv += dims[s] * dims[s];
      o += dims[s];
    }
  }
  std::size_t var(std::size_t s, std::size_t i, std::size_t j) const { return voff[s] + i * dims[s] + j; }

  IntMatrix flatten(const std::array<IntMatrix, 4>& blocks) const {
    IntMatrix row(1, nv);
    for (std::size_t s = 0; s < 4; ++s)
      for (std::size_t i = 0; i < dims[s]; ++i)
        for (std::size_t j = 0; j < dims[s]; ++j) row(0, var(s, i, j)) = blocks[s](i, j);
    return row;
  }

  // the order generated by `rows` together with 2 Mat
  ZLattice order(const IntMatrix& rows) const {
    return ZLattice::from_generators(vstack(IntMatrix::identity(nv) * Int(2), rows));
  }
};

std::vector<Int> int_poly_mul(const std::vector<Int>& x, const std::vector<Int>& y) {
  std::vector<Int> r(x.size() + y.size() - 1, Int(0));
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) r[i + j] += x[i] * y[j];
  return r;
}

// companion of a monic integer polynomial (coefficients low to high)
IntMatrix int_companion(const std::vector<Int>& g) {
  const std::size_t n = g.size() - 1;
  IntMatrix c(n, n);
  for (std::size_t i = 1; i < n; ++i) c(i, i - 1) = 1;
  for (std::size_t i = 0; i < n; ++i) c(i, n - 1) = -g[i];
  return c;
}

IntMatrix int_power(const IntMatrix& a, std::size_t e) {
  IntMatrix r = IntMatrix::identity(a.rows());
  for (std::size_t k = 0; k < e; ++k) r = r * a;
  return r;
}

// span of the powers theta_s^i (i < count) placed on every sign vertex
IntMatrix power_rows(const BlockLayout& lay, const std::array<IntMatrix, 4>& theta, std::size_t count) {
  IntMatrix rows(0, lay.nv);
  for (std::size_t i = 0; i < count; ++i) {
    std::array<IntMatrix, 4> blocks;
    for (std::size_t s = 0; s < 4; ++s) blocks[s] = int_power(theta[s], i);
    rows = vstack(rows, lay.flatten(blocks));
  }
  return rows;
}

std::size_t nilpotency_index(const F2Matrix& a) {
  if (a.rows() == 0) return 0;
  F2Matrix p = F2Matrix::identity(a.rows());
  for (std::size_t k = 0; k <= a.rows(); ++k) {
    if (p.is_zero()) return k;
    p = p * a;
  }
  return a.rows() + 1;  // not nilpotent
}

}  // namespace

EndRingReport end_ring_check(const TubeModule& T) {
  EndRingReport rep;
  const LambdaRep& V = T.rep;
  const BlockLayout lay(V.dims());

  // lifted End_Lambda
  auto basis = hom_reps(V, V);
  rep.end_lambda_dim = basis.size();
  IntMatrix lifted(0, lay.nv);
  for (const auto& phi : basis) {
    std::array<IntMatrix, 4> blocks;
    for (std::size_t s = 0; s < 4; ++s) blocks[s] = phi.v[1 + s].lift();
    lifted = vstack(lifted, lay.flatten(blocks));
  }
  ZLattice from_lift = lay.order(lifted);

  // stabiliser of the image of f_+ among block diagonal matrices mod 2
  const F2Matrix Fp = V.stacked();
  const F2Matrix ann = Fp.transpose().nullspace();  // columns w with w^T Fp = 0
  F2System sys(lay.nv);
  for (std::size_t r = 0; r < ann.cols(); ++r)
    for (std::size_t c = 0; c < V.dot; ++c) {
      std::size_t e = sys.add_equation();
      for (std::size_t s = 0; s < 4; ++s)
        for (std::size_t i = 0; i < lay.dims[s]; ++i) {
          if (!ann.get(lay.off[s] + i, r)) continue;
          for (std::size_t j = 0; j < lay.dims[s]; ++j)
            if (Fp.get(lay.off[s] + j, c)) sys.toggle(e, lay.var(s, i, j));
        }
    }
  IntMatrix stab(0, lay.nv);
  for (const auto& sol : sys.nullspace()) {
    IntMatrix row(1, lay.nv);
    for (std::size_t v = 0; v < lay.nv; ++v)
      if (sol[v]) row(0, v) = 1;
    stab = vstack(stab, row);
  }
  ZLattice direct = lay.order(stab);
  rep.lifted_equals_direct = from_lift == direct;

  // closed forms, each with two integer lifts
  std::array<ZLattice, 2> stated;
  const TubeLabel& L = T.label;
  if (!L.id.special) {
    for (int variant = 0; variant < 2; ++variant) {
      std::vector<Int> f;
      for (int c : L.id.f.coeffs()) f.push_back(Int(c));
      if (variant == 1)
        for (std::size_t i = 0; i + 1 < f.size(); ++i)
          if (f[i] != 0) f[i] = -1;
      std::vector<Int> g = {Int(1)};
      for (std::size_t k = 0; k < L.m; ++k) g = int_poly_mul(g, f);
      IntMatrix C = int_companion(g);
      stated[variant] = lay.order(power_rows(lay, {C, C, C, C}, C.rows()));
    }
    rep.detail = "closed form: polynomials in the companion of a lift of f^m";
  } else if (L.m % 2 == 0) {
    const std::size_t h = L.m / 2;
    IntMatrix N(h, h);
    for (std::size_t i = 0; i + 1 < h; ++i) N(i, i + 1) = 1;
    for (int variant = 0; variant < 2; ++variant) {
      IntMatrix Nv = variant == 0 ? N : N + IntMatrix::identity(h) * Int(2);
      stated[variant] = lay.order(power_rows(lay, {Nv, Nv, Nv, Nv}, h));
    }
    rep.detail = "closed form: polynomials in a lift of J - 1";
  } else {
    const std::size_t h = (L.m + 1) / 2;
    Rng rng(0);
    std::optional<RepMorphism> theta;
    for (int attempt = 0; attempt < 512 && !theta && !basis.empty(); ++attempt) {
      RepMorphism t = random_morphism(basis, rng);
      bool good = true;
      for (std::size_t s = 0; s < 4 && good; ++s) good = nilpotency_index(t.v[1 + s]) == lay.dims[s];
      if (good) theta = t;
    }
    if (!theta) {
      rep.detail = "no endomorphism with the required nilpotency indices";
      rep.lift_independent = false;
      return rep;
    }
    for (int variant = 0; variant < 2; ++variant) {
      std::array<IntMatrix, 4> th;
      for (std::size_t s = 0; s < 4; ++s) {
        th[s] = theta->v[1 + s].lift();
        if (variant == 1) th[s] = th[s] + IntMatrix::identity(lay.dims[s]) * Int(2);
      }
      stated[variant] = lay.order(power_rows(lay, th, h));
    }
    rep.detail = "closed form: polynomials in a lift of a radical generator";
  }
  rep.equals_stated = stated[0] == from_lift;
  rep.lift_independent = stated[0] == stated[1];
  return rep;
}

CrossTubeReport hom_cross_tube_check(const TubeModule& M, const TubeModule& N) {
  if (M.label.id == N.label.id) throw Error("same tube");
  CrossTubeReport rep;
  const IntMatrix& XN = phi_data(N.lattice).frame.coords;
  for (const auto& psi : hom_lattice(M.lattice, N.lattice)) {
    ++rep.generators;
    bool in2N = true;
    for (std::size_t i = 0; i < psi.rows() && in2N; ++i)
      for (std::size_t j = 0; j < psi.cols() && in2N; ++j)
        if (mpz_odd_p(psi(i, j).get_mpz_t())) in2N = false;
    if (in2N) ++rep.into_2N;
    IntMatrix sharp = psi.transpose() * XN;
    bool in2sharp = true;
    for (std::size_t i = 0; i < sharp.rows() && in2sharp; ++i)
      for (std::size_t j = 0; j < sharp.cols() && in2sharp; ++j)
        if (mpz_odd_p(sharp(i, j).get_mpz_t())) in2sharp = false;
    if (in2sharp) ++rep.into_2Nsharp;
  }
  return rep;
}

KLattice twist(const KLattice& M, S3Generator which) {
  if (which == S3Generator::tau2) return KLattice(M.b(), M.a());
  return KLattice(M.a() * M.b(), M.b());
}

}  // namespace klein
