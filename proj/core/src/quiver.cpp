#include "klein/quiver.hpp"

#include <algorithm>
#include <tuple>

namespace klein {

LambdaRep::LambdaRep(std::size_t dot_, std::array<F2Matrix, 4> f_) : dot(dot_), f(std::move(f_)) {
  for (const auto& m : f)
    if (m.cols() != dot) throw Error("representation map has wrong number of columns");
}

DimVector LambdaRep::dims() const {
  DimVector d;
  d.dot = dot;
  for (std::size_t s = 0; s < 4; ++s) d.d[s] = f[s].rows();
  return d;
}

F2Matrix LambdaRep::stacked() const {
  F2Matrix out(0, dot);
  for (const auto& m : f) out = vstack(out, m);
  return out;
}

LambdaRep direct_sum(const LambdaRep& x, const LambdaRep& y) {
  std::array<F2Matrix, 4> f;
  for (std::size_t s = 0; s < 4; ++s) f[s] = direct_sum(x.f[s], y.f[s]);
  return LambdaRep(x.dot + y.dot, f);
}

LambdaRep swap_vertices(const LambdaRep& V, std::size_t s, std::size_t t) {
  LambdaRep W = V;
  std::swap(W.f[s], W.f[t]);
  return W;
}

LambdaRep transport(const LambdaRep& V, const std::array<F2Matrix, 5>& P) {
  std::array<F2Matrix, 4> f;
  for (std::size_t s = 0; s < 4; ++s) f[s] = P[1 + s].inverse() * V.f[s] * P[0];
  return LambdaRep(V.dot, f);
}

bool is_morphism(const RepMorphism& phi, const LambdaRep& V, const LambdaRep& W) {
  if (phi.v[0].rows() != W.dot || phi.v[0].cols() != V.dot) return false;
  for (std::size_t s = 0; s < 4; ++s) {
    const F2Matrix& p = phi.v[1 + s];
    if (p.rows() != W.dim(s) || p.cols() != V.dim(s)) return false;
    if (!(p * V.f[s] == W.f[s] * phi.v[0])) return false;
  }
  return true;
}

RepMorphism compose(const RepMorphism& psi, const RepMorphism& phi) {
  RepMorphism r;
  for (std::size_t v = 0; v < 5; ++v) r.v[v] = psi.v[v] * phi.v[v];
  return r;
}

RepMorphism identity_morphism(const LambdaRep& V) {
  RepMorphism r;
  r.v[0] = F2Matrix::identity(V.dot);
  for (std::size_t s = 0; s < 4; ++s) r.v[1 + s] = F2Matrix::identity(V.dim(s));
  return r;
}

bool is_iso(const RepMorphism& phi) {
  return std::all_of(phi.v.begin(), phi.v.end(), [](const F2Matrix& m) { return m.is_invertible(); });
}

bool in_category_R(const LambdaRep& V) {
  for (const auto& m : V.f)
    if (m.rank() != m.rows()) return false;
  return V.stacked().rank() == V.dot;
}

LambdaRep random_rep_in_R(std::size_t max_dot, Rng& rng) {
  std::uniform_int_distribution<std::size_t> pick_dot(1, std::max<std::size_t>(1, max_dot));
  for (;;) {
    const std::size_t dot = pick_dot(rng);
    std::uniform_int_distribution<std::size_t> pick_d(0, dot);
    std::array<F2Matrix, 4> f;
    for (auto& m : f) {
      do m = F2Matrix::random(pick_d(rng), dot, rng);
      while (m.rank() != m.rows());
    }
    LambdaRep V(dot, f);
    if (in_category_R(V)) return V;
  }
}

PhiData phi_data(const KLattice& M) {
  if (!is_A_lattice(M)) throw Error("not an A-lattice");
  PhiData d;
  d.frame = sharp(M);
  F2Matrix x = F2Matrix::reduce(d.frame.coords);
  d.dot_basis = x.transpose().column_space().transpose();
  const std::size_t dot = d.dot_basis.rows();
  F2Matrix fplus = d.dot_basis.transpose();
  std::array<F2Matrix, 4> f;
  for (std::size_t s = 0; s < 4; ++s) f[s] = fplus.block(d.frame.offset(s), 0, d.frame.dims[s], dot);
  d.rep = LambdaRep(dot, f);
  return d;
}

LambdaRep phi(const KLattice& M) { return phi_data(M).rep; }

namespace {

IntMatrix block_diagonal_lift(const RepMorphism& phi) {
  IntMatrix p(0, 0);
  for (std::size_t s = 0; s < 4; ++s) p = direct_sum(p, phi.v[1 + s].lift());
  return p;
}

IntMatrix sign_matrix(const std::array<std::size_t, 4>& dims, bool for_b) {
  std::size_t n = dims[0] + dims[1] + dims[2] + dims[3];
  IntMatrix S(n, n);
  std::size_t k = 0;
  for (std::size_t s = 0; s < 4; ++s)
    for (std::size_t i = 0; i < dims[s]; ++i, ++k) S(k, k) = for_b ? kSignPairs[s].beta : kSignPairs[s].alpha;
  return S;
}

}  // namespace

RepMorphism phi_of_morphism(const IntMatrix& psi, const PhiData& M, const PhiData& N) {
  // Q with X_M Q = psi^T X_N is the induced map on sharp coordinates
  IntMatrix Z = psi.transpose() * N.frame.coords;
  auto Qt = solve_left(M.frame.coords.transpose(), Z.transpose());
  if (!Qt) throw Error("map does not extend to the sharp lattices");
  IntMatrix Q = Qt->transpose();
  RepMorphism r;
  for (std::size_t s = 0; s < 4; ++s) {
    IntMatrix blk = Q.block(M.frame.offset(s), N.frame.offset(s), M.frame.dims[s], N.frame.dims[s]);
    r.v[1 + s] = F2Matrix::reduce(blk).transpose();
  }
  F2Matrix img = M.dot_basis * F2Matrix::reduce(Q);  // rows in N's sharp coordinates
  F2Matrix bt = N.dot_basis.transpose();
  r.v[0] = F2Matrix(N.rep.dot, M.rep.dot);
  for (std::size_t k = 0; k < M.rep.dot; ++k) {
    auto c = bt.solve(img.row(k));
    if (!c) throw Error("induced map leaves M/2M#");
    r.v[0].set_col(k, *c);
  }
  return r;
}

KLattice lattice_of(const LambdaRep& V) {
  IntMatrix unused;
  return lattice_of(V, unused);
}

KLattice lattice_of(const LambdaRep& V, IntMatrix& ambient_basis) {
  if (!in_category_R(V)) throw Error("not in category R");
  const DimVector d = V.dims();
  const std::size_t n = d.plus();
  IntMatrix gens = vstack(IntMatrix::identity(n) * Int(2), V.stacked().transpose().lift());
  ZLattice L = ZLattice::from_generators(gens);
  const IntMatrix& B = L.basis();
  auto act = [&](bool for_b) {
    auto Y = solve_left(B, B * sign_matrix(d.d, for_b));
    if (!Y) throw Error("lattice_of: lattice not invariant");
    return Y->transpose();
  };
  ambient_basis = B;
  return KLattice(act(false), act(true));
}

std::vector<RepMorphism> hom_reps(const LambdaRep& V, const LambdaRep& W) {
  // unknowns: phi_dot (W.dot x V.dot), then phi_s (W.d_s x V.d_s)
  std::array<std::size_t, 5> off{}, rows{}, cols{};
  rows[0] = W.dot;
  cols[0] = V.dot;
  for (std::size_t s = 0; s < 4; ++s) {
    rows[1 + s] = W.dim(s);
    cols[1 + s] = V.dim(s);
  }
  std::size_t nvars = 0;
  for (std::size_t v = 0; v < 5; ++v) {
    off[v] = nvars;
    nvars += rows[v] * cols[v];
  }
  auto var = [&](std::size_t v, std::size_t i, std::size_t j) { return off[v] + i * cols[v] + j; };
  F2System sys(nvars);
  for (std::size_t s = 0; s < 4; ++s)
    for (std::size_t r = 0; r < W.dim(s); ++r)
      for (std::size_t c = 0; c < V.dot; ++c) {
        std::size_t e = sys.add_equation();
        for (std::size_t k = 0; k < V.dim(s); ++k)
          if (V.f[s].get(k, c)) sys.toggle(e, var(1 + s, r, k));
        for (std::size_t k = 0; k < W.dot; ++k)
          if (W.f[s].get(r, k)) sys.toggle(e, var(0, k, c));
      }
  std::vector<RepMorphism> out;
  for (const auto& sol : sys.nullspace()) {
    RepMorphism m;
    for (std::size_t v = 0; v < 5; ++v) {
      m.v[v] = F2Matrix(rows[v], cols[v]);
      for (std::size_t i = 0; i < rows[v]; ++i)
        for (std::size_t j = 0; j < cols[v]; ++j) m.v[v].set(i, j, sol[var(v, i, j)] != 0);
    }
    out.push_back(std::move(m));
  }
  return out;
}

IntMatrix lift_morphism(const RepMorphism& phi, const PhiData& M, const PhiData& N) {
  if (!is_morphism(phi, M.rep, N.rep)) throw Error("morphism incompatible with representations");
  IntMatrix Z = M.frame.coords * block_diagonal_lift(phi).transpose();
  auto Y = solve_left(N.frame.coords, Z);
  if (!Y) throw Error("morphism incompatible with representations");
  return Y->transpose();
}

IntMatrix lift_morphism(const RepMorphism& phi, const KLattice& M, const KLattice& N) {
  return lift_morphism(phi, phi_data(M), phi_data(N));
}

bool is_equivariant(const IntMatrix& psi, const KLattice& M, const KLattice& N) {
  return psi.rows() == N.rank() && psi.cols() == M.rank() && psi * M.a() == N.a() * psi &&
         psi * M.b() == N.b() * psi;
}

namespace {

RepMorphism zero_morphism(const LambdaRep& V, const LambdaRep& W) {
  RepMorphism r;
  r.v[0] = F2Matrix(W.dot, V.dot);
  for (std::size_t s = 0; s < 4; ++s) r.v[1 + s] = F2Matrix(W.dim(s), V.dim(s));
  return r;
}

RepMorphism random_combination(const std::vector<RepMorphism>& basis, const LambdaRep& V, const LambdaRep& W,
                               Rng& rng) {
  RepMorphism r = zero_morphism(V, W);
  if (basis.empty()) return r;
  bool any = false;
  while (!any) {
    for (const auto& b : basis)
      if (rng() & 1) {
        any = true;
        for (std::size_t v = 0; v < 5; ++v) r.v[v] += b.v[v];
      }
  }
  return r;
}

std::size_t total_dim(const LambdaRep& V) { return V.dot + V.dims().plus(); }

RepMorphism power(const RepMorphism& phi, std::size_t e) {
  RepMorphism r = phi;
  for (std::size_t k = 1; k < e; ++k) r = compose(r, phi);
  return r;
}

bool all_zero(const RepMorphism& phi) {
  return std::all_of(phi.v.begin(), phi.v.end(), [](const F2Matrix& m) { return m.is_zero(); });
}

// Finds an endomorphism that is neither nilpotent nor invertible and
// returns its stable power; nullopt if the sampled ring looks local.
std::optional<RepMorphism> splitting_endomorphism(const LambdaRep& V, Rng& rng) {
  auto basis = hom_reps(V, V);
  if (basis.size() <= 1) return std::nullopt;
  const std::size_t n = std::max<std::size_t>(1, total_dim(V));
  for (int attempt = 0; attempt < 64; ++attempt) {
    RepMorphism phi = random_combination(basis, V, V, rng);
    RepMorphism p = power(phi, n);
    if (all_zero(p) || is_iso(p)) continue;
    return p;
  }
  return std::nullopt;
}

void split(const LambdaRep& V, Rng& rng, std::vector<Piece>& out) {
  if (total_dim(V) == 0) return;
  auto p = splitting_endomorphism(V, rng);
  if (!p) {
    out.push_back({V, identity_morphism(V), identity_morphism(V)});
    return;
  }
  // Fitting decomposition: V = Ker p + Im p at every vertex
  std::array<F2Matrix, 5> P, Pinv;
  std::array<std::size_t, 5> k{};
  for (std::size_t v = 0; v < 5; ++v) {
    F2Matrix ker = p->v[v].nullspace();
    F2Matrix img = p->v[v].column_space();
    k[v] = ker.cols();
    P[v] = hstack(ker, img);
    Pinv[v] = P[v].inverse();
  }
  LambdaRep T = transport(V, P);
  std::array<LambdaRep, 2> parts;
  std::array<RepMorphism, 2> incl, proj;
  for (int part = 0; part < 2; ++part) {
    std::array<F2Matrix, 4> f;
    std::size_t dot0 = part == 0 ? 0 : k[0];
    std::size_t dotn = part == 0 ? k[0] : V.dot - k[0];
    for (std::size_t s = 0; s < 4; ++s) {
      std::size_t r0 = part == 0 ? 0 : k[1 + s];
      std::size_t rn = part == 0 ? k[1 + s] : V.dim(s) - k[1 + s];
      f[s] = T.f[s].block(r0, dot0, rn, dotn);
    }
    parts[part] = LambdaRep(dotn, f);
    for (std::size_t v = 0; v < 5; ++v) {
      std::size_t total = P[v].rows();
      std::size_t c0 = part == 0 ? 0 : k[v];
      std::size_t cn = part == 0 ? k[v] : total - k[v];
      incl[part].v[v] = P[v].block(0, c0, total, cn);
      proj[part].v[v] = Pinv[v].block(c0, 0, cn, total);
    }
  }
  for (int part = 0; part < 2; ++part) {
    std::vector<Piece> sub;
    split(parts[part], rng, sub);
    for (auto& piece : sub)
      out.push_back({piece.rep, compose(incl[part], piece.incl), compose(piece.proj, proj[part])});
  }
}

struct PieceKey {
  DimVector dims;
  std::optional<TubeLabel> label;
};

bool key_less(const PieceKey& x, const PieceKey& y) {
  if (!(x.dims == y.dims)) return x.dims < y.dims;
  if (x.label.has_value() != y.label.has_value()) return !x.label.has_value();
  if (x.label && !(*x.label == *y.label)) return *x.label < *y.label;
  return false;
}

}  // namespace

std::vector<Piece> decompose(const LambdaRep& V, Rng& rng) {
  std::vector<Piece> out;
  split(V, rng, out);
  std::vector<PieceKey> keys;
  for (const auto& p : out) keys.push_back({p.rep.dims(), identify_tube(p.rep)});
  std::vector<std::size_t> order(out.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return key_less(keys[a], keys[b]); });
  std::vector<Piece> sorted;
  for (auto i : order) sorted.push_back(std::move(out[i]));
  return sorted;
}

std::vector<Piece> decompose(const LambdaRep& V, std::uint64_t seed) {
  Rng rng(seed);
  return decompose(V, rng);
}

bool is_indecomposable(const LambdaRep& V, Rng& rng) {
  if (total_dim(V) == 0) return false;
  return !splitting_endomorphism(V, rng).has_value();
}

namespace {

std::optional<RepMorphism> iso_between_indecomposables(const LambdaRep& V, const LambdaRep& W, Rng& rng) {
  if (!(V.dims() == W.dims())) return std::nullopt;
  auto basis = hom_reps(V, W);
  if (basis.empty()) return std::nullopt;
  for (int attempt = 0; attempt < 64; ++attempt) {
    RepMorphism phi = random_combination(basis, V, W, rng);
    if (is_iso(phi)) return phi;
  }
  return std::nullopt;
}

}  // namespace

std::optional<RepMorphism> find_isomorphism(const LambdaRep& V, const LambdaRep& W, Rng& rng) {
  if (!(V.dims() == W.dims())) return std::nullopt;
  auto pv = decompose(V, rng);
  auto pw = decompose(W, rng);
  if (pv.size() != pw.size()) return std::nullopt;
  RepMorphism total = zero_morphism(V, W);
  std::vector<bool> used(pw.size(), false);
  for (const auto& a : pv) {
    bool matched = false;
    for (std::size_t j = 0; j < pw.size() && !matched; ++j) {
      if (used[j]) continue;
      auto iso = iso_between_indecomposables(a.rep, pw[j].rep, rng);
      if (!iso) continue;
      RepMorphism part = compose(pw[j].incl, compose(*iso, a.proj));
      for (std::size_t v = 0; v < 5; ++v) total.v[v] += part.v[v];
      used[j] = true;
      matched = true;
    }
    if (!matched) return std::nullopt;
  }
  if (!is_iso(total) || !is_morphism(total, V, W)) throw Error("assembled isomorphism is invalid");
  return total;
}

bool are_isomorphic(const LambdaRep& V, const LambdaRep& W, std::uint64_t seed) {
  Rng rng(seed);
  return find_isomorphism(V, W, rng).has_value();
}

bool lattices_isomorphic(const KLattice& M, const KLattice& N, std::uint64_t seed) {
  if (M.rank() != N.rank()) return false;
  return are_isomorphic(phi(M), phi(N), seed);
}

std::vector<SummandCount> decompose_with_multiplicity(const LambdaRep& V, std::uint64_t seed) {
  Rng rng(seed);
  auto pieces = decompose(V, rng);
  std::vector<SummandCount> out;
  for (const auto& p : pieces) {
    bool found = false;
    for (auto& c : out)
      if (c.rep.dims() == p.rep.dims() && iso_between_indecomposables(c.rep, p.rep, rng)) {
        ++c.multiplicity;
        found = true;
        break;
      }
    if (!found) out.push_back({p.rep, identify_tube(p.rep), 1});
  }
  return out;
}

LambdaRep special_simple(SpecialPoint p, int j) {
  std::array<F2Matrix, 4> f = {F2Matrix{{1}}, F2Matrix{{1}}, F2Matrix(0, 1), F2Matrix(0, 1)};
  LambdaRep V(1, f);
  if (j == 2) V = swap_vertices(swap_vertices(V, 0, 2), 1, 3);
  if (p == SpecialPoint::zero) V = swap_vertices(V, 1, 3);
  if (p == SpecialPoint::infinity) V = swap_vertices(V, 1, 2);
  return V;
}

std::optional<TubeLabel> identify_tube(const LambdaRep& V) {
  const DimVector d = V.dims();
  if (V.dot == 0 || !in_tube(d)) return std::nullopt;
  for (SpecialPoint p : {SpecialPoint::zero, SpecialPoint::one, SpecialPoint::infinity})
    for (int j : {1, 2})
      if (!hom_reps(V, special_simple(p, j)).empty()) return TubeLabel{TubeId::special_point(p), j, V.dot};

  // pencil form: V_dot = Ker f_pm + Ker f_pp, the other kernels are graphs
  const std::size_t h = V.dot / 2;
  if (V.dot % 2 != 0) return std::nullopt;
  for (std::size_t s = 0; s < 4; ++s)
    if (d.d[s] != h) return std::nullopt;
  std::array<F2Matrix, 4> K;
  for (std::size_t s = 0; s < 4; ++s) K[s] = V.f[s].nullspace();
  F2Matrix B = hstack(K[1], K[0]);
  if (!B.is_invertible()) return std::nullopt;
  F2Matrix Binv = B.inverse();
  auto graph = [&](const F2Matrix& ker) -> std::optional<F2Matrix> {
    F2Matrix c = Binv * ker;
    F2Matrix top = c.block(0, 0, h, h), bottom = c.block(h, 0, h, h);
    if (!bottom.is_invertible()) return std::nullopt;
    return top * bottom.inverse();
  };
  auto G = graph(K[2]);
  auto H = graph(K[3]);
  if (!G || !H || !G->is_invertible()) return std::nullopt;
  F2Poly cp = characteristic_polynomial(G->inverse() * *H);
  auto root = irreducible_power_root(cp);
  if (!root) return std::nullopt;
  if (root->first == F2Poly(2) || root->first == F2Poly(3)) return std::nullopt;
  return TubeLabel{TubeId::homogeneous(root->first), 0, root->second};
}

std::vector<LatticePiece> split_lattice(const KLattice& M, std::uint64_t seed) {
  PhiData pd = phi_data(M);
  Rng rng(seed);
  auto pieces = decompose(pd.rep, rng);
  const SharpFrame& fr = pd.frame;
  const std::size_t n = M.rank();

  // adapted bases of the sign vertices, lifted to Z
  IntMatrix Qinv_t(0, 0);
  std::array<std::vector<std::size_t>, 4> start;
  for (std::size_t s = 0; s < 4; ++s) {
    F2Matrix P(fr.dims[s], 0);
    for (const auto& pc : pieces) {
      start[s].push_back(P.cols());
      P = hstack(P, pc.incl.v[1 + s]);
    }
    IntMatrix Q = lift_invertible(P);
    Qinv_t = direct_sum(Qinv_t, unimodular_inverse(Q).transpose());
  }
  IntMatrix Xn = fr.coords * Qinv_t;  // M in adapted sharp coordinates

  std::vector<LatticePiece> out;
  IntMatrix J(n, 0);
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const LambdaRep& rep = pieces[i].rep;
    std::vector<std::size_t> cols;
    std::array<std::size_t, 4> dims{};
    for (std::size_t s = 0; s < 4; ++s) {
      dims[s] = rep.dim(s);
      for (std::size_t k = 0; k < dims[s]; ++k) cols.push_back(fr.offset(s) + start[s][i] + k);
    }
    // generators: 2 e_c and the rows of Xn supported on this piece mod 2
    const std::size_t ni = cols.size();
    IntMatrix gens = IntMatrix::identity(ni) * Int(2);
    F2Matrix dot_vectors = rep.stacked().transpose();
    gens = vstack(gens, dot_vectors.lift());
    ZLattice Li = ZLattice::from_generators(gens);
    const IntMatrix& Bi = Li.basis();
    IntMatrix full(ni, n);
    for (std::size_t r = 0; r < ni; ++r)
      for (std::size_t c = 0; c < ni; ++c) full(r, cols[c]) = Bi(r, c);
    auto Y = solve_left(Xn, full);
    if (!Y) throw Error("split_lattice: summand not inside M");
    IntMatrix incl = Y->transpose();
    auto act = [&](bool for_b) {
      auto A = solve_left(Bi, Bi * sign_matrix(dims, for_b));
      if (!A) throw Error("split_lattice: summand not invariant");
      return A->transpose();
    };
    out.push_back({KLattice(act(false), act(true)), identify_tube(rep), incl, IntMatrix()});
    J = hstack(J, incl);
  }
  IntMatrix Jinv = unimodular_inverse(J);
  std::size_t r0 = 0;
  for (auto& p : out) {
    p.proj = Jinv.block(r0, 0, p.lattice.rank(), n);
    r0 += p.lattice.rank();
  }
  return out;
}

}  // namespace klein
