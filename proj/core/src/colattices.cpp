#include "klein/colattices.hpp"

#include <algorithm>

namespace klein {

namespace {

Int mod_pos(const Int& x, const Int& d) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
  return r;
}

Int power_of_two(unsigned k) {
  Int q;
  mpz_ui_pow_ui(q.get_mpz_t(), 2, k);
  return q;
}

std::vector<std::uint8_t> bits_of(const CohClass& c) {
  std::vector<std::uint8_t> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = mpz_odd_p(c[i].get_mpz_t()) ? 1 : 0;
  return out;
}

bool in_span(const F2Matrix& cols, std::span<const std::uint8_t> v) {
  if (cols.cols() == 0) return std::all_of(v.begin(), v.end(), [](std::uint8_t x) { return x == 0; });
  return cols.solve(v).has_value();
}

// H^n(K, L / qL), divided by the image of H^n(K, L) when `stable` is set.
// The cocycles mod q form V diag(q / gcd(q, d_i)) Z^N where U D V = diag(d)
// is the Smith form of the coboundary; coordinates in that basis are
// diag(gcd(q, d_i)) V^{-1} x / q.
CohomologyGroup reduced_cohomology(const KLattice& L, std::size_t n, const Int& q, bool stable) {
  if (n == 0) throw Error("degree must be positive");
  CohomologyGroup H;
  H.n = n;
  H.rank = L.rank();
  H.modulus = q;
  H.denominator = q;
  H.cocycle_test = coboundary_matrix(L, n);
  const std::size_t N = L.rank() * (n + 1);
  H.projection = IntMatrix(0, N);
  if (N == 0) return H;
  SmithForm S = smith_form(H.cocycle_test);
  IntMatrix Z = S.V, W = S.Vinv;
  for (std::size_t i = 0; i < N; ++i) {
    Int d = i < std::min(S.D.rows(), S.D.cols()) ? Int(abs(S.D(i, i))) : Int(0);
    Int g;
    mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), d.get_mpz_t());
    const Int s = q / g;
    for (std::size_t r = 0; r < N; ++r) Z(r, i) *= s;
    for (std::size_t c = 0; c < N; ++c) W(i, c) *= g;
  }
  IntMatrix R = hstack(coboundary_matrix(L, n - 1), IntMatrix::identity(N) * q);
  if (stable) R = hstack(R, right_kernel(H.cocycle_test));
  IntMatrix C = W * R;
  for (std::size_t r = 0; r < C.rows(); ++r)
    for (std::size_t c = 0; c < C.cols(); ++c) C(r, c) /= q;
  SmithForm T = smith_form(C);
  IntMatrix P = T.U * W;
  IntMatrix G = Z * T.Uinv;
  for (std::size_t i = 0; i < N; ++i) {
    Int d = abs(T.D(i, i));
    if (d == 1) continue;
    H.divisors.push_back(d);
    H.projection = vstack(H.projection, P.block(i, 0, 1, N));
    IntVector g = G.col(i);
    for (auto& x : g) x = mod_pos(x, q);
    H.generators.push_back(Cochain::from_flat(n, L.rank(), g));
  }
  return H;
}

Cochain push_values(const Cochain& g, const IntMatrix& h) {
  Cochain out{g.n, {}};
  for (const auto& v : g.values) out.values.push_back(h * v);
  return out;
}

F2Matrix induced(const CohomologyGroup& A, const CohomologyGroup& B, const IntMatrix& h) {
  F2Matrix out(B.divisors.size(), A.divisors.size());
  for (std::size_t i = 0; i < A.generators.size(); ++i)
    out.set_col(i, bits_of(B.class_of(push_values(A.generators[i], h))));
  return out;
}

std::size_t component_index(bool infinity, std::size_t n) {
  if (n % 2 == 1) return 0;
  return infinity ? 1 : 2;
}

bool is_infinity(const TubeLabel& L) { return L.id.special && L.id.lambda == SpecialPoint::infinity; }

// F_2 basis (columns) of N(n), in the coordinates w of u = 2^(level-1) w.
F2Matrix target_mod2(const ZLattice& E) { return F2Matrix::reduce(E.basis().transpose()); }

// Columns spanning the intersection of two column spaces.
F2Matrix intersect(const F2Matrix& A, const F2Matrix& B) {
  if (A.cols() == 0 || B.cols() == 0) return F2Matrix(A.rows(), 0);
  F2Matrix K = hstack(A, B).nullspace();
  F2Matrix out = A * K.block(0, 0, A.cols(), K.cols());
  return out.cols() ? out.column_space() : out;
}

Cochain eta_with(const ColatticeLevel& N, bool infinity, const IntVector& u, std::size_t n) {
  Cochain g = Cochain::zero(n, N.rank());
  const std::size_t slot = infinity ? 0 : n;
  const Int q = N.modulus();
  for (std::size_t i = 0; i < u.size(); ++i) g.values[slot][i] = mod_pos(u[i], q);
  return g;
}

}  // namespace

Int ColatticeLevel::modulus() const { return power_of_two(level); }

KLattice ColatticeLevel::dual() const { return KLattice(base.a().transpose(), base.b().transpose()); }

IntVector ColatticeLevel::include(const IntVector& u) const {
  IntVector out(u.size());
  const Int q = power_of_two(level + 1);
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = mod_pos(2 * u[i], q);
  return out;
}

ColatticeLevel dual_level(const KLattice& M, unsigned k) {
  if (k == 0) throw Error("level must be positive");
  return ColatticeLevel{M, k};
}

CohomologyGroup level_cohomology(const ColatticeLevel& N, std::size_t n, bool stable) {
  return reduced_cohomology(N.dual(), n, N.modulus(), stable);
}

bool stabilizes(const KLattice& M, std::size_t n, unsigned level) {
  const ColatticeLevel lo = dual_level(M, level), hi = dual_level(M, level + 1);
  CohomologyGroup A = level_cohomology(lo, n), B = level_cohomology(hi, n);
  Int order_a = 1, order_b = 1;
  for (const auto& d : A.divisors) order_a *= d;
  for (const auto& d : B.divisors) order_b *= d;
  if (order_a != order_b) return false;
  if (B.divisors.empty()) return true;
  // the image of H(lo) together with the relations of H(hi) must span
  IntMatrix span(B.divisors.size(), A.generators.size() + B.divisors.size());
  for (std::size_t i = 0; i < A.generators.size(); ++i) {
    Cochain up{n, {}};
    for (const auto& v : A.generators[i].values) up.values.push_back(lo.include(v));
    CohClass c = B.class_of(up);
    for (std::size_t t = 0; t < c.size(); ++t) span(t, i) = c[t];
  }
  for (std::size_t t = 0; t < B.divisors.size(); ++t) span(t, A.generators.size() + t) = B.divisors[t];
  SmithForm S = smith_form(span);
  if (S.rank() != B.divisors.size()) return false;
  for (std::size_t t = 0; t < S.rank(); ++t)
    if (abs(S.D(t, t)) != 1) return false;
  return true;
}

CohomologyGroup colattice_cohomology(const KLattice& M, std::size_t n, unsigned level) {
  if (n == 0) throw Error("degree must be positive");
  if (!stabilizes(M, n, level)) throw Error("not stabilized");
  return level_cohomology(dual_level(M, level), n);
}

ZLattice colattice_component(const KLattice& M, std::size_t n) {
  const bool inf = in_infinity_tube(M);
  return eigencomponent(KLattice(M.a().transpose(), M.b().transpose()), kSignPairs[component_index(inf, n)]);
}

std::vector<IntVector> colattice_target(const ColatticeLevel& N, std::size_t n) {
  ZLattice E = colattice_component(N.base, n);
  const Int half = power_of_two(N.level - 1);
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < E.rank(); ++i) {
    IntVector u = E.basis().row(i);
    for (auto& x : u) x = mod_pos(x * half, N.modulus());
    out.push_back(u);
  }
  return out;
}

namespace {

// w with u = 2^(level-1) w, or nullopt when 2u != 0.
std::optional<std::vector<std::uint8_t>> halve(const ColatticeLevel& N, const IntVector& u) {
  if (u.size() != N.rank()) return std::nullopt;
  const Int half = power_of_two(N.level - 1), q = N.modulus();
  std::vector<std::uint8_t> w(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    Int x = mod_pos(u[i], q);
    if (!mpz_divisible_p(x.get_mpz_t(), half.get_mpz_t())) return std::nullopt;
    w[i] = x != 0 ? 1 : 0;
  }
  return w;
}

}  // namespace

bool in_colattice_target(const ColatticeLevel& N, const IntVector& u, std::size_t n) {
  auto w = halve(N, u);
  return w && in_span(target_mod2(colattice_component(N.base, n)), *w);
}

Cochain eta(const ColatticeLevel& N, const IntVector& u, std::size_t n) {
  if (n == 0) throw Error("degree must be positive");
  if (!in_colattice_target(N, u, n)) throw Error("u not in N(n)");
  return eta_with(N, in_infinity_tube(N.base), u, n);
}

bool verify_eta_iso(const KLattice& M, std::size_t n, unsigned level) {
  CohomologyGroup H;
  try {
    H = colattice_cohomology(M, n, level);
  } catch (const Error&) {
    return false;
  }
  const ColatticeLevel N = dual_level(M, level);
  auto target = colattice_target(N, n);
  if (!H.elementary() || H.divisors.size() != target.size()) return false;
  F2Matrix classes(H.divisors.size(), target.size());
  for (std::size_t i = 0; i < target.size(); ++i) classes.set_col(i, bits_of(H.class_of(eta(N, target[i], n))));
  return classes.rank() == target.size();
}

bool DualChain::annihilates(std::size_t k, const ZLattice& sub) const {
  IntMatrix P = sub.basis() * steps.at(k);
  const Int q = module.modulus();
  for (std::size_t r = 0; r < P.rows(); ++r)
    for (std::size_t c = 0; c < P.cols(); ++c)
      if (mod_pos(P(r, c), q) != 0) return false;
  return true;
}

DualChain dual_chain(const TubeModule& T, unsigned level) {
  DualChain D{dual_level(T.lattice, level), {}};
  const std::size_t r = T.lattice.rank();
  for (const auto& Mk : T.chain) {
    if (Mk.rank() == 0)
      D.steps.push_back(IntMatrix::identity(r));
    else if (Mk.rank() == r)
      D.steps.push_back(IntMatrix(r, 0));
    else
      D.steps.push_back(right_kernel(Mk.basis()));
  }
  return D;
}

std::optional<std::size_t> cofiltration_position(const Filtration& F, const CohClass& e) {
  auto t = filtration_position(F, e);
  if (!t) return std::nullopt;
  return F.module.label.m - *t;
}

namespace {

// The first basis vector of N_k(n) outside N_{k-1}(n) whose class sits
// exactly at position k.
std::optional<IntVector> find_costandard(const Filtration& F, const DualChain& D, const ZLattice& E,
                                         std::size_t k, std::size_t n) {
  const std::size_t m = F.module.label.m;
  if (k < 1 || k > m) return std::nullopt;
  const F2Matrix target = target_mod2(E);
  const F2Matrix now = intersect(target, F2Matrix::reduce(D.steps[k]));
  const F2Matrix before = intersect(target, F2Matrix::reduce(D.steps[k - 1]));
  const Int half = power_of_two(D.module.level - 1);
  for (std::size_t c = 0; c < now.cols(); ++c) {
    auto w = now.col(c);
    if (in_span(before, w)) continue;
    IntVector u(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) u[i] = w[i] ? half : Int(0);
    CohClass cls = F.group.class_of(eta_with(D.module, F.infinity, u, n));
    if (cofiltration_position(F, cls) == std::optional<std::size_t>(k)) return u;
  }
  return std::nullopt;
}

}  // namespace

Filtration cofiltration(const TubeModule& T, std::size_t n, unsigned level) {
  Filtration F;
  F.module = T;
  F.dual = true;
  F.infinity = is_infinity(T.label);
  F.group = colattice_cohomology(T.lattice, n, level);
  if (!F.group.elementary()) throw Error("not regular");
  const DualChain D = dual_chain(T, level);
  const KLattice dual = D.module.dual();
  const std::size_t m = T.label.m, h = F.group.divisors.size();
  for (std::size_t t = 0; t <= m; ++t) {
    const IntMatrix& C = D.steps[m - t];
    if (C.cols() == 0) {
      F.images.push_back(F2Matrix(h, 0));
      continue;
    }
    ZLattice sub = ZLattice::from_generators(C.transpose());
    CohomologyGroup Hk = reduced_cohomology(sublattice_module(dual, sub), n, D.module.modulus(), true);
    F2Matrix img = induced(Hk, F.group, sub.basis().transpose());
    F.images.push_back(img.cols() ? img.column_space() : img);
  }
  const ZLattice E = colattice_component(T.lattice, n);
  F.standard.resize(m);
  for (std::size_t t = 0; t < m; ++t) {
    auto z = find_costandard(F, D, E, m - t, n);
    if (z) F.standard[t] = F.group.class_of(eta_with(D.module, F.infinity, *z, n));
  }
  return F;
}

IntVector costandard_element(const TubeModule& T, std::size_t k, std::size_t n, unsigned level) {
  Filtration F = cofiltration(T, n, level);
  auto z = find_costandard(F, dual_chain(T, level), colattice_component(T.lattice, n), k, n);
  if (!z) throw Error("parity mismatch");
  return *z;
}

SumCohomology co_sum_cohomology(const std::vector<TubeModule>& summands, std::size_t n, unsigned level) {
  std::vector<Filtration> parts;
  for (const auto& T : summands) parts.push_back(cofiltration(T, n, level));
  return sum_from_parts(std::move(parts), n);
}

CanonicalForm co_canonical_form(const SumCohomology& H, const CohClass& e, std::uint64_t seed) {
  for (const auto& p : H.parts)
    if (!p.dual) throw Error("not a sum of colattices");
  return canonical_form(H, e, seed);
}

}  // namespace klein
