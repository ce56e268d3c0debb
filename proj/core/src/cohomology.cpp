#include "klein/cohomology.hpp"

#include <algorithm>

namespace klein {

GroupRingElt GroupRingElt::of(GroupElt g, long coeff) {
  GroupRingElt r;
  r.c[g.index()] = coeff;
  return r;
}

bool GroupRingElt::is_zero() const {
  return std::all_of(c.begin(), c.end(), [](const Int& x) { return sgn(x) == 0; });
}

GroupRingElt operator+(const GroupRingElt& x, const GroupRingElt& y) {
  GroupRingElt r;
  for (int i = 0; i < 4; ++i) r.c[i] = x.c[i] + y.c[i];
  return r;
}

GroupRingElt operator*(const GroupRingElt& x, const GroupRingElt& y) {
  GroupRingElt r;
  for (int g = 0; g < 4; ++g)
    for (int h = 0; h < 4; ++h)
      r.c[(GroupElt::from_index(g) * GroupElt::from_index(h)).index()] += x.c[g] * y.c[h];
  return r;
}

IntMatrix act(const KLattice& M, const GroupRingElt& r) {
  IntMatrix out(M.rank(), M.rank());
  for (int g = 0; g < 4; ++g)
    if (sgn(r.c[g]) != 0) out += M.act(GroupElt::from_index(g)) * r.c[g];
  return out;
}

GroupElt apply_s3(GroupElt g, S3Generator which) {
  if (which == S3Generator::tau2) return {g.j, g.i};
  return {g.i, g.i ^ g.j};  // a -> ab, b -> b
}

GroupRingElt apply_s3(const GroupRingElt& r, S3Generator which) {
  GroupRingElt out;
  for (int g = 0; g < 4; ++g) out.c[apply_s3(GroupElt::from_index(g), which).index()] = r.c[g];
  return out;
}

namespace {

GroupRingElt a_plus(int sign) {
  GroupRingElt r = GroupRingElt::of({1, 0});
  r.c[0] = sign;
  return r;
}

GroupRingElt b_plus(int sign) {
  GroupRingElt r = GroupRingElt::of({0, 1});
  r.c[0] = sign;
  return r;
}

int parity_sign(std::size_t k) { return k % 2 ? -1 : 1; }

}  // namespace

RMatrix resolution_differential(std::size_t n) {
  if (n == 0) throw Error("degree must be positive");
  RMatrix d(n + 1, std::vector<GroupRingElt>(n));
  for (std::size_t k = 0; k <= n; ++k) {
    const std::size_t l = n - k;
    if (k >= 1) d[k][k - 1] = a_plus(parity_sign(k));
    if (l >= 1) {
      GroupRingElt t = b_plus(parity_sign(l));
      if (k % 2) t = t * GroupRingElt::of({0, 0}, -1);
      d[k][k] = t;
    }
  }
  return d;
}

IntMatrix resolution_matrix(std::size_t n) {
  RMatrix d = resolution_differential(n);
  IntMatrix out(4 * n, 4 * (n + 1));
  for (std::size_t k = 0; k <= n; ++k)
    for (std::size_t kp = 0; kp < n; ++kp)
      for (int g = 0; g < 4; ++g) {
        GroupRingElt img = GroupRingElt::of(GroupElt::from_index(g)) * d[k][kp];
        for (int h = 0; h < 4; ++h) out(4 * kp + h, 4 * k + g) = img.c[h];
      }
  return out;
}

Cochain Cochain::zero(std::size_t n, std::size_t rank) { return {n, std::vector<IntVector>(n + 1, IntVector(rank))}; }

Cochain Cochain::from_flat(std::size_t n, std::size_t rank, std::span<const Int> v) {
  if (v.size() != rank * (n + 1)) throw Error("dimension mismatch");
  Cochain g = zero(n, rank);
  for (std::size_t j = 0; j <= n; ++j)
    for (std::size_t i = 0; i < rank; ++i) g.values[j][i] = v[j * rank + i];
  return g;
}

IntVector Cochain::flat() const {
  IntVector out;
  for (const auto& v : values) out.insert(out.end(), v.begin(), v.end());
  return out;
}

bool Cochain::is_zero() const {
  for (const auto& v : values)
    for (const auto& x : v)
      if (sgn(x) != 0) return false;
  return true;
}

IntMatrix coboundary_matrix(const KLattice& M, std::size_t n) {
  const std::size_t r = M.rank();
  RMatrix d = resolution_differential(n + 1);
  IntMatrix out(r * (n + 2), r * (n + 1));
  for (std::size_t k = 0; k <= n + 1; ++k)
    for (std::size_t kp = 0; kp <= n; ++kp)
      if (!d[k][kp].is_zero()) out.set_block(k * r, kp * r, act(M, d[k][kp]));
  return out;
}

Cochain coboundary(const Cochain& g, const KLattice& M) {
  if (g.values.size() != g.n + 1) throw Error("dimension mismatch");
  for (const auto& v : g.values)
    if (v.size() != M.rank()) throw Error("dimension mismatch");
  IntVector flat = g.flat();
  return Cochain::from_flat(g.n + 1, M.rank(), coboundary_matrix(M, g.n) * flat);
}

namespace {

Int mod_pos(const Int& x, const Int& d) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
  return r;
}

}  // namespace

CohClass CohomologyGroup::reduce(CohClass c) const {
  if (c.size() != divisors.size()) throw Error("dimension mismatch");
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = mod_pos(c[i], divisors[i]);
  return c;
}

CohClass CohomologyGroup::class_of(const Cochain& g) const {
  if (g.n != n || g.values.size() != n + 1) throw Error("dimension mismatch");
  IntVector flat = g.flat();
  if (flat.size() != cocycle_test.cols()) throw Error("dimension mismatch");
  IntVector test = cocycle_test * flat;
  for (const auto& x : test)
    if (sgn(modulus == 0 ? x : mod_pos(x, modulus)) != 0) throw Error("not a cocycle");
  IntVector c = projection * flat;
  if (denominator != 1)
    for (auto& x : c) {
      if (!mpz_divisible_p(x.get_mpz_t(), denominator.get_mpz_t())) throw Error("not a cocycle");
      x /= denominator;
    }
  return reduce(c);
}

Cochain CohomologyGroup::representative(const CohClass& c) const {
  if (c.size() != divisors.size()) throw Error("dimension mismatch");
  Cochain out = Cochain::zero(n, rank);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (sgn(c[i]) == 0) continue;
    for (std::size_t j = 0; j <= n; ++j)
      for (std::size_t t = 0; t < rank; ++t) out.values[j][t] += c[i] * generators[i].values[j][t];
  }
  if (modulus != 0)
    for (auto& v : out.values)
      for (auto& x : v) x = mod_pos(x, modulus);
  return out;
}

bool CohomologyGroup::is_zero(const CohClass& c) const {
  CohClass r = reduce(c);
  return std::all_of(r.begin(), r.end(), [](const Int& x) { return sgn(x) == 0; });
}

std::size_t CohomologyGroup::log2_order() const {
  std::size_t total = 0;
  for (const auto& d : divisors) {
    if (mpz_popcount(d.get_mpz_t()) != 1) throw Error("order is not a power of 2");
    total += mpz_sizeinbase(d.get_mpz_t(), 2) - 1;
  }
  return total;
}

bool CohomologyGroup::elementary() const {
  return std::all_of(divisors.begin(), divisors.end(), [](const Int& d) { return d == 2; });
}

CohomologyGroup cohomology_group(const KLattice& M, std::size_t n) {
  if (n == 0) throw Error("degree must be positive");
  CohomologyGroup H;
  H.n = n;
  H.rank = M.rank();
  H.cocycle_test = coboundary_matrix(M, n);
  const std::size_t N = M.rank() * (n + 1);
  H.projection = IntMatrix(0, N);
  IntMatrix Z = right_kernel(H.cocycle_test);
  const std::size_t z = Z.cols();
  if (z == 0) return H;
  // left inverse of the (saturated) kernel basis
  SmithForm sz = smith_form(Z);
  IntMatrix proj_I(z, N);
  for (std::size_t i = 0; i < z; ++i) proj_I(i, i) = 1;
  IntMatrix L = sz.V * proj_I * sz.U;
  IntMatrix C = L * coboundary_matrix(M, n - 1);
  SmithForm sc = smith_form(C);
  const std::size_t r = sc.rank();
  if (r < z) throw Error("cohomology is infinite");
  IntMatrix P = sc.U * L;
  IntMatrix G = Z * sc.Uinv;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < z; ++i)
    if (sc.D(i, i) != 1) keep.push_back(i);
  H.projection = IntMatrix(keep.size(), N);
  for (std::size_t t = 0; t < keep.size(); ++t) {
    const std::size_t i = keep[t];
    Int d = abs(sc.D(i, i));
    H.divisors.push_back(d);
    H.projection.set_row(t, P.row(i));
    H.generators.push_back(Cochain::from_flat(n, M.rank(), G.col(i)));
  }
  return H;
}

bool in_infinity_tube(const KLattice& M) {
  const LambdaRep V = phi(M);
  auto label = identify_tube(V);
  if (!label || decompose(V).size() != 1) throw Error("not regular");
  return label->id.special && label->id.lambda == SpecialPoint::infinity;
}

namespace {

bool is_infinity(const TubeLabel& L) { return L.id.special && L.id.lambda == SpecialPoint::infinity; }

std::size_t component_index(bool infinity, std::size_t n) {
  if (n % 2 == 0) return 0;
  return infinity ? 1 : 2;
}

Cochain xi_with(const KLattice& M, const ZLattice& target, bool infinity, const IntVector& v, std::size_t n) {
  if (n == 0) throw Error("degree must be positive");
  if (v.size() != M.rank() || !target.contains(v)) throw Error("v not in M(n)");
  Cochain g = Cochain::zero(n, M.rank());
  g.values[xi_slot(infinity, n)] = v;
  return g;
}

}  // namespace

std::size_t xi_slot(bool infinity, std::size_t n) { return infinity ? 0 : n; }

ZLattice target_component(const KLattice& M, std::size_t n) {
  return eigencomponent(M, kSignPairs[component_index(in_infinity_tube(M), n)]);
}

ZLattice target_component(const TubeModule& T, std::size_t n) {
  return eigencomponent(T.lattice, kSignPairs[component_index(is_infinity(T.label), n)]);
}

Cochain xi(const KLattice& M, const IntVector& v, std::size_t n) {
  const bool inf = in_infinity_tube(M);
  return xi_with(M, eigencomponent(M, kSignPairs[component_index(inf, n)]), inf, v, n);
}

Cochain xi(const TubeModule& T, const IntVector& v, std::size_t n) {
  return xi_with(T.lattice, target_component(T, n), is_infinity(T.label), v, n);
}

bool verify_xi_iso(const KLattice& M, std::size_t n) {
  ZLattice target = target_component(M, n);
  CohomologyGroup H = cohomology_group(M, n);
  if (!H.elementary() || H.divisors.size() != target.rank()) return false;
  F2Matrix classes(H.divisors.size(), target.rank());
  for (std::size_t i = 0; i < target.rank(); ++i) {
    CohClass c = H.class_of(xi(M, target.basis().row(i), n));
    for (std::size_t t = 0; t < c.size(); ++t) classes.set(t, i, c[t] == 1);
  }
  return classes.rank() == target.rank();
}

}  // namespace klein

namespace klein {

namespace {

std::vector<std::uint8_t> bits_of(const CohClass& c) {
  std::vector<std::uint8_t> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = mpz_odd_p(c[i].get_mpz_t()) ? 1 : 0;
  return out;
}

bool in_span(const F2Matrix& cols, std::span<const std::uint8_t> v) {
  if (cols.cols() == 0) return std::all_of(v.begin(), v.end(), [](std::uint8_t x) { return x == 0; });
  return cols.solve(v).has_value();
}

// The cochain with every value pushed through the column map h.
Cochain push_values(const Cochain& g, const IntMatrix& h) {
  Cochain out{g.n, {}};
  for (const auto& v : g.values) out.values.push_back(h * v);
  return out;
}

// phi_* : H^n(A) -> H^n(B) for h : A -> B.
F2Matrix induced(const CohomologyGroup& A, const CohomologyGroup& B, const IntMatrix& h) {
  F2Matrix out(B.divisors.size(), A.divisors.size());
  for (std::size_t i = 0; i < A.generators.size(); ++i) {
    auto bits = bits_of(B.class_of(push_values(A.generators[i], h)));
    out.set_col(i, bits);
  }
  return out;
}

ZLattice layer_component(const TubeModule& T, std::size_t k, std::size_t n) {
  return lattice_intersection(T.chain[k], target_component(T, n));
}

}  // namespace

Filtration filtration(const TubeModule& T, std::size_t n) {
  Filtration F;
  F.module = T;
  F.group = cohomology_group(T.lattice, n);
  F.infinity = is_infinity(T.label);
  if (!F.group.elementary()) throw Error("not regular");
  const std::size_t h = F.group.divisors.size();
  for (std::size_t k = 0; k < T.chain.size(); ++k) {
    if (T.chain[k].rank() == 0) {
      F.images.push_back(F2Matrix(h, 0));
      continue;
    }
    KLattice sub = sublattice_module(T.lattice, T.chain[k]);
    CohomologyGroup Hk = cohomology_group(sub, n);
    F2Matrix img = induced(Hk, F.group, T.chain[k].basis().transpose());
    F.images.push_back(img.cols() ? img.column_space() : img);
  }
  return F;
}

std::optional<std::size_t> filtration_position(const Filtration& F, const CohClass& e) {
  auto b = bits_of(F.group.reduce(e));
  if (std::all_of(b.begin(), b.end(), [](std::uint8_t x) { return x == 0; })) return std::nullopt;
  std::size_t k = 0;
  while (k + 1 < F.images.size() && in_span(F.images[k + 1], b)) ++k;
  return k;
}

std::optional<std::size_t> filtration_position(const TubeModule& T, const CohClass& e, std::size_t n) {
  return filtration_position(filtration(T, n), e);
}

namespace {

std::optional<IntVector> find_standard_element(const TubeModule& T, std::size_t k, std::size_t n) {
  if (k + 1 >= T.chain.size()) return std::nullopt;
  ZLattice top = layer_component(T, k, n), below = layer_component(T, k + 1, n);
  ZLattice S = lattice_sum(top.scaled(2), below);
  for (std::size_t i = 0; i < top.rank(); ++i)
    if (!S.contains(top.basis().row(i))) return top.basis().row(i);
  return std::nullopt;
}

}  // namespace

bool position_admissible(const TubeModule& T, std::size_t k, std::size_t n) {
  return find_standard_element(T, k, n).has_value();
}

IntVector standard_element(const TubeModule& T, std::size_t k, std::size_t n) {
  auto v = find_standard_element(T, k, n);
  if (!v) throw Error("parity mismatch");
  return *v;
}

std::string StandardData::to_string() const {
  std::string s = "{";
  for (std::size_t t = 0; t < tubes.size(); ++t) {
    if (t) s += "; ";
    s += tubes[t].first.to_string() + ": [";
    for (std::size_t i = 0; i < tubes[t].second.size(); ++i) {
      const auto& e = tubes[t].second[i];
      if (i) s += ", ";
      s += "(";
      if (e.j) s += std::to_string(e.j) + ",";
      s += std::to_string(e.m) + "," + std::to_string(e.k) + ")";
    }
    s += "]";
  }
  return s + "} " + parity;
}

bool satisfies_sequence_rules(const std::vector<StandardEntry>& seq, bool increasing) {
  for (const auto& e : seq) {
    if (e.m == 0) return false;
    if (!increasing && e.k >= e.m) return false;
    if (increasing && (e.k < 1 || e.k > e.m)) return false;
  }
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t ip = i + 1; ip < seq.size(); ++ip) {
      const long mi = static_cast<long>(seq[i].m), mp = static_cast<long>(seq[ip].m);
      const long ki = static_cast<long>(seq[i].k), kp = static_cast<long>(seq[ip].k);
      if (!increasing) {
        if (!(mi > mp && kp < ki && ki < kp + mi - mp)) return false;
      } else {
        if (!(mi < mp && ki < kp && kp < ki + mp - mi)) return false;
      }
    }
  return true;
}

StandardData apply_s3(const StandardData& d, S3Generator which) {
  StandardData out;
  out.parity = d.parity;
  for (const auto& [id, seq] : d.tubes) out.tubes.emplace_back(s3_on_tube(id, which), seq);
  std::sort(out.tubes.begin(), out.tubes.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

std::size_t SumCohomology::rank() const { return offsets.empty() ? 0 : offsets.back(); }
std::size_t SumCohomology::class_length() const { return class_offsets.empty() ? 0 : class_offsets.back(); }

KLattice SumCohomology::total() const {
  KLattice M(IntMatrix(0, 0), IntMatrix(0, 0));
  for (const auto& p : parts) M = direct_sum(M, p.module.lattice);
  return M;
}

CohClass SumCohomology::component(const CohClass& c, std::size_t i) const {
  if (c.size() != class_length()) throw Error("dimension mismatch");
  return CohClass(c.begin() + class_offsets[i], c.begin() + class_offsets[i + 1]);
}

CohClass SumCohomology::class_of(const Cochain& g) const {
  if (g.n != n) throw Error("dimension mismatch");
  CohClass out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    Cochain part{n, {}};
    for (const auto& v : g.values) {
      if (v.size() != rank()) throw Error("dimension mismatch");
      part.values.emplace_back(v.begin() + offsets[i], v.begin() + offsets[i + 1]);
    }
    CohClass c = parts[i].group.class_of(part);
    out.insert(out.end(), c.begin(), c.end());
  }
  return out;
}

Cochain SumCohomology::representative(const CohClass& c) const {
  Cochain out = Cochain::zero(n, rank());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    Cochain part = parts[i].group.representative(component(c, i));
    for (std::size_t j = 0; j <= n; ++j)
      std::copy(part.values[j].begin(), part.values[j].end(), out.values[j].begin() + offsets[i]);
  }
  return out;
}

CohClass SumCohomology::push(const IntMatrix& phi, const CohClass& c) const {
  return class_of(push_values(representative(c), phi));
}

F2Matrix SumCohomology::push_matrix(const IntMatrix& phi) const {
  const std::size_t h = class_length();
  F2Matrix out(h, h);
  for (std::size_t i = 0; i < h; ++i) {
    CohClass e(h, 0);
    e[i] = 1;
    out.set_col(i, bits_of(push(phi, e)));
  }
  return out;
}

namespace {

// Combination sum c_r h_r of {0,1} coefficients.
IntMatrix combine(const std::vector<IntMatrix>& hs, std::span<const std::uint8_t> c, std::size_t rows,
                  std::size_t cols) {
  IntMatrix out(rows, cols);
  for (std::size_t r = 0; r < hs.size(); ++r)
    if (c[r]) out += hs[r];
  return out;
}

bool is_unit(const IntMatrix& m) {
  Int d = m.determinant();
  return d == 1 || d == -1;
}

bool is_nilpotent(IntMatrix t) {
  for (std::size_t p = 1; p < t.rows(); p *= 2) {
    t = t * t;
    if (t.is_zero()) return true;
  }
  return t.is_zero();
}

bool is_odd_det(const IntMatrix& m) { return mpz_odd_p(m.determinant().get_mpz_t()) != 0; }

// Some h in span(hs) with h_*(src) = dst; nullopt if none. `accept` filters
// the candidates.
template <class Pred>
std::optional<IntMatrix> find_map(const std::vector<IntMatrix>& hs, const std::vector<F2Matrix>& induced_maps,
                                  const std::vector<std::uint8_t>& src, const std::vector<std::uint8_t>& dst,
                                  std::size_t rows, std::size_t cols, Pred accept, Rng& rng) {
  if (hs.empty()) return std::nullopt;
  F2Matrix S(dst.size(), hs.size());
  for (std::size_t r = 0; r < hs.size(); ++r) S.set_col(r, induced_maps[r] * std::span<const std::uint8_t>(src));
  auto c = S.solve(dst);
  if (!c) return std::nullopt;
  IntMatrix h = combine(hs, *c, rows, cols);
  if (accept(h)) return h;
  F2Matrix ker = S.nullspace();
  for (int attempt = 0; attempt < 1024 && ker.cols() > 0; ++attempt) {
    std::vector<std::uint8_t> x = *c;
    for (std::size_t t = 0; t < ker.cols(); ++t)
      if (rng() & 1)
        for (std::size_t r = 0; r < x.size(); ++r) x[r] ^= ker.get(r, t);
    h = combine(hs, x, rows, cols);
    if (accept(h)) return h;
  }
  return std::nullopt;
}

std::size_t to_mask(std::span<const std::uint8_t> b) {
  std::size_t x = 0;
  for (std::size_t i = 0; i < b.size(); ++i)
    if (b[i]) x |= std::size_t{1} << i;
  return x;
}

// Integral units of End(T): basis elements and I + basis elements that are
// invertible, plus seeded random {0,1} combinations.
std::vector<IntMatrix> unit_family(const std::vector<IntMatrix>& hs, std::size_t r, Rng& rng) {
  std::vector<IntMatrix> units;
  for (const auto& h : hs) {
    if (is_unit(h)) units.push_back(h);
    IntMatrix p = IntMatrix::identity(r) + h;
    if (is_unit(p)) units.push_back(p);
    IntMatrix q = IntMatrix::identity(r) - h;
    if (is_unit(q)) units.push_back(q);
  }
  for (int attempt = 0; attempt < 256 && units.size() < hs.size() + 16; ++attempt) {
    std::vector<std::uint8_t> c(hs.size());
    for (auto& x : c) x = rng() & 1;
    IntMatrix h = combine(hs, c, r, r);
    if (is_unit(h)) units.push_back(h);
  }
  // I + theta for nilpotent theta among small combinations of basis elements
  std::size_t found = 0;
  for (int attempt = 0; attempt < 4096 && found < 48 && hs.size() > 0; ++attempt) {
    IntMatrix t = hs[rng() % hs.size()];
    if (attempt >= static_cast<int>(hs.size())) {
      t = t + hs[rng() % hs.size()] * Int(rng() & 1 ? 1 : -1);
    } else {
      t = hs[attempt];
    }
    if (is_nilpotent(t)) {
      units.push_back(IntMatrix::identity(r) + t);
      ++found;
    }
  }
  return units;
}

// Units of End(T) over the 2-adic integers: {0,1} combinations with odd
// determinant. Their classes generate the units of End(T)/2End(T).
std::vector<IntMatrix> two_adic_unit_family(const std::vector<IntMatrix>& hs, std::size_t r, Rng& rng) {
  std::vector<IntMatrix> units;
  for (int attempt = 0; attempt < 512 && units.size() < 2 * hs.size() + 16; ++attempt) {
    std::vector<std::uint8_t> c(hs.size());
    for (auto& x : c) x = rng() & 1;
    IntMatrix h = combine(hs, c, r, r);
    if (is_odd_det(h)) units.push_back(h);
  }
  return units;
}

// A product of units carrying src to dst on H^n(T), by breadth-first search.
std::optional<IntMatrix> unit_path(const CohomologyGroup& H, const std::vector<IntMatrix>& units,
                                   const std::vector<std::uint8_t>& src, const std::vector<std::uint8_t>& dst) {
  const std::size_t h = H.divisors.size();
  if (h > 24) return std::nullopt;
  std::vector<std::vector<std::size_t>> colmask;
  for (const auto& u : units) {
    F2Matrix P = induced(H, H, u);
    std::vector<std::size_t> cm(h, 0);
    for (std::size_t c = 0; c < h; ++c) cm[c] = to_mask(P.col(c));
    colmask.push_back(cm);
  }
  auto apply = [&](std::size_t g, std::size_t x) {
    std::size_t y = 0;
    for (std::size_t c = 0; c < h; ++c)
      if ((x >> c) & 1) y ^= colmask[g][c];
    return y;
  };
  const std::size_t start = to_mask(src), goal = to_mask(dst);
  std::vector<std::pair<std::size_t, std::size_t>> parent;  // (previous state, generator)
  std::vector<std::size_t> seen_index(std::size_t{1} << h, SIZE_MAX);
  std::vector<std::size_t> queue = {start};
  parent.push_back({SIZE_MAX, SIZE_MAX});
  seen_index[start] = 0;
  for (std::size_t qi = 0; qi < queue.size() && seen_index[goal] == SIZE_MAX; ++qi)
    for (std::size_t g = 0; g < units.size(); ++g) {
      std::size_t y = apply(g, queue[qi]);
      if (seen_index[y] != SIZE_MAX) continue;
      seen_index[y] = queue.size();
      queue.push_back(y);
      parent.push_back({qi, g});
    }
  if (seen_index[goal] == SIZE_MAX) return std::nullopt;
  IntMatrix out = IntMatrix::identity(H.rank);
  for (std::size_t at = seen_index[goal]; parent[at].first != SIZE_MAX; at = parent[at].first)
    out = out * units[parent[at].second];
  return out;
}

struct HomData {
  std::vector<IntMatrix> basis;
  std::vector<F2Matrix> induced_maps;
};

HomData hom_data(const Filtration& A, const Filtration& B) {
  HomData d;
  d.basis = part_homs(A, B);
  for (const auto& h : d.basis) d.induced_maps.push_back(induced(A.group, B.group, h));
  return d;
}

CohClass standard_class(const Filtration& F, std::size_t k, std::size_t n) {
  if (F.dual) {
    if (k >= F.standard.size() || !F.standard[k]) throw Error("parity mismatch");
    return *F.standard[k];
  }
  return F.group.class_of(xi(F.module, standard_element(F.module, k, n), n));
}

}  // namespace

namespace {

void attach_endomorphisms(Filtration& F, Rng& rng) {
  HomData d = hom_data(F, F);
  F.end_basis = std::move(d.basis);
  F.end_induced = std::move(d.induced_maps);
  F.units = unit_family(F.end_basis, F.module.lattice.rank(), rng);
}

}  // namespace

std::vector<IntMatrix> part_homs(const Filtration& A, const Filtration& B) {
  if (A.dual != B.dual) throw Error("dimension mismatch");
  if (!A.dual) return hom_lattice(A.module.lattice, B.module.lattice);
  std::vector<IntMatrix> out;
  for (const auto& h : hom_lattice(B.module.lattice, A.module.lattice)) out.push_back(h.transpose());
  return out;
}

SumCohomology sum_cohomology(const std::vector<TubeModule>& summands, std::size_t n) {
  std::vector<Filtration> parts;
  for (const auto& T : summands) parts.push_back(filtration(T, n));
  return sum_from_parts(std::move(parts), n);
}

SumCohomology sum_from_parts(std::vector<Filtration> parts, std::size_t n) {
  Rng rng(0);
  SumCohomology H;
  H.n = n;
  H.offsets.push_back(0);
  H.class_offsets.push_back(0);
  for (auto& F : parts) {
    H.parts.push_back(std::move(F));
    attach_endomorphisms(H.parts.back(), rng);
    H.offsets.push_back(H.offsets.back() + H.parts.back().module.lattice.rank());
    H.class_offsets.push_back(H.class_offsets.back() + H.parts.back().group.divisors.size());
  }
  const std::size_t s = H.parts.size();
  H.homs.assign(s, std::vector<std::vector<IntMatrix>>(s));
  H.hom_actions.assign(s, std::vector<std::vector<F2Matrix>>(s));
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t ip = 0; ip < s; ++ip) {
      if (i == ip || !(H.parts[i].module.label.id == H.parts[ip].module.label.id)) continue;
      HomData d = hom_data(H.parts[i], H.parts[ip]);
      H.homs[i][ip] = std::move(d.basis);
      H.hom_actions[i][ip] = std::move(d.induced_maps);
    }
  return H;
}

CanonicalForm canonical_form(const SumCohomology& H, const CohClass& e, std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t s = H.parts.size();
  const std::size_t N = H.rank();
  CanonicalForm out;
  out.witness = IntMatrix::identity(N);

  std::vector<std::optional<std::size_t>> pos(s);
  std::vector<std::vector<std::uint8_t>> target(s);
  // normalise each component to its standard class
  for (std::size_t i = 0; i < s; ++i) {
    const Filtration& F = H.parts[i];
    CohClass ci = H.component(e, i);
    pos[i] = filtration_position(F, ci);
    if (!pos[i]) continue;
    target[i] = bits_of(standard_class(F, *pos[i], H.n));
    const std::size_t r = F.module.lattice.rank();
    auto alpha = unit_path(F.group, F.units, bits_of(ci), target[i]);
    if (!alpha) {
      alpha = find_map(F.end_basis, F.end_induced, bits_of(ci), target[i], r, r, is_odd_det, rng);
      out.integral = false;
    }
    if (!alpha) throw Error("no automorphism reaches the standard class");
    out.witness.set_block(H.offsets[i], H.offsets[i], *alpha);
  }

  // i kills i' when some theta : T_i -> T_i' carries the standard class to the standard class
  std::vector<std::vector<std::optional<IntMatrix>>> theta(s, std::vector<std::optional<IntMatrix>>(s));
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t ip = 0; ip < s; ++ip) {
      if (i == ip || !pos[i] || !pos[ip]) continue;
      if (!(H.parts[i].module.label.id == H.parts[ip].module.label.id)) continue;
      theta[i][ip] = find_map(H.homs[i][ip], H.hom_actions[i][ip], target[i], target[ip], H.parts[ip].module.lattice.rank(),
                              H.parts[i].module.lattice.rank(), [](const IntMatrix&) { return true; }, rng);
    }
  auto kills = [&](std::size_t i, std::size_t ip) { return i == ip || theta[i][ip].has_value(); };

  std::vector<bool> survivor(s, false);
  for (std::size_t i = 0; i < s; ++i) {
    if (!pos[i]) continue;
    bool minimal = true, first = true;
    for (std::size_t ip = 0; ip < s; ++ip) {
      if (ip == i || !pos[ip]) continue;
      if (kills(ip, i) && !kills(i, ip)) minimal = false;
      if (kills(ip, i) && kills(i, ip) && ip < i) first = false;
    }
    survivor[i] = minimal && first;
  }

  IntMatrix K = IntMatrix::identity(N);
  for (std::size_t ip = 0; ip < s; ++ip) {
    if (!pos[ip] || survivor[ip]) continue;
    std::size_t killer = s;
    for (std::size_t i = 0; i < s && killer == s; ++i)
      if (survivor[i] && theta[i][ip]) killer = i;
    if (killer == s) throw Error("no surviving summand dominates a killed one");
    K.set_block(H.offsets[ip], H.offsets[killer], *theta[killer][ip]);
  }
  out.witness = K * out.witness;

  std::vector<std::pair<TubeId, StandardEntry>> entries;
  bool special = false;
  for (std::size_t i = 0; i < s; ++i) {
    if (survivor[i]) {
      out.delta.push_back(i);
      const TubeLabel& L = H.parts[i].module.label;
      const std::size_t k = H.parts[i].dual ? L.m - *pos[i] : *pos[i];
      entries.push_back({L.id, StandardEntry{L.j, L.m, k}});
      special = special || L.id.special;
    } else {
      out.rest.push_back(i);
    }
  }
  const bool increasing = s > 0 && H.parts[0].dual;
  std::stable_sort(entries.begin(), entries.end(), [increasing](const auto& x, const auto& y) {
    if (!(x.first == y.first)) return x.first < y.first;
    if (x.second.m != y.second.m) return increasing ? x.second.m < y.second.m : x.second.m > y.second.m;
    return x.second.k < y.second.k;
  });
  for (const auto& [id, entry] : entries) {
    if (out.data.tubes.empty() || !(out.data.tubes.back().first == id)) out.data.tubes.push_back({id, {}});
    out.data.tubes.back().second.push_back(entry);
  }
  if (special) out.data.parity = H.n % 2 ? "odd" : "even";

  out.image = H.push(out.witness, e);
  CohClass want(H.class_length(), 0);
  for (std::size_t i : out.delta)
    for (std::size_t t = 0; t < target[i].size(); ++t) want[H.class_offsets[i] + t] = target[i][t];
  if (!(bits_of(out.image) == bits_of(want))) throw Error("witness does not reach the standard class");
  return out;
}

std::vector<IntMatrix> automorphism_family(const SumCohomology& H, std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t s = H.parts.size(), N = H.rank();
  std::vector<IntMatrix> out;
  for (std::size_t i = 0; i < s; ++i) {
    const std::size_t r = H.parts[i].module.lattice.rank();
    std::vector<IntMatrix> units = H.parts[i].units;
    for (auto& u : two_adic_unit_family(H.parts[i].end_basis, r, rng)) units.push_back(std::move(u));
    for (const auto& u : units) {
      IntMatrix g = IntMatrix::identity(N);
      g.set_block(H.offsets[i], H.offsets[i], u);
      out.push_back(g);
    }
    for (std::size_t ip = 0; ip < s; ++ip) {
      if (ip == i) continue;
      for (const auto& h : part_homs(H.parts[i], H.parts[ip])) {
        IntMatrix g = IntMatrix::identity(N);
        g.set_block(H.offsets[ip], H.offsets[i], h);
        out.push_back(g);
      }
    }
  }
  return out;
}

CohClass class_from_index(const SumCohomology& H, std::size_t index) {
  CohClass c(H.class_length());
  for (std::size_t t = 0; t < c.size(); ++t) c[t] = (index >> t) & 1;
  return c;
}

std::vector<std::size_t> orbit_partition(const SumCohomology& H, const std::vector<IntMatrix>& family) {
  const std::size_t h = H.class_length();
  if (h > 20) throw Error("group too large for the orbit oracle");
  for (const auto& p : H.parts)
    if (!p.group.elementary()) throw Error("not regular");
  const std::size_t size = std::size_t{1} << h;
  std::vector<std::size_t> parent(size);
  for (std::size_t x = 0; x < size; ++x) parent[x] = x;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& g : family) {
    F2Matrix P = H.push_matrix(g);
    std::vector<std::size_t> colmask(h, 0);
    for (std::size_t c = 0; c < h; ++c)
      for (std::size_t r = 0; r < h; ++r)
        if (P.get(r, c)) colmask[c] |= std::size_t{1} << r;
    for (std::size_t x = 0; x < size; ++x) {
      std::size_t y = 0;
      for (std::size_t c = 0; c < h; ++c)
        if ((x >> c) & 1) y ^= colmask[c];
      std::size_t a = find(x), b = find(y);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<std::size_t> out(size);
  for (std::size_t x = 0; x < size; ++x) out[x] = find(x);
  return out;
}

}  // namespace klein

namespace klein {

std::string to_string(const S3Word& w) {
  if (w.empty()) return "id";
  std::string s;
  for (auto g : w) s += g == S3Generator::tau2 ? "t2" : "t3";
  return s;
}

std::vector<RMatrix> s3_chain_map(S3Generator which, std::size_t max_degree) {
  std::vector<RMatrix> c;
  c.push_back(RMatrix{{GroupRingElt::of({0, 0})}});
  for (std::size_t n = 1; n <= max_degree; ++n) {
    RMatrix d = resolution_differential(n);
    IntMatrix D = resolution_matrix(n);
    IntMatrix rhs(4 * n, n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
      // c_{n-1}(d u_k), semilinear in the coefficients of d u_k
      std::vector<GroupRingElt> z(n);
      for (std::size_t kp = 0; kp < n; ++kp) {
        if (d[k][kp].is_zero()) continue;
        GroupRingElt coeff = apply_s3(d[k][kp], which);
        for (std::size_t kpp = 0; kpp < n; ++kpp) z[kpp] = z[kpp] + coeff * c[n - 1][kp][kpp];
      }
      for (std::size_t kpp = 0; kpp < n; ++kpp)
        for (int h = 0; h < 4; ++h) rhs(4 * kpp + h, k) = z[kpp].c[h];
    }
    auto x = solve_right(D, rhs);
    if (!x) throw Error("no solution");
    RMatrix cn(n + 1, std::vector<GroupRingElt>(n + 1));
    for (std::size_t k = 0; k <= n; ++k)
      for (std::size_t kp = 0; kp <= n; ++kp)
        for (int g = 0; g < 4; ++g) cn[k][kp].c[g] = (*x)(4 * kp + g, k);
    c.push_back(std::move(cn));
  }
  return c;
}

Cochain twist_cochain(const Cochain& g, const KLattice& M, S3Generator which) {
  if (g.values.size() != g.n + 1) throw Error("dimension mismatch");
  const RMatrix c = s3_chain_map(which, g.n)[g.n];
  Cochain out = Cochain::zero(g.n, M.rank());
  for (std::size_t k = 0; k <= g.n; ++k)
    for (std::size_t kp = 0; kp <= g.n; ++kp) {
      if (c[k][kp].is_zero()) continue;
      IntVector v = act(M, c[k][kp]) * g.values[kp];
      for (std::size_t i = 0; i < v.size(); ++i) out.values[k][i] += v[i];
    }
  return out;
}

TubeModule twist_module(const TubeModule& T, S3Generator which) {
  // tau2 exchanges the +- and -+ components, tau3 exchanges +- and --
  const std::size_t s = 1, t = which == S3Generator::tau2 ? 2 : 3;
  TubeModule out;
  out.label = {s3_on_tube(T.label.id, which), T.label.j, T.label.m};
  out.lattice = twist(T.lattice, which);
  out.rep = swap_vertices(T.rep, s, t);
  out.chain = T.chain;
  std::array<std::size_t, 4> dims{}, off{};
  for (std::size_t v = 0; v < 4; ++v) dims[v] = T.rep.dim(v);
  for (std::size_t v = 1; v < 4; ++v) off[v] = off[v - 1] + dims[v - 1];
  std::array<std::size_t, 4> order = {0, 1, 2, 3};
  std::swap(order[s], order[t]);
  out.ambient = IntMatrix(T.ambient.rows(), 0);
  for (std::size_t p = 0; p < 4; ++p)
    out.ambient = hstack(out.ambient, T.ambient.block(0, off[order[p]], T.ambient.rows(), dims[order[p]]));
  return out;
}

TwistedClass apply_group_automorphism(const S3Word& psi, const std::vector<TubeModule>& summands,
                                      const Cochain& cocycle) {
  TwistedClass out{summands, cocycle};
  for (auto g : psi) {
    KLattice M(IntMatrix(0, 0), IntMatrix(0, 0));
    for (const auto& T : out.summands) M = direct_sum(M, T.lattice);
    out.cocycle = twist_cochain(out.cocycle, M, g);
    for (auto& T : out.summands) T = twist_module(T, g);
  }
  return out;
}

}  // namespace klein
