#include "klein/groups.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace klein {

namespace {

Int mod_pos(const Int& x, const Int& q) {
  Int r = x % q;
  if (r < 0) r += q;
  return r;
}

std::size_t pow3(std::size_t n) {
  std::size_t p = 1;
  while (n--) p *= 3;
  return p;
}

// digits a, b, ab -> 0, 1, 2
std::vector<GroupElt> decode_tuple(std::size_t t, std::size_t n) {
  std::vector<GroupElt> out(n);
  for (std::size_t i = n; i-- > 0;) {
    out[i] = GroupElt::from_index(static_cast<int>(t % 3) + 1);
    t /= 3;
  }
  return out;
}

std::size_t encode_tuple(const std::vector<GroupElt>& g) {
  std::size_t t = 0;
  for (GroupElt x : g) t = 3 * t + static_cast<std::size_t>(x.index() - 1);
  return t;
}

// h times a vector in coordinates 4 t + g
IntVector shift(const IntVector& v, GroupElt h) {
  IntVector out(v.size());
  for (std::size_t c = 0; c < v.size(); ++c) out[4 * (c / 4) + (h * GroupElt::from_index(static_cast<int>(c % 4))).index()] = v[c];
  return out;
}

// Lift `next` through the chain map already known in degree n - 1: for each
// free generator column of `from`, solve to(n) X = prev * from(n) column.
IntMatrix lift_degree(const IntMatrix& prev, const IntMatrix& from_d, const IntMatrix& to_d, std::size_t gens) {
  IntMatrix out(to_d.cols(), 4 * gens);
  for (std::size_t t = 0; t < gens; ++t) {
    IntVector target = prev * from_d.col(4 * t);
    auto x = solve_right(to_d, IntMatrix::column(target));
    if (!x) throw Error("no solution");
    IntVector col = x->col(0);
    for (GroupElt h : kGroup) out.set_col(4 * t + h.index(), shift(col, h));
  }
  return out;
}

std::string word_of(const IntVector& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    if (!s.empty()) s += " ";
    s += "w" + std::to_string(i + 1);
    if (v[i] != 1) s += "^" + v[i].get_str();
  }
  return s.empty() ? "1" : s;
}

std::string vector_text(const IntVector& v, unsigned level) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    if (level == 0 || v[i] == 0) {
      s += v[i].get_str();
      continue;
    }
    mpq_class q(v[i], Int(1) << level);
    q.canonicalize();
    s += q.get_str();
  }
  return s + ")";
}

struct DeltaPiece {
  TubeModule module;
  std::size_t k = 0;
  bool infinity = false;
};

std::vector<DeltaPiece> delta_pieces(const StandardData& delta) {
  if (delta.parity == "odd") throw Error("odd special data in degree 2");
  std::vector<DeltaPiece> out;
  for (const auto& [id, seq] : delta.tubes)
    for (const auto& e : seq)
      out.push_back({tube_module(id, e.j, e.m), e.k, id.special && id.lambda == SpecialPoint::infinity});
  return out;
}

KLattice total_lattice(const std::vector<DeltaPiece>& pieces, const std::vector<TubeLabel>& rest) {
  KLattice M(IntMatrix(0, 0), IntMatrix(0, 0));
  for (const auto& p : pieces) M = direct_sum(M, p.module.lattice);
  for (const auto& l : rest) M = direct_sum(M, tube_module(l).lattice);
  return M;
}

std::string base_text(const std::vector<DeltaPiece>& pieces, const std::vector<TubeLabel>& rest, bool dual) {
  std::string s;
  auto add = [&](const TubeLabel& l) {
    if (!s.empty()) s += " + ";
    s += dual ? "D(" + l.to_string() + ")" : l.to_string();
  };
  for (const auto& p : pieces) add(p.module.label);
  if (!rest.empty()) s += s.empty() ? "0 | " : " | ";
  bool first = true;
  for (const auto& l : rest) {
    if (!first) s += " + ";
    s += dual ? "D(" + l.to_string() + ")" : l.to_string();
    first = false;
  }
  return s.empty() ? "0" : s;
}

// Shared by both presentations once the cochain is assembled.
GroupPresentation finish(GroupPresentation p, const std::vector<DeltaPiece>& pieces, const std::vector<TubeLabel>& rest,
                         const std::vector<IntVector>& values) {
  const std::size_t r = p.module.rank();
  p.cocycle = Cochain::zero(2, r);
  p.a_square = IntVector(r);
  p.b_square = IntVector(r);
  std::size_t off = 0;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const std::size_t ri = pieces[i].module.lattice.rank();
    const std::size_t slot = xi_slot(pieces[i].infinity, 2);
    IntVector& sq = pieces[i].infinity ? p.b_square : p.a_square;
    for (std::size_t c = 0; c < ri; ++c) {
      p.cocycle.values[slot][off + c] = values[i][c];
      sq[off + c] = values[i][c];
    }
    off += ri;
  }
  p.rest_summands = rest;
  for (const auto& q : pieces) p.delta_summands.push_back(q.module.label);
  p.generators.clear();
  for (std::size_t i = 0; i < r; ++i) p.generators.push_back("w" + std::to_string(i + 1));
  p.generators.push_back("a");
  p.generators.push_back("b");
  p.relations.clear();
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j)
      p.relations.push_back("w" + std::to_string(i + 1) + " w" + std::to_string(j + 1) + " = w" +
                            std::to_string(j + 1) + " w" + std::to_string(i + 1));
  if (p.module.modulus != 0)
    for (std::size_t i = 0; i < r; ++i)
      p.relations.push_back("w" + std::to_string(i + 1) + "^" + p.module.modulus.get_str() + " = 1");
  for (const auto& [name, g] : {std::pair{"a", kGroup[1]}, std::pair{"b", kGroup[2]}}) {
    for (std::size_t i = 0; i < r; ++i) {
      IntVector e(r);
      e[i] = 1;
      p.relations.push_back(std::string(name) + " w" + std::to_string(i + 1) + " " + name + "^-1 = " +
                            word_of(p.module.act(g, e)));
    }
  }
  p.relations.push_back("a b = b a");
  p.relations.push_back("a^2 = " + vector_text(p.a_square, p.level));
  p.relations.push_back("b^2 = " + vector_text(p.b_square, p.level));
  return p;
}

}  // namespace

IntVector BaseModule::act(GroupElt g, const IntVector& v) const { return reduce(action.act(g) * v); }

IntVector BaseModule::reduce(IntVector v) const {
  if (modulus != 0)
    for (auto& x : v) x = mod_pos(x, modulus);
  return v;
}

bool BaseModule::equal(const IntVector& x, const IntVector& y) const {
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (modulus == 0 ? x[i] != y[i] : mod_pos(x[i] - y[i], modulus) != 0) return false;
  }
  return true;
}

BarCocycle BarCocycle::zero(std::size_t rank) {
  BarCocycle out;
  out.table.fill(IntVector(rank));
  return out;
}

bool BarCocycle::normalized() const {
  for (GroupElt g : kGroup) {
    for (const auto& x : {(*this)(GroupElt{}, g), (*this)(g, GroupElt{})})
      for (const auto& c : x)
        if (c != 0) return false;
  }
  return true;
}

bool is_bar_cocycle(const BaseModule& M, const BarCocycle& gamma) {
  for (GroupElt g : kGroup)
    for (GroupElt h : kGroup)
      for (GroupElt k : kGroup) {
        IntVector lhs = M.act(g, gamma(h, k));
        const IntVector& x = gamma(g * h, k);
        const IntVector& y = gamma(g, h * k);
        const IntVector& z = gamma(g, h);
        for (std::size_t i = 0; i < lhs.size(); ++i) lhs[i] += y[i] - x[i] - z[i];
        if (!M.equal(lhs, IntVector(lhs.size()))) return false;
      }
  return true;
}

IntMatrix bar_differential(std::size_t n) {
  if (n == 0) throw Error("degree must be positive");
  const std::size_t src = pow3(n), dst = pow3(n - 1);
  IntMatrix D(4 * dst, 4 * src);
  for (std::size_t t = 0; t < src; ++t) {
    const auto g = decode_tuple(t, n);
    for (GroupElt h : kGroup) {
      const std::size_t col = 4 * t + h.index();
      // g1 [g2 | ... | gn]
      D(4 * encode_tuple({g.begin() + 1, g.end()}) + (h * g[0]).index(), col) += 1;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        GroupElt prod = g[i] * g[i + 1];
        if (prod == GroupElt{}) continue;
        std::vector<GroupElt> merged(g.begin(), g.begin() + i);
        merged.push_back(prod);
        merged.insert(merged.end(), g.begin() + i + 2, g.end());
        D(4 * encode_tuple(merged) + h.index(), col) += (i % 2 == 0) ? -1 : 1;
      }
      D(4 * encode_tuple({g.begin(), g.end() - 1}) + h.index(), col) += (n % 2 == 0) ? 1 : -1;
    }
  }
  return D;
}

ComparisonMaps comparison_map(std::size_t max_degree) {
  ComparisonMaps out;
  out.bar_to_poly.push_back(IntMatrix::identity(4));
  out.poly_to_bar.push_back(IntMatrix::identity(4));
  for (std::size_t n = 1; n <= max_degree; ++n) {
    const IntMatrix Bd = bar_differential(n), Pd = resolution_matrix(n);
    out.bar_to_poly.push_back(lift_degree(out.bar_to_poly.back(), Bd, Pd, pow3(n)));
    out.poly_to_bar.push_back(lift_degree(out.poly_to_bar.back(), Pd, Bd, n + 1));
  }
  return out;
}

const ComparisonMaps& default_comparison() {
  static const ComparisonMaps maps = comparison_map(2);
  return maps;
}

BarCocycle bar_cocycle(const BaseModule& M, const Cochain& g, const ComparisonMaps& maps) {
  if (g.n != 2 || maps.bar_to_poly.size() < 3) throw Error("dimension mismatch");
  const IntMatrix& U = maps.bar_to_poly[2];
  BarCocycle out = BarCocycle::zero(M.rank());
  for (std::size_t t = 0; t < 9; ++t) {
    const auto gh = decode_tuple(t, 2);
    IntVector acc(M.rank());
    for (std::size_t k = 0; k < 3; ++k)
      for (GroupElt h : kGroup) {
        const Int& c = U(4 * k + h.index(), 4 * t);
        if (c == 0) continue;
        IntVector v = M.action.act(h) * g.values[k];
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += c * v[i];
      }
    out.at(gh[0], gh[1]) = M.reduce(acc);
  }
  return out;
}

Cochain polynomial_cochain(const BaseModule& M, const BarCocycle& gamma, const ComparisonMaps& maps) {
  if (maps.poly_to_bar.size() < 3) throw Error("dimension mismatch");
  const IntMatrix& V = maps.poly_to_bar[2];
  Cochain out = Cochain::zero(2, M.rank());
  for (std::size_t k = 0; k < 3; ++k) {
    IntVector acc(M.rank());
    for (std::size_t t = 0; t < 9; ++t) {
      const auto gh = decode_tuple(t, 2);
      for (GroupElt h : kGroup) {
        const Int& c = V(4 * t + h.index(), 4 * k);
        if (c == 0) continue;
        IntVector v = M.action.act(h) * gamma(gh[0], gh[1]);
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += c * v[i];
      }
    }
    out.values[k] = M.reduce(acc);
  }
  return out;
}

ExtensionGroup::Element ExtensionGroup::identity() const { return {IntVector(base.rank()), GroupElt{}}; }

ExtensionGroup::Element ExtensionGroup::multiply(const Element& x, const Element& y) const {
  IntVector u = base.act(x.g, y.u);
  const IntVector& c = gamma(x.g, y.g);
  for (std::size_t i = 0; i < u.size(); ++i) u[i] += x.u[i] + c[i];
  return {base.reduce(std::move(u)), x.g * y.g};
}

ExtensionGroup::Element ExtensionGroup::inverse(const Element& x) const {
  // (u, g)(v, g) = (u + g v + gamma(g, g), 1)
  IntVector w = x.u;
  const IntVector& c = gamma(x.g, x.g);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = -(w[i] + c[i]);
  return {base.act(x.g, w), x.g};
}

bool ExtensionGroup::equal(const Element& x, const Element& y) const { return x.g == y.g && base.equal(x.u, y.u); }

bool ExtensionGroup::associative(Rng& rng, int rounds) const {
  std::uniform_int_distribution<long> coeff(-5, 5);
  auto random_vec = [&] {
    IntVector v(base.rank());
    for (auto& x : v) x = coeff(rng);
    return base.reduce(v);
  };
  for (int r = 0; r < rounds; ++r)
    for (GroupElt g : kGroup)
      for (GroupElt h : kGroup)
        for (GroupElt k : kGroup) {
          Element x{random_vec(), g}, y{random_vec(), h}, z{random_vec(), k};
          if (!equal(multiply(multiply(x, y), z), multiply(x, multiply(y, z)))) return false;
        }
  return true;
}

ExtensionGroup extension_from_cochain(const BaseModule& M, const Cochain& g) { return {M, bar_cocycle(M, g)}; }

ExtensionGroup extension_from_class(const KLattice& M, const CohClass& e) {
  CohomologyGroup H = cohomology_group(M, 2);
  return extension_from_cochain(BaseModule{M, 0}, H.representative(H.reduce(e)));
}

std::string GroupPresentation::to_text() const {
  std::ostringstream out;
  out << "base: " << base << "\n";
  if (level) out << "coefficients: 2^-" << level << " Z/Z\n";
  out << "generators:";
  for (const auto& g : generators) out << " " << g;
  out << "\nrelations:\n";
  for (const auto& r : relations) out << "  " << r << "\n";
  return out.str();
}

GroupPresentation cr_presentation(const StandardData& delta, const std::vector<TubeLabel>& rest) {
  const auto pieces = delta_pieces(delta);
  GroupPresentation p;
  p.module = BaseModule{total_lattice(pieces, rest), 0};
  p.base = base_text(pieces, rest, false);
  std::vector<IntVector> values;
  for (const auto& q : pieces) values.push_back(standard_element(q.module, q.k, 2));
  return finish(std::move(p), pieces, rest, values);
}

GroupPresentation ch_presentation(const CostandardData& delta, const std::vector<TubeLabel>& rest, unsigned level) {
  const auto pieces = delta_pieces(delta);
  ColatticeLevel N = dual_level(total_lattice(pieces, rest), level);
  GroupPresentation p;
  p.module = BaseModule{N.dual(), N.modulus()};
  p.level = level;
  p.base = base_text(pieces, rest, true);
  std::vector<IntVector> values;
  for (const auto& q : pieces) values.push_back(costandard_element(q.module, q.k, 2, level));
  return finish(std::move(p), pieces, rest, values);
}

ExtensionGroup extension_of(const GroupPresentation& p) { return extension_from_cochain(p.module, p.cocycle); }

bool satisfies_presentation(const ExtensionGroup& G, const GroupPresentation& p) {
  using E = ExtensionGroup::Element;
  const E a = G.lift(kGroup[1]), b = G.lift(kGroup[2]);
  const std::size_t r = G.base.rank();
  for (std::size_t i = 0; i < r; ++i) {
    IntVector e(r);
    e[i] = 1;
    for (const E& s : {a, b}) {
      E lhs = G.multiply(G.multiply(s, G.embed(e)), G.inverse(s));
      if (!G.equal(lhs, G.embed(p.module.act(s.g, e)))) return false;
    }
  }
  if (!G.equal(G.multiply(a, b), G.multiply(b, a))) return false;
  if (!G.equal(G.multiply(a, a), G.embed(p.a_square))) return false;
  return G.equal(G.multiply(b, b), G.embed(p.b_square));
}

bool is_crystallographic(const KLattice& M) {
  int nonzero = 0;
  for (std::size_t s = 1; s < 4; ++s)
    if (eigencomponent(M, kSignPairs[s]).rank() > 0) ++nonzero;
  return nonzero >= 2;
}

std::vector<S3Word> s3_elements() {
  using G = S3Generator;
  return {{}, {G::tau2}, {G::tau3}, {G::tau2, G::tau3}, {G::tau3, G::tau2}, {G::tau2, G::tau3, G::tau2}};
}

Classification classify(const std::vector<TubeModule>& s1, const CohClass& e1, const std::vector<TubeModule>& s2,
                        const CohClass& e2, bool dual) {
  auto form = [dual](const std::vector<TubeModule>& s, const CohClass& e, std::vector<TubeLabel>& rest) {
    SumCohomology H = dual ? co_sum_cohomology(s, 2) : sum_cohomology(s, 2);
    CanonicalForm cf = dual ? co_canonical_form(H, e) : canonical_form(H, e);
    for (std::size_t i : cf.rest) rest.push_back(s[i].label);
    std::sort(rest.begin(), rest.end());
    return cf.data;
  };
  Classification out;
  out.first = form(s1, e1, out.first_rest);
  out.second = form(s2, e2, out.second_rest);
  for (const S3Word& psi : s3_elements()) {
    StandardData d = out.first;
    std::vector<TubeLabel> rest = out.first_rest;
    for (S3Generator t : psi) {
      d = apply_s3(d, t);
      for (auto& l : rest) l.id = s3_on_tube(l.id, t);
    }
    std::sort(rest.begin(), rest.end());
    if (d == out.second && rest == out.second_rest) {
      out.isomorphic = true;
      out.psi = psi;
      return out;
    }
  }
  return out;
}

}  // namespace klein
