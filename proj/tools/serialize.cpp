#include "serialize.hpp"

#include <algorithm>
#include <fstream>

namespace klein::io {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::size_t size_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    throw InputError(std::string("field '") + key + "' must be a nonnegative integer");
  return v.get<std::size_t>();
}

template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw InputError(e.what());
  } catch (const Error& e) {
    throw InputError(e.what());
  }
}

}  // namespace

json to_json(const Int& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

Int int_from_json(const json& j) {
  if (j.is_number_integer()) return Int(j.get<long>());
  if (j.is_string()) {
    Int x;
    if (x.set_str(j.get<std::string>(), 10) != 0) throw InputError("bad integer '" + j.get<std::string>() + "'");
    return x;
  }
  throw InputError("integer expected");
}

json to_json(const IntMatrix& m) {
  json data = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    data.push_back(row);
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

json to_json(const F2Matrix& m) { return to_json(m.lift()); }

IntMatrix int_matrix_from_json(const json& j) {
  const std::size_t r = size_field(j, "rows"), c = size_field(j, "cols");
  const json& data = field(j, "data");
  if (!data.is_array() || data.size() != r) throw InputError("matrix data has the wrong number of rows");
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (!data[i].is_array() || data[i].size() != c) throw InputError("matrix row has the wrong length");
    for (std::size_t k = 0; k < c; ++k) m(i, k) = int_from_json(data[i][k]);
  }
  return m;
}

F2Matrix f2_matrix_from_json(const json& j) {
  IntMatrix m = int_matrix_from_json(j);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t k = 0; k < m.cols(); ++k)
      if (m(i, k) != 0 && m(i, k) != 1) throw InputError("F2 matrix entries must be 0 or 1");
  return F2Matrix::reduce(m);
}

json to_json(const KLattice& M) { return {{"rank", M.rank()}, {"a", to_json(M.a())}, {"b", to_json(M.b())}}; }

KLattice lattice_from_json(const json& j) {
  IntMatrix a = int_matrix_from_json(field(j, "a")), b = int_matrix_from_json(field(j, "b"));
  if (j.contains("rank") && size_field(j, "rank") != a.rows()) throw InputError("rank does not match the matrices");
  if (!a.is_square() || a.rows() != b.rows() || !b.is_square()) throw InputError("a and b must be square of equal size");
  return guarded([&] { return KLattice(a, b); });
}

json to_json(const DimVector& d) { return json::array({d.dot, d.d[0], d.d[1], d.d[2], d.d[3]}); }

json to_json(const LambdaRep& V) {
  json f;
  for (std::size_t s = 0; s < 4; ++s) f[std::string(kSignNames[s])] = to_json(V.f[s]);
  return {{"dims", to_json(V.dims())}, {"f", f}};
}

LambdaRep rep_from_json(const json& j) {
  const json& f = field(j, "f");
  std::array<F2Matrix, 4> maps;
  for (std::size_t s = 0; s < 4; ++s) maps[s] = f2_matrix_from_json(field(f, std::string(kSignNames[s]).c_str()));
  const std::size_t dot = maps[0].cols();
  for (const auto& m : maps)
    if (m.cols() != dot) throw InputError("all maps must start at the centre");
  LambdaRep V = guarded([&] { return LambdaRep(dot, maps); });
  if (j.contains("dims") && !(to_json(V.dims()) == j.at("dims"))) throw InputError("dims do not match the maps");
  return V;
}

json to_json(const TubeId& id) {
  if (id.special) return {{"kind", "special"}, {"lambda", to_string(id.lambda)}};
  return {{"kind", "hom"}, {"f", id.f.coeffs()}};
}

TubeId tube_id_from_json(const json& j) {
  return guarded([&] {
    if (j.is_string()) return TubeId::parse(j.get<std::string>());
    const std::string kind = field(j, "kind").get<std::string>();
    if (kind == "special") return TubeId::special_point(parse_special_point(field(j, "lambda").get<std::string>()));
    if (kind == "hom") return TubeId::homogeneous(F2Poly::from_coeffs(field(j, "f").get<std::vector<int>>()));
    throw InputError("unknown tube kind '" + kind + "'");
  });
}

json to_json(const TubeLabel& l) { return {{"tube", to_json(l.id)}, {"j", l.j}, {"m", l.m}}; }

TubeLabel label_from_json(const json& j) {
  TubeLabel l{tube_id_from_json(field(j, "tube")), j.value("j", 0), size_field(j, "m")};
  if (l.id.special && l.j != 1 && l.j != 2) throw InputError("special tubes need j = 1 or 2");
  if (!l.id.special) l.j = 0;
  if (l.m == 0) throw InputError("m must be positive");
  return l;
}

json to_json(const StandardData& d) {
  json tubes = json::array();
  for (const auto& [id, seq] : d.tubes) {
    json s = json::array();
    for (const auto& e : seq) s.push_back({{"j", e.j}, {"m", e.m}, {"k", e.k}});
    tubes.push_back({{"tube", to_json(id)}, {"seq", s}});
  }
  return {{"parity", d.parity}, {"tubes", tubes}};
}

StandardData standard_data_from_json(const json& j) {
  StandardData d;
  const json& tubes = j.is_array() ? j : field(j, "tubes");
  if (j.is_object()) d.parity = j.value("parity", "none");
  if (d.parity != "even" && d.parity != "odd" && d.parity != "none") throw InputError("parity must be even, odd or none");
  for (const auto& t : tubes) {
    std::vector<StandardEntry> seq;
    for (const auto& e : field(t, "seq")) seq.push_back({e.value("j", 0), size_field(e, "m"), size_field(e, "k")});
    d.tubes.emplace_back(tube_id_from_json(field(t, "tube")), seq);
  }
  std::sort(d.tubes.begin(), d.tubes.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return d;
}

json class_json(const CohClass& c, const IntVector& divisors) {
  json coords = json::array(), divs = json::array();
  for (const auto& x : c) coords.push_back(to_json(x));
  for (const auto& x : divisors) divs.push_back(to_json(x));
  return {{"coords", coords}, {"divisors", divs}};
}

json to_json(const CohomologyGroup& H) {
  json divs = json::array();
  for (const auto& d : H.divisors) divs.push_back(to_json(d));
  return {{"n", H.n}, {"divisors", divs}};
}

json to_json(const ColatticeLevel& N) { return {{"base", to_json(N.base)}, {"level", N.level}}; }

ColatticeLevel colattice_from_json(const json& j) {
  KLattice M = lattice_from_json(field(j, "base"));
  return guarded([&] { return dual_level(M, static_cast<unsigned>(size_field(j, "level"))); });
}

json to_json(const GroupPresentation& p) {
  json out = {{"generators", p.generators}, {"relations", p.relations}, {"base", p.base}};
  json delta = json::array(), rest = json::array();
  for (const auto& l : p.delta_summands) delta.push_back(to_json(l));
  for (const auto& l : p.rest_summands) rest.push_back(to_json(l));
  out["delta_summands"] = delta;
  out["rest_summands"] = rest;
  json a = json::array(), b = json::array();
  for (const auto& x : p.a_square) a.push_back(to_json(x));
  for (const auto& x : p.b_square) b.push_back(to_json(x));
  out["a_square"] = a;
  out["b_square"] = b;
  if (p.level) out["level"] = p.level;
  return out;
}

json to_json(const Classification& c) {
  json out = {{"isomorphic", c.isomorphic}};
  out["psi"] = c.isomorphic ? json(to_string(c.psi)) : json(nullptr);
  out["first"] = to_json(c.first);
  out["second"] = to_json(c.second);
  return out;
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

}  // namespace klein::io
