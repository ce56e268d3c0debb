#include "klein/f2poly.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <sstream>

namespace klein {

F2Poly F2Poly::from_coeffs(const std::vector<int>& c) {
  if (c.size() > 64) throw Error("polynomial degree too large");
  std::uint64_t b = 0;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] & 1) b |= std::uint64_t{1} << i;
  return F2Poly(b);
}

int F2Poly::degree() const { return bits_ == 0 ? -1 : 63 - std::countl_zero(bits_); }

std::vector<int> F2Poly::coeffs() const {
  std::vector<int> c;
  for (int i = 0; i <= degree(); ++i) c.push_back(coeff(i) ? 1 : 0);
  return c;
}

F2Poly F2Poly::operator*(F2Poly o) const {
  if (degree() + o.degree() >= 64) throw Error("polynomial degree overflow");
  std::uint64_t r = 0;
  for (int i = 0; i <= degree(); ++i)
    if (coeff(i)) r ^= o.bits_ << i;
  return F2Poly(r);
}

namespace {

void divmod(std::uint64_t a, std::uint64_t b, std::uint64_t& q, std::uint64_t& r) {
  if (b == 0) throw Error("polynomial division by zero");
  int db = 63 - std::countl_zero(b);
  q = 0;
  r = a;
  while (r != 0) {
    int dr = 63 - std::countl_zero(r);
    if (dr < db) break;
    q |= std::uint64_t{1} << (dr - db);
    r ^= b << (dr - db);
  }
}

}  // namespace

F2Poly F2Poly::operator%(F2Poly o) const {
  std::uint64_t q, r;
  divmod(bits_, o.bits_, q, r);
  return F2Poly(r);
}

F2Poly F2Poly::operator/(F2Poly o) const {
  std::uint64_t q, r;
  divmod(bits_, o.bits_, q, r);
  return F2Poly(q);
}

F2Poly F2Poly::pow(unsigned e) const {
  F2Poly r = one();
  for (unsigned k = 0; k < e; ++k) r = r * *this;
  return r;
}

bool F2Poly::eval(bool x) const {
  if (!x) return coeff(0);
  return std::popcount(bits_) % 2 == 1;
}

F2Poly F2Poly::shift_by_one() const {
  F2Poly r, p = one(), t1(3);
  for (int i = 0; i <= degree(); ++i) {
    if (coeff(i)) r = r + p;
    p = p * t1;
  }
  return r;
}

F2Poly F2Poly::mobius() const {
  const int d = degree();
  F2Poly r, t1(3);
  for (int i = 0; i <= d; ++i)
    if (coeff(i)) r = r + t().pow(static_cast<unsigned>(i)) * t1.pow(static_cast<unsigned>(d - i));
  return r;
}

bool F2Poly::is_irreducible() const {
  const int d = degree();
  if (d < 1) return false;
  for (int k = 1; 2 * k <= d; ++k)
    for (std::uint64_t b = std::uint64_t{1} << k; b < (std::uint64_t{2} << k); ++b)
      if ((*this % F2Poly(b)).is_zero()) return false;
  return true;
}

std::string F2Poly::to_string() const {
  if (bits_ == 0) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    if (!coeff(i)) continue;
    if (!first) os << '+';
    first = false;
    if (i == 0)
      os << '1';
    else if (i == 1)
      os << 't';
    else
      os << "t^" << i;
  }
  return os.str();
}

F2Poly F2Poly::parse(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw Error("empty polynomial");
  if (s.find('t') == std::string::npos) {
    std::uint64_t b = 0;
    for (char c : s) {
      if (c != '0' && c != '1') throw Error("bad polynomial '" + raw + "'");
      b = (b << 1) | static_cast<std::uint64_t>(c - '0');
    }
    return F2Poly(b);
  }
  std::uint64_t b = 0;
  std::stringstream ss(s);
  std::string term;
  while (std::getline(ss, term, '+')) {
    int e;
    if (term == "1")
      e = 0;
    else if (term == "t")
      e = 1;
    else if (term.rfind("t^", 0) == 0)
      e = std::stoi(term.substr(2));
    else
      throw Error("bad polynomial term '" + term + "'");
    if (e < 0 || e > 63) throw Error("polynomial degree out of range");
    b ^= std::uint64_t{1} << e;
  }
  return F2Poly(b);
}

F2Poly gcd(F2Poly a, F2Poly b) {
  while (!b.is_zero()) {
    F2Poly r = a % b;
    a = b;
    b = r;
  }
  return a;
}

std::vector<F2Poly> irreducibles_of_degree(int d) {
  std::vector<F2Poly> out;
  for (std::uint64_t b = std::uint64_t{1} << d; b < (std::uint64_t{2} << d); ++b)
    if (F2Poly(b).is_irreducible()) out.push_back(F2Poly(b));
  return out;
}

F2Matrix companion(F2Poly p) {
  const int n = p.degree();
  if (n < 1) throw Error("companion matrix needs degree >= 1");
  F2Matrix c(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (int i = 1; i < n; ++i) c.set(static_cast<std::size_t>(i), static_cast<std::size_t>(i - 1), true);
  for (int i = 0; i < n; ++i) c.set(static_cast<std::size_t>(i), static_cast<std::size_t>(n - 1), p.coeff(i));
  return c;
}

F2Poly characteristic_polynomial(const F2Matrix& m) {
  if (m.rows() != m.cols()) throw Error("characteristic polynomial of non-square matrix");
  const std::size_t n = m.rows();
  F2Matrix h = m;
  auto swap_rc = [&](std::size_t x, std::size_t y) {
    for (std::size_t k = 0; k < n; ++k) {
      bool t = h.get(x, k);
      h.set(x, k, h.get(y, k));
      h.set(y, k, t);
    }
    for (std::size_t k = 0; k < n; ++k) {
      bool t = h.get(k, x);
      h.set(k, x, h.get(k, y));
      h.set(k, y, t);
    }
  };
  for (std::size_t j = 0; j + 2 < n; ++j) {
    std::size_t p = j + 1;
    while (p < n && !h.get(p, j)) ++p;
    if (p == n) continue;
    if (p != j + 1) swap_rc(p, j + 1);
    for (std::size_t k = j + 2; k < n; ++k) {
      if (!h.get(k, j)) continue;
      for (std::size_t c = 0; c < n; ++c)
        if (h.get(j + 1, c)) h.flip(k, c);
      for (std::size_t r = 0; r < n; ++r)
        if (h.get(r, k)) h.flip(r, j + 1);
    }
  }
  std::vector<F2Poly> p(n + 1);
  p[0] = F2Poly::one();
  for (std::size_t k = 1; k <= n; ++k) {
    F2Poly acc = (F2Poly::t() + (h.get(k - 1, k - 1) ? F2Poly::one() : F2Poly())) * p[k - 1];
    bool prod = true;
    for (std::size_t i = k - 1; i >= 1; --i) {
      prod = prod && h.get(i, i - 1);
      if (!prod) break;
      if (h.get(i - 1, k - 1)) acc = acc + p[i - 1];
    }
    p[k] = acc;
  }
  return p[n];
}

std::optional<std::pair<F2Poly, unsigned>> irreducible_power_root(F2Poly p) {
  const int d = p.degree();
  if (d < 1) return std::nullopt;
  F2Poly f = p;
  for (int k = 1; 2 * k <= d && f == p; ++k)
    for (std::uint64_t b = std::uint64_t{1} << k; b < (std::uint64_t{2} << k); ++b)
      if ((p % F2Poly(b)).is_zero()) {
        f = F2Poly(b);
        break;
      }
  unsigned m = static_cast<unsigned>(d / f.degree());
  if (static_cast<int>(m) * f.degree() != d || !(f.pow(m) == p)) return std::nullopt;
  return std::make_pair(f, m);
}

std::string to_string(SpecialPoint p) {
  switch (p) {
    case SpecialPoint::zero:
      return "0";
    case SpecialPoint::one:
      return "1";
    case SpecialPoint::infinity:
      return "inf";
  }
  return "?";
}

SpecialPoint parse_special_point(const std::string& s) {
  if (s == "0") return SpecialPoint::zero;
  if (s == "1") return SpecialPoint::one;
  if (s == "inf" || s == "infinity" || s == "oo") return SpecialPoint::infinity;
  throw Error("unknown special point '" + s + "'");
}

TubeId TubeId::homogeneous(F2Poly f) {
  if (!f.is_irreducible() || f == F2Poly(2) || f == F2Poly(3)) throw Error("invalid tube id");
  TubeId id;
  id.f = f;
  return id;
}

TubeId TubeId::special_point(SpecialPoint p) {
  TubeId id;
  id.special = true;
  id.lambda = p;
  return id;
}

bool operator<(const TubeId& x, const TubeId& y) {
  if (x.special != y.special) return x.special;  // special tubes first
  if (x.special) return x.lambda < y.lambda;
  return x.f < y.f;
}

std::string TubeId::to_string() const {
  return special ? "special:" + klein::to_string(lambda) : "hom:" + f.to_string();
}

TubeId TubeId::parse(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos) throw Error("tube id must look like special:1 or hom:t^2+t+1");
  std::string kind = s.substr(0, colon), rest = s.substr(colon + 1);
  if (kind == "special") return special_point(parse_special_point(rest));
  if (kind == "hom") return homogeneous(F2Poly::parse(rest));
  throw Error("unknown tube kind '" + kind + "'");
}

bool operator<(const TubeLabel& x, const TubeLabel& y) {
  if (!(x.id == y.id)) return x.id < y.id;
  if (x.m != y.m) return x.m < y.m;
  return x.j < y.j;
}

std::string TubeLabel::to_string() const {
  std::ostringstream os;
  if (id.special)
    os << "T^{" << klein::to_string(id.lambda) << "," << j << "}_" << m;
  else
    os << "T^{" << id.f.to_string() << "}_" << m;
  return os.str();
}

F2Poly s3_on_polynomial(F2Poly f, S3Generator which) {
  if (f == F2Poly(2) || f == F2Poly(3)) throw Error("special label required");
  return which == S3Generator::tau2 ? f.mobius() : f.shift_by_one();
}

TubeId s3_on_tube(const TubeId& id, S3Generator which) {
  if (!id.special) return TubeId::homogeneous(s3_on_polynomial(id.f, which));
  // tau2 exchanges the +- and -+ vertices and so moves 1 to infinity;
  // tau3 exchanges +- and -- and moves 1 to 0.
  SpecialPoint p = id.lambda;
  SpecialPoint moved = which == S3Generator::tau2 ? SpecialPoint::infinity : SpecialPoint::zero;
  if (p == SpecialPoint::one) return TubeId::special_point(moved);
  if (p == moved) return TubeId::special_point(SpecialPoint::one);
  return id;
}

}  // namespace klein
