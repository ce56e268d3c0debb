#include "klein/exactlin.hpp"

#include <algorithm>
#include <sstream>

namespace klein {

F2Matrix::F2Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

F2Matrix::F2Matrix(std::initializer_list<std::initializer_list<int>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error("ragged matrix literal");
    for (int v : r) data_.push_back(static_cast<std::uint8_t>(v & 1));
  }
}

F2Matrix F2Matrix::identity(std::size_t n) {
  F2Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

F2Matrix F2Matrix::reduce(const IntMatrix& a) {
  F2Matrix m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m.set(i, j, mpz_odd_p(a(i, j).get_mpz_t()) != 0);
  return m;
}

F2Matrix F2Matrix::random(std::size_t rows, std::size_t cols, Rng& rng) {
  F2Matrix m(rows, cols);
  for (auto& x : m.data_) x = static_cast<std::uint8_t>(rng() & 1);
  return m;
}

std::vector<std::uint8_t> F2Matrix::row(std::size_t i) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
}

std::vector<std::uint8_t> F2Matrix::col(std::size_t j) const {
  std::vector<std::uint8_t> v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = data_[i * cols_ + j];
  return v;
}

void F2Matrix::set_col(std::size_t j, std::span<const std::uint8_t> v) {
  if (v.size() != rows_) throw Error("dimension mismatch in set_col");
  for (std::size_t i = 0; i < rows_; ++i) data_[i * cols_ + j] = v[i] & 1;
}

IntMatrix F2Matrix::lift() const {
  IntMatrix m(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (get(i, j)) m(i, j) = 1;
  return m;
}

F2Matrix F2Matrix::transpose() const {
  F2Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.data_[j * rows_ + i] = data_[i * cols_ + j];
  return t;
}

F2Matrix F2Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw Error("block out of range");
  F2Matrix b(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) b.data_[i * nc + j] = data_[(r0 + i) * cols_ + c0 + j];
  return b;
}

void F2Matrix::set_block(std::size_t r0, std::size_t c0, const F2Matrix& b) {
  if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw Error("block out of range");
  for (std::size_t i = 0; i < b.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j)
      data_[(r0 + i) * cols_ + c0 + j] = b.data_[i * b.cols_ + j];
}

bool F2Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](std::uint8_t x) { return x == 0; });
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(F2Matrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && !m.get(p, c)) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) {
        bool t = m.get(p, j);
        m.set(p, j, m.get(r, j));
        m.set(r, j, t);
      }
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (i != r && m.get(i, c))
        for (std::size_t j = c; j < m.cols(); ++j)
          if (m.get(r, j)) m.flip(i, j);
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t F2Matrix::rank() const {
  F2Matrix m = *this;
  return rref(m).size();
}

F2Matrix F2Matrix::inverse() const {
  if (rows_ != cols_) throw Error("inverse of non-square matrix");
  if (rows_ == 0) return F2Matrix();
  F2Matrix aug = hstack(*this, identity(rows_));
  auto piv = rref(aug);
  if (piv.size() < rows_ || piv[rows_ - 1] >= cols_) throw Error("matrix not invertible mod 2");
  return aug.block(0, cols_, rows_, cols_);
}

F2Matrix F2Matrix::nullspace() const {
  F2Matrix m = *this;
  auto piv = rref(m);
  std::vector<bool> is_piv(cols_, false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < cols_; ++c)
    if (!is_piv[c]) free.push_back(c);
  F2Matrix n(cols_, free.size());
  for (std::size_t k = 0; k < free.size(); ++k) {
    n.set(free[k], k, true);
    for (std::size_t r = 0; r < piv.size(); ++r)
      if (m.get(r, free[k])) n.set(piv[r], k, true);
  }
  return n;
}

F2Matrix F2Matrix::column_space() const {
  F2Matrix m = *this;
  auto piv = rref(m);
  F2Matrix out(rows_, piv.size());
  for (std::size_t k = 0; k < piv.size(); ++k) out.set_col(k, col(piv[k]));
  return out;
}

std::optional<std::vector<std::uint8_t>> F2Matrix::solve(std::span<const std::uint8_t> b) const {
  if (b.size() != rows_) throw Error("dimension mismatch in solve");
  F2Matrix aug(rows_, cols_ + 1);
  aug.set_block(0, 0, *this);
  for (std::size_t i = 0; i < rows_; ++i) aug.set(i, cols_, b[i] & 1);
  auto piv = rref(aug);
  if (!piv.empty() && piv.back() == cols_) return std::nullopt;
  std::vector<std::uint8_t> x(cols_, 0);
  for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug.get(r, cols_);
  return x;
}

F2Matrix& F2Matrix::operator+=(const F2Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("dimension mismatch in +");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] ^= o.data_[i];
  return *this;
}

F2Matrix operator*(const F2Matrix& a, const F2Matrix& b) {
  if (a.cols_ != b.rows_) throw Error("dimension mismatch in *");
  F2Matrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k)
      if (a.data_[i * a.cols_ + k])
        for (std::size_t j = 0; j < b.cols_; ++j) c.data_[i * b.cols_ + j] ^= b.data_[k * b.cols_ + j];
  return c;
}

std::vector<std::uint8_t> operator*(const F2Matrix& a, std::span<const std::uint8_t> v) {
  if (a.cols_ != v.size()) throw Error("dimension mismatch in matrix*vector");
  std::vector<std::uint8_t> r(a.rows_, 0);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    std::uint8_t s = 0;
    for (std::size_t k = 0; k < a.cols_; ++k) s ^= a.data_[i * a.cols_ + k] & v[k];
    r[i] = s & 1;
  }
  return r;
}

std::string F2Matrix::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) os << (get(i, j) ? '1' : '0');
    os << '\n';
  }
  return os.str();
}

F2Matrix hstack(const F2Matrix& a, const F2Matrix& b) {
  if (a.rows() != b.rows()) throw Error("hstack row mismatch");
  F2Matrix m(a.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(0, a.cols(), b);
  return m;
}

F2Matrix vstack(const F2Matrix& a, const F2Matrix& b) {
  if (a.cols() != b.cols()) throw Error("vstack column mismatch");
  F2Matrix m(a.rows() + b.rows(), a.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), 0, b);
  return m;
}

F2Matrix direct_sum(const F2Matrix& a, const F2Matrix& b) {
  F2Matrix m(a.rows() + b.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), a.cols(), b);
  return m;
}

F2Matrix complete_basis(const F2Matrix& cols) {
  const std::size_t n = cols.rows();
  F2Matrix indep = cols.column_space();
  F2Matrix all = hstack(indep, F2Matrix::identity(n));
  return all.column_space();
}

F2Matrix intersect_spaces(const F2Matrix& a, const F2Matrix& b) {
  // x in both iff x = A u = B v; solve [A | B] (u; v) = 0.
  F2Matrix ab = hstack(a, b);
  F2Matrix ker = ab.nullspace();
  F2Matrix img = a * ker.block(0, 0, a.cols(), ker.cols());
  return img.column_space();
}

F2System::F2System(std::size_t nvars) : nvars_(nvars), words_((nvars + 63) / 64) {}

std::size_t F2System::add_equation() {
  eqs_.emplace_back(words_, 0);
  return eqs_.size() - 1;
}

void F2System::toggle(std::size_t eq, std::size_t var) {
  eqs_[eq][var / 64] ^= std::uint64_t{1} << (var % 64);
}

std::vector<std::vector<std::uint8_t>> F2System::nullspace() const {
  auto rows = eqs_;
  auto bit = [](const std::vector<std::uint64_t>& r, std::size_t c) {
    return ((r[c / 64] >> (c % 64)) & 1U) != 0;
  };
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < nvars_ && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && !bit(rows[p], c)) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != r && bit(rows[i], c))
        for (std::size_t w = 0; w < words_; ++w) rows[i][w] ^= rows[r][w];
    pivots.push_back(c);
    ++r;
  }
  std::vector<bool> is_piv(nvars_, false);
  for (auto c : pivots) is_piv[c] = true;
  std::vector<std::vector<std::uint8_t>> basis;
  for (std::size_t f = 0; f < nvars_; ++f) {
    if (is_piv[f]) continue;
    std::vector<std::uint8_t> v(nvars_, 0);
    v[f] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k)
      if (bit(rows[k], f)) v[pivots[k]] = 1;
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace klein
