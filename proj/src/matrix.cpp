#include "dser/matrix.hpp"

#include <bit>
#include <sstream>

namespace dser {

namespace {

void require_same(const Matrix& a, const Matrix& b, const char* op) {
  if (!same_ring(a.ring(), b.ring()))
    throw Error(ErrorKind::DescriptorMismatch,
                std::string(op) + ": " + a.ring()->to_string() + " vs " + b.ring()->to_string());
}

}  // namespace

Matrix::Matrix(Ring ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), data_(rows * cols, ring_->zero()) {}

Matrix Matrix::identity(const Ring& ring, std::size_t n) {
  Matrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = ring->one();
  return m;
}

Matrix Matrix::from_strings(const Ring& ring, const std::vector<std::vector<std::string>>& rows) {
  std::size_t nc = rows.empty() ? 0 : rows.front().size();
  Matrix m(ring, rows.size(), nc);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != nc) throw Error(ErrorKind::Parse, "ragged matrix literal");
    for (std::size_t j = 0; j < nc; ++j) m(i, j) = parse_element(ring, rows[i][j]);
  }
  return m;
}

Matrix Matrix::from_integers(const Ring& ring, const std::vector<std::vector<long>>& rows) {
  std::size_t nc = rows.empty() ? 0 : rows.front().size();
  Matrix m(ring, rows.size(), nc);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < nc; ++j) m(i, j) = ring->from_integer(rows[i].at(j));
  return m;
}

void Matrix::add_to(std::size_t i, std::size_t j, const RingElement& v) {
  RingElement& e = (*this)(i, j);
  e = ring_->add(e, v);
}

Matrix Matrix::transpose() const {
  Matrix t(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::scaled(const RingElement& c) const {
  Matrix r = *this;
  for (auto& e : r.data_) e = ring_->mul(c, e);
  return r;
}

Matrix Matrix::map(const std::function<RingElement(const RingElement&)>& f, const Ring& target) const {
  Matrix r(target, rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = f(data_[k]);
  return r;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw Error(ErrorKind::OutOfRange, "matrix block out of range");
  Matrix r(ring_, nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) r(i, j) = (*this)(r0 + i, c0 + j);
  return r;
}

bool Matrix::is_identity() const {
  if (!square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (i == j ? !(*this)(i, j).is_one() : !(*this)(i, j).is_zero()) return false;
  return true;
}

bool Matrix::is_zero() const {
  for (const auto& e : data_)
    if (!e.is_zero()) return false;
  return true;
}

bool Matrix::is_symmetric() const {
  if (!square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

bool Matrix::is_diagonal() const {
  if (!square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (i != j && !(*this)(i, j).is_zero()) return false;
  return true;
}

// Row-by-row Laplace expansion over column subsets; zero entries are skipped.
RingElement Matrix::determinant() const {
  if (!square()) throw Error(ErrorKind::PreconditionViolated, "determinant of a non-square matrix");
  const std::size_t n = rows_;
  if (n == 0) return ring_->one();
  if (n > 20) throw Error(ErrorKind::Unsupported, "determinant size limit exceeded");
  std::vector<RingElement> dp(std::size_t{1} << n);
  std::vector<bool> live(dp.size(), false);
  dp[0] = ring_->one();
  live[0] = true;
  for (std::size_t mask = 0; mask < dp.size(); ++mask) {
    if (!live[mask] || dp[mask].is_zero()) continue;
    const std::size_t r = static_cast<std::size_t>(std::popcount(mask));
    if (r == n) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (mask & (std::size_t{1} << j)) continue;
      const RingElement& a = (*this)(r, j);
      if (a.is_zero()) continue;
      int above = std::popcount(mask >> (j + 1));
      RingElement term = ring_->mul(a, dp[mask]);
      if (above & 1) term = ring_->neg(term);
      std::size_t next = mask | (std::size_t{1} << j);
      dp[next] = live[next] ? ring_->add(dp[next], term) : term;
      live[next] = true;
    }
  }
  std::size_t full = dp.size() - 1;
  return live[full] ? dp[full] : ring_->zero();
}

Matrix Matrix::inverse() const {
  if (!square()) throw Error(ErrorKind::PreconditionViolated, "inverse of a non-square matrix");
  const std::size_t n = rows_;
  RingElement det_inv = ring_->inv(determinant());
  Matrix adj(ring_, n, n);
  if (n == 1) {
    adj(0, 0) = ring_->one();
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        Matrix minor(ring_, n - 1, n - 1);
        for (std::size_t r = 0, mr = 0; r < n; ++r) {
          if (r == i) continue;
          for (std::size_t c = 0, mc = 0; c < n; ++c) {
            if (c == j) continue;
            minor(mr, mc++) = (*this)(r, c);
          }
          ++mr;
        }
        RingElement cof = minor.determinant();
        if ((i + j) & 1) cof = ring_->neg(cof);
        adj(j, i) = cof;
      }
    }
  }
  return adj.scaled(det_inv);
}

std::vector<std::vector<std::string>> Matrix::to_strings() const {
  std::vector<std::vector<std::string>> out(rows_, std::vector<std::string>(cols_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i][j] = (*this)(i, j).to_string();
  return out;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).to_string();
    os << "]";
  }
  os << "]";
  return os.str();
}

bool operator==(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  if (!same_ring(a.ring_, b.ring_)) return false;
  for (std::size_t k = 0; k < a.data_.size(); ++k)
    if (a.data_[k] != b.data_[k]) return false;
  return true;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same(a, b, "matrix product");
  if (a.cols() != b.rows()) throw Error(ErrorKind::PreconditionViolated, "matrix product shape mismatch");
  const Ring& R = a.ring();
  Matrix c(R, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const RingElement& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        const RingElement& y = b(k, j);
        if (y.is_zero()) continue;
        c(i, j) = R->add(c(i, j), x.is_one() ? y : R->mul(x, y));
      }
    }
  }
  return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same(a, b, "matrix sum");
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorKind::PreconditionViolated, "matrix sum shape mismatch");
  Matrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c.add_to(i, j, b(i, j));
  return c;
}

Matrix operator-(const Matrix& a) { return a.map([&](const RingElement& x) { return a.ring()->neg(x); }, a.ring()); }

Matrix operator-(const Matrix& a, const Matrix& b) { return a + (-b); }

Matrix direct_sum(const Matrix& a, const Matrix& b) {
  require_same(a, b, "direct sum");
  Matrix c(a.ring(), a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) c(a.rows() + i, a.cols() + j) = b(i, j);
  return c;
}

Matrix commutator(const Matrix& a, const Matrix& a_inv, const Matrix& b, const Matrix& b_inv) {
  return a * b * a_inv * b_inv;
}

Matrix lift(const Matrix& a, const Ring& target) {
  return a.map([&](const RingElement& x) { return lift(x, target); }, target);
}

}  // namespace dser
