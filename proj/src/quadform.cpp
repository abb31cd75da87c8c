#include "dser/quadform.hpp"

namespace dser {

std::string to_string(Ordering o) { return o == Ordering::Grouped ? "grouped" : "interleaved"; }

Ordering parse_ordering(const std::string& text) {
  if (text == "grouped" || text == "Grouped") return Ordering::Grouped;
  if (text == "interleaved" || text == "Interleaved") return Ordering::Interleaved;
  throw Error(ErrorKind::Parse, "unknown ordering '" + text + "'", text);
}

QuadraticSpace::QuadraticSpace(Matrix phi) : phi_(std::move(phi)) {
  if (!phi_.square() || phi_.rows() == 0) throw Error(ErrorKind::PreconditionViolated, "gram matrix must be square");
  if (!phi_.is_symmetric()) throw Error(ErrorKind::PreconditionViolated, "gram matrix must be symmetric");
  RingElement det = phi_.determinant();
  if (!is_unit(det))
    throw Error(ErrorKind::NotAUnit, "gram determinant " + det.to_string() + " is not a unit", det.to_string());
  phi_inv_ = phi_.inverse();
  diagonal_ = phi_.is_diagonal();
}

QuadraticSpace QuadraticSpace::diagonal(const Ring& ring, const std::vector<RingElement>& entries) {
  Matrix phi(ring, entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) phi(i, i) = entries[i];
  return QuadraticSpace(std::move(phi));
}

QuadraticSpace QuadraticSpace::hyperbolic(const Ring& ring, std::size_t n) {
  if (n == 0 || n % 2 != 0) throw Error(ErrorKind::PreconditionViolated, "hyperbolic rank must be even");
  return QuadraticSpace(hyperbolic_gram(ring, n / 2, Ordering::Interleaved));
}

bool QuadraticSpace::is_hyperbolic() const {
  if (n() % 2 != 0) return false;
  return phi_ == hyperbolic_gram(ring(), n() / 2, Ordering::Interleaved);
}

RingElement QuadraticSpace::bilinear(const std::vector<RingElement>& v, const std::vector<RingElement>& w) const {
  if (v.size() != n() || w.size() != n()) throw Error(ErrorKind::PreconditionViolated, "vector length mismatch");
  const Ring& R = ring();
  RingElement acc = R->zero();
  for (std::size_t i = 0; i < n(); ++i)
    for (std::size_t j = 0; j < n(); ++j)
      if (!phi_(i, j).is_zero()) acc = R->add(acc, R->mul(v[i], R->mul(phi_(i, j), w[j])));
  return acc;
}

RingElement QuadraticSpace::value(const std::vector<RingElement>& v) const { return half(bilinear(v, v)); }

AmbientForm::AmbientForm(QuadraticSpace q, std::size_t m, Ordering ordering)
    : q_(std::move(q)), m_(m), ordering_(ordering) {
  if (m_ == 0) throw Error(ErrorKind::PreconditionViolated, "at least one hyperbolic plane is required");
  gram_ = direct_sum(q_.gram(), hyperbolic_gram(q_.ring(), m_, ordering_));
}

std::size_t AmbientForm::p_index(std::size_t i) const {
  if (i < 1 || i > m_) throw Error(ErrorKind::OutOfRange, "plane index " + std::to_string(i) + " out of range");
  return ordering_ == Ordering::Grouped ? n() + i - 1 : n() + 2 * i - 2;
}

std::size_t AmbientForm::pstar_index(std::size_t i) const {
  if (i < 1 || i > m_) throw Error(ErrorKind::OutOfRange, "plane index " + std::to_string(i) + " out of range");
  return ordering_ == Ordering::Grouped ? n() + m_ + i - 1 : n() + 2 * i - 1;
}

Matrix hyperbolic_gram(const Ring& ring, std::size_t m, Ordering ordering) {
  if (m == 0) throw Error(ErrorKind::PreconditionViolated, "m must be positive");
  Matrix h(ring, 2 * m, 2 * m);
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t a = ordering == Ordering::Grouped ? i : 2 * i;
    std::size_t b = ordering == Ordering::Grouped ? m + i : 2 * i + 1;
    h(a, b) = ring->one();
    h(b, a) = ring->one();
  }
  return h;
}

AmbientForm ambient_gram(const QuadraticSpace& q, std::size_t m, Ordering ordering) {
  return AmbientForm(q, m, ordering);
}

bool is_orthogonal(const Matrix& M, const Matrix& gram) {
  if (M.rows() != gram.rows() || M.cols() != gram.cols()) return false;
  return M.transpose() * gram * M == gram;
}

bool is_orthogonal(const Matrix& M, const AmbientForm& form) { return is_orthogonal(M, form.gram()); }

Matrix shuffle_matrix(const Ring& ring, std::size_t n, std::size_t m) {
  Matrix s(ring, n + 2 * m, n + 2 * m);
  for (std::size_t i = 0; i < n; ++i) s(i, i) = ring->one();
  for (std::size_t i = 0; i < m; ++i) {
    s(n + 2 * i, n + i) = ring->one();
    s(n + 2 * i + 1, n + m + i) = ring->one();
  }
  return s;
}

Matrix reorder(const Matrix& M, std::size_t n, std::size_t m, Ordering from, Ordering to) {
  if (from == to) return M;
  Matrix s = shuffle_matrix(M.ring(), n, m);
  if (from == Ordering::Grouped) return s * M * s.transpose();
  return s.transpose() * M * s;
}

Matrix reflection(const QuadraticSpace& q, const std::vector<RingElement>& v) {
  const Ring& R = q.ring();
  RingElement qv = q.value(v);
  auto qinv = R->try_inv(qv);
  if (!qinv) throw Error(ErrorKind::IsotropicVector, "q(v) = " + qv.to_string() + " is not a unit", qv.to_string());
  const std::size_t n = q.n();
  // Row vector B(v, .) = v^T phi.
  std::vector<RingElement> bv(n, R->zero());
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) bv[j] = R->add(bv[j], R->mul(v[i], q.gram()(i, j)));
  Matrix r = Matrix::identity(R, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r(i, j) = R->sub(r(i, j), R->mul(*qinv, R->mul(v[i], bv[j])));
  return r;
}

std::vector<RingElement> d_vector(const QuadraticSpace& q) {
  if (!q.is_diagonal()) throw Error(ErrorKind::NotDiagonal, "gram matrix is not diagonal");
  std::vector<RingElement> d;
  for (std::size_t j = 0; j < q.n(); ++j) d.push_back(q.ring()->inv(q.gram()(j, j)));
  return d;
}

}  // namespace dser
