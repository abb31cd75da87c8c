#pragma once

// Quadratic spaces (Q, q) with q(z) = 1/2 z^T phi z, and the ambient form
// Phi = phi + psi_m obtained by adding m hyperbolic planes.

#include <optional>
#include <string>
#include <vector>

#include "dser/matrix.hpp"

namespace dser {

enum class Ordering { Grouped, Interleaved };

std::string to_string(Ordering o);
Ordering parse_ordering(const std::string& text);

class QuadraticSpace {
 public:
  /// phi must be symmetric with unit determinant.
  explicit QuadraticSpace(Matrix phi);
  static QuadraticSpace diagonal(const Ring& ring, const std::vector<RingElement>& entries);
  /// psi_{n/2}: n even, hyperbolic pairs (1,2), (3,4), ...
  static QuadraticSpace hyperbolic(const Ring& ring, std::size_t n);

  const Ring& ring() const { return phi_.ring(); }
  std::size_t n() const { return phi_.rows(); }
  const Matrix& gram() const { return phi_; }
  const Matrix& gram_inverse() const { return phi_inv_; }
  bool is_diagonal() const { return diagonal_; }
  bool is_hyperbolic() const;

  /// q(v) = 1/2 v^T phi v.
  RingElement value(const std::vector<RingElement>& v) const;
  /// B(v, w) = v^T phi w.
  RingElement bilinear(const std::vector<RingElement>& v, const std::vector<RingElement>& w) const;

 private:
  Matrix phi_;
  Matrix phi_inv_;
  bool diagonal_ = false;
};

class AmbientForm {
 public:
  AmbientForm(QuadraticSpace q, std::size_t m, Ordering ordering);

  const QuadraticSpace& space() const { return q_; }
  const Ring& ring() const { return q_.ring(); }
  std::size_t n() const { return q_.n(); }
  std::size_t m() const { return m_; }
  std::size_t dim() const { return q_.n() + 2 * m_; }
  Ordering ordering() const { return ordering_; }
  const Matrix& gram() const { return gram_; }

  /// 0-based position of the basis vector p_i, i in 1..m.
  std::size_t p_index(std::size_t i) const;
  /// 0-based position of the dual basis vector p*_i.
  std::size_t pstar_index(std::size_t i) const;

 private:
  QuadraticSpace q_;
  std::size_t m_;
  Ordering ordering_;
  Matrix gram_;
};

Matrix hyperbolic_gram(const Ring& ring, std::size_t m, Ordering ordering);
AmbientForm ambient_gram(const QuadraticSpace& q, std::size_t m, Ordering ordering);

/// M^T Phi M == Phi.
bool is_orthogonal(const Matrix& M, const AmbientForm& form);
bool is_orthogonal(const Matrix& M, const Matrix& gram);

/// Permutation S with S * Phi_grouped * S^T = Phi_interleaved.
Matrix shuffle_matrix(const Ring& ring, std::size_t n, std::size_t m);
/// Conjugate M from one basis ordering to the other.
Matrix reorder(const Matrix& M, std::size_t n, std::size_t m, Ordering from, Ordering to);

/// z -> z - (B(v,z)/q(v)) v.  Throws IsotropicVector unless q(v) is a unit.
Matrix reflection(const QuadraticSpace& q, const std::vector<RingElement>& v);

/// d_j = phi_jj^-1.  Throws NotDiagonal.
std::vector<RingElement> d_vector(const QuadraticSpace& q);

}  // namespace dser
