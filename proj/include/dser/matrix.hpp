#pragma once

// Dense matrices over an exact ring.

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "dser/rings.hpp"

namespace dser {

class Matrix {
 public:
  Matrix() = default;
  Matrix(Ring ring, std::size_t rows, std::size_t cols);

  static Matrix zero(const Ring& ring, std::size_t rows, std::size_t cols) { return Matrix(ring, rows, cols); }
  static Matrix identity(const Ring& ring, std::size_t n);
  /// Rows of element literals parsed in `ring`.
  static Matrix from_strings(const Ring& ring, const std::vector<std::vector<std::string>>& rows);
  static Matrix from_integers(const Ring& ring, const std::vector<std::vector<long>>& rows);

  const Ring& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  const RingElement& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  RingElement& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  void add_to(std::size_t i, std::size_t j, const RingElement& v);

  Matrix transpose() const;
  Matrix scaled(const RingElement& c) const;
  Matrix map(const std::function<RingElement(const RingElement&)>& f, const Ring& target) const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;

  bool is_identity() const;
  bool is_zero() const;
  bool is_symmetric() const;
  bool is_diagonal() const;

  RingElement determinant() const;
  /// Adjugate over determinant; throws NotAUnit when det is not invertible.
  Matrix inverse() const;

  std::vector<std::vector<std::string>> to_strings() const;
  std::string to_string() const;

  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  Ring ring_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<RingElement> data_;
};

inline bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a);

Matrix direct_sum(const Matrix& a, const Matrix& b);
/// A B A^-1 B^-1 given the inverses explicitly.
Matrix commutator(const Matrix& a, const Matrix& a_inv, const Matrix& b, const Matrix& b_inv);
/// Entry-wise lift into `target` along the canonical maps.
Matrix lift(const Matrix& a, const Ring& target);

}  // namespace dser
