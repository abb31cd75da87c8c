#include "doctest.h"
#include "dser/generators.hpp"
#include "dser/sample.hpp"
#include "oracle.hpp"

using namespace dser;

namespace {

AmbientForm diag_form(const Ring& R, const std::vector<RingElement>& d, std::size_t m,
                      Ordering o = Ordering::Interleaved) {
  return AmbientForm(QuadraticSpace::diagonal(R, d), m, o);
}

// Closed single-entry formula built directly on rational matrices (1-based indices).
oracle::QMat oracle_single(bool beta, std::size_t n, std::size_t m, std::size_t i, std::size_t j, const mpq_class& x,
                           const std::vector<mpq_class>& d) {
  oracle::QMat M = oracle::identity(n + 2 * m);
  std::size_t a = n + 2 * i - 1, b = n + 2 * i;
  if (beta) std::swap(a, b);
  oracle::bump(M, a, j, x);
  oracle::bump(M, j, b, -d[j - 1] * x);
  oracle::bump(M, a, b, -d[j - 1] * x * x / 2);
  return M;
}

}  // namespace

TEST_CASE("sigma pairing") {
  CHECK(sigma_pair(1, 2, 1) == 2);
  CHECK(sigma_pair(4, 2, 1) == 3);
  CHECK(sigma_pair(4, 1, 2) == 5);
  for (std::size_t n = 0; n <= 5; ++n)
    for (std::size_t m = 1; m <= 3; ++m)
      for (std::size_t l = (n % 2 == 0 ? 1 : n + 1); l <= n + 2 * m; ++l) {
        std::size_t s = sigma_pair(l, n, m);
        CHECK(s != l);
        CHECK(sigma_pair(s, n, m) == l);
      }
  CHECK_THROWS_AS(sigma_pair(0, 2, 1), Error);
  CHECK_THROWS_AS(sigma_pair(5, 2, 1), Error);
  CHECK_THROWS_AS(sigma_pair(1, 3, 1), Error);
}

TEST_CASE("zero parameter gives the identity") {
  Ring Q = RingDescriptor::rationals();
  AmbientForm f = diag_form(Q, {Q->one(), Q->from_integer(3)}, 2);
  CHECK(letter_matrix(Letter::alpha_single(1, 1, Q->zero()), f).is_identity());
  CHECK(letter_matrix(Letter::beta_star_single(2, 2, Q->zero()), f).is_identity());
}

TEST_CASE("single letter on a rank one space") {
  Ring L = parse_ring("laurent:Q:[x]");
  RingElement x = L->variable("x");
  AmbientForm f = diag_form(L, {L->one()}, 1);
  Matrix M = letter_matrix(Letter::alpha_single(1, 1, x), f);
  Matrix E = Matrix::identity(L, 3);
  E(1, 0) = x;
  E(0, 2) = -x;
  E(1, 2) = parse_element(L, "-1/2*x^2");
  CHECK(M == E);
  CHECK(is_orthogonal(M, f));
  CHECK(diagonal_single_matrix(Letter::alpha_single(1, 1, x), f) == M);

  Ring Q = RingDescriptor::rationals();
  AmbientForm g = diag_form(Q, {Q->from_integer(2)}, 1);
  Matrix N = letter_matrix(Letter::alpha_single(1, 1, Q->from_integer(2)), g);
  oracle::QMat expect = oracle::identity(3);
  oracle::bump(expect, 2, 1, 2);
  oracle::bump(expect, 1, 3, -1);
  oracle::bump(expect, 2, 3, -1);
  CHECK(oracle::eval(N, {}) == expect);
  oracle::QMat Phi = oracle::from_ints({{2, 0, 0}, {0, 0, 1}, {0, 1, 0}});
  CHECK(oracle::mul(oracle::mul(oracle::transpose(expect), Phi), expect) == Phi);
}

TEST_CASE("single letters match the closed formula on rational points") {
  Rng rng(17);
  Ring Q = RingDescriptor::rationals();
  for (int t = 0; t < 60; ++t) {
    std::size_t n = static_cast<std::size_t>(uniform(rng, 1, 3)), m = static_cast<std::size_t>(uniform(rng, 1, 3));
    std::vector<RingElement> d;
    std::vector<mpq_class> dinv;
    for (std::size_t j = 0; j < n; ++j) {
      RingElement u = random_unit(Q, rng);
      d.push_back(u);
      dinv.push_back(1 / oracle::eval(u, {}));
    }
    AmbientForm f = diag_form(Q, d, m);
    std::size_t i = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(m)));
    std::size_t j = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(n)));
    RingElement x = random_element(Q, rng);
    bool beta = uniform(rng, 0, 1) == 1;
    Letter l = beta ? Letter::beta_star_single(i, j, x) : Letter::alpha_single(i, j, x);
    oracle::QMat expect = oracle_single(beta, n, m, i, j, oracle::eval(x, {}), dinv);
    CHECK(oracle::eval(letter_matrix(l, f), {}) == expect);
    CHECK(oracle::eval(diagonal_single_matrix(l, f), {}) == expect);
  }
}

TEST_CASE("closed formula preconditions") {
  Ring Q = RingDescriptor::rationals();
  AmbientForm hyp(QuadraticSpace::hyperbolic(Q, 2), 1, Ordering::Interleaved);
  Letter l = Letter::alpha_single(1, 1, Q->one());
  try {
    diagonal_single_matrix(l, hyp);
    FAIL("expected NotDiagonal");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotDiagonal);
  }
  AmbientForm grouped = diag_form(Q, {Q->one()}, 2, Ordering::Grouped);
  try {
    diagonal_single_matrix(l, grouped);
    FAIL("expected OrderingMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OrderingMismatch);
  }
  // The general construction accepts both.
  CHECK(is_orthogonal(letter_matrix(l, hyp), hyp));
  CHECK(is_orthogonal(letter_matrix(l, grouped), grouped));
}

TEST_CASE("oe generators") {
  Ring L = parse_ring("laurent:Q:[a]");
  RingElement a = L->variable("a");
  AmbientForm f(QuadraticSpace::hyperbolic(L, 2), 1, Ordering::Interleaved);
  Matrix M = oe_matrix(1, 3, a, f);
  Matrix E = Matrix::identity(L, 4);
  E(0, 2) = a;
  E(3, 1) = -a;
  CHECK(M == E);
  CHECK(is_orthogonal(M, f));
  CHECK(M.determinant().is_one());
  CHECK(oe_matrix(1, 3, L->zero(), f).is_identity());

  Ring Z = RingDescriptor::integers();
  AmbientForm fz(QuadraticSpace::hyperbolic(Z, 2), 1, Ordering::Interleaved);
  Matrix p = oe_matrix(1, 3, Z->from_integer(2), fz) * oe_matrix(1, 3, Z->from_integer(3), fz);
  CHECK(p == oe_matrix(1, 3, Z->from_integer(5), fz));
  oracle::QMat o2 = oracle::identity(4), o3 = oracle::identity(4), o5 = oracle::identity(4);
  for (auto [q, v] : {std::pair{&o2, 2}, {&o3, 3}, {&o5, 5}}) {
    oracle::bump(*q, 1, 3, v);
    oracle::bump(*q, 4, 2, -v);
  }
  CHECK(oracle::mul(o2, o3) == o5);
  CHECK(oracle::eval(p, {}) == o5);

  try {
    oe_matrix(1, 2, a, f);
    FAIL("expected PreconditionViolated");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PreconditionViolated);
  }
  CHECK_THROWS_AS(oe_matrix(3, 1, a, f), Error);
  AmbientForm diag = diag_form(L, {L->one(), L->one()}, 1);
  try {
    oe_matrix(1, 3, a, diag);
    FAIL("expected NotHyperbolicForm");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotHyperbolicForm);
  }
  CHECK(is_orthogonal(oe_matrix(3, 4 + 1, a, AmbientForm(QuadraticSpace::diagonal(L, {L->one(), L->one()}), 2,
                                                           Ordering::Interleaved)),
                      AmbientForm(QuadraticSpace::diagonal(L, {L->one(), L->one()}), 2, Ordering::Interleaved)));
}

TEST_CASE("word products") {
  Ring Q = RingDescriptor::rationals();
  Rng rng(4);
  AmbientForm f = diag_form(Q, {Q->one(), Q->from_integer(5)}, 2);
  CHECK(word_matrix(Word{}, f).is_identity());
  Matrix alpha = random_matrix(Q, 2, 2, rng);
  Letter E = Letter::e_alpha(alpha);
  CHECK(word_matrix(Word{E, Letter::inverse(E)}, f).is_identity());

  Letter A = Letter::alpha_single(1, 2, Q->from_integer(3));
  Letter B = Letter::beta_star_single(2, 1, Q->from_rational(mpq_class(-1, 2)));
  Word c = commutator_word(Word{A}, Word{B}, f);
  oracle::QMat a = oracle::eval(letter_matrix(A, f), {}), b = oracle::eval(letter_matrix(B, f), {});
  oracle::QMat ai = oracle::eval(letter_matrix(A, f).inverse(), {}), bi = oracle::eval(letter_matrix(B, f).inverse(), {});
  CHECK(oracle::eval(word_matrix(c, f), {}) == oracle::mul(oracle::mul(a, b), oracle::mul(ai, bi)));
}

TEST_CASE("Rao factorization check") {
  Ring L = parse_ring("laurent:Q:[x,u]:inv=[u]");
  AmbientForm f = diag_form(L, {L->one(), L->from_integer(3)}, 1);
  CHECK(verify_rao_factorization(Matrix::identity(L, 4), Word{}, Word{}, f));
  Letter E = Letter::alpha_single(1, 2, L->variable("x"));
  Letter T = Letter::tau(L->variable("u"), 1);
  Matrix eta = letter_matrix(E, f) * letter_matrix(T, f);
  CHECK(verify_rao_factorization(eta, Word{E}, Word{T}, f));
  CHECK_FALSE(verify_rao_factorization(eta, Word{E}, Word{Letter::tau(parse_element(L, "u^2"), 1)}, f));
  CHECK_FALSE(verify_rao_factorization(eta, Word{T}, Word{E}, f));
}

TEST_CASE("sampled letters are orthogonal with the expected determinant") {
  Rng rng(21);
  for (const auto& lit : {"Q", "Zmod:7", "Zmod:9"}) {
    Ring R = parse_ring(lit);
    for (int t = 0; t < 40; ++t) {
      std::size_t n = static_cast<std::size_t>(uniform(rng, 1, 3)), m = static_cast<std::size_t>(uniform(rng, 1, 3));
      std::vector<RingElement> d;
      for (std::size_t j = 0; j < n; ++j) d.push_back(random_unit(R, rng));
      for (auto o : {Ordering::Grouped, Ordering::Interleaved}) {
        AmbientForm f = diag_form(R, d, m, o);
        Matrix a = random_matrix(R, m, n, rng), b = random_matrix(R, m, n, rng);
        RingElement u = random_unit(R, rng);
        std::size_t plane = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(m)));
        for (const Letter& l : {Letter::e_alpha(a), Letter::e_beta_star(b), Letter::tau(u, plane)}) {
          Matrix M = letter_matrix(l, f);
          CHECK(is_orthogonal(M, f));
          CHECK(M.determinant().is_one());
        }
        Matrix S = letter_matrix(Letter::sigma_u(u, plane), f);
        CHECK(is_orthogonal(S, f));
        CHECK(S.determinant() == R->neg(R->one()));
        Matrix A = random_orthogonal(f.space(), 2, rng);
        CHECK(is_orthogonal(letter_matrix(Letter::block_oq(A), f), f));
        CHECK(letter_matrix(Letter::e_alpha(-a), f) == letter_matrix(Letter::e_alpha(a), f).inverse());
        CHECK(letter_matrix(Letter::e_beta_star(-b), f) == letter_matrix(Letter::e_beta_star(b), f).inverse());
      }
    }
  }
}

TEST_CASE("non-diagonal forms") {
  Rng rng(31);
  Ring Q = RingDescriptor::rationals();
  QuadraticSpace q(Matrix::from_integers(Q, {{2, 1, 0}, {1, 3, 1}, {0, 1, 1}}));
  for (auto o : {Ordering::Grouped, Ordering::Interleaved}) {
    AmbientForm f(q, 2, o);
    for (int t = 0; t < 10; ++t) {
      Matrix a = random_matrix(Q, 2, 3, rng);
      CHECK(is_orthogonal(letter_matrix(Letter::e_alpha(a), f), f));
      CHECK(is_orthogonal(letter_matrix(Letter::e_beta_star(a), f), f));
    }
  }
}

TEST_CASE("single-entry additivity and compatible pairs") {
  Rng rng(41);
  Ring Q = RingDescriptor::rationals();
  AmbientForm f = diag_form(Q, {Q->one(), Q->from_integer(2), Q->from_integer(-3)}, 2);
  for (int t = 0; t < 30; ++t) {
    std::size_t i = static_cast<std::size_t>(uniform(rng, 1, 2)), j = static_cast<std::size_t>(uniform(rng, 1, 3));
    RingElement x = random_element(Q, rng), y = random_element(Q, rng);
    CHECK(letter_matrix(Letter::alpha_single(i, j, x), f) * letter_matrix(Letter::alpha_single(i, j, y), f) ==
          letter_matrix(Letter::alpha_single(i, j, x + y), f));
    CHECK(letter_matrix(Letter::beta_star_single(i, j, x), f) * letter_matrix(Letter::beta_star_single(i, j, y), f) ==
          letter_matrix(Letter::beta_star_single(i, j, x + y), f));
    Matrix a = random_matrix(Q, 2, 3, rng), b = random_matrix(Q, 2, 3, rng);
    Matrix lhs = letter_matrix(Letter::e_alpha(a), f) * letter_matrix(Letter::e_alpha(b), f);
    bool compatible = a * adjoint(b, f.space()) == b * adjoint(a, f.space());
    CHECK((lhs == letter_matrix(Letter::e_alpha(a + b), f)) == compatible);
  }
}

TEST_CASE("grouped and interleaved realizations are conjugate") {
  Rng rng(51);
  Ring Q = RingDescriptor::rationals();
  for (int t = 0; t < 20; ++t) {
    std::size_t n = static_cast<std::size_t>(uniform(rng, 1, 3)), m = static_cast<std::size_t>(uniform(rng, 1, 3));
    std::vector<RingElement> d;
    for (std::size_t j = 0; j < n; ++j) d.push_back(random_unit(Q, rng));
    AmbientForm g = diag_form(Q, d, m, Ordering::Grouped), i = diag_form(Q, d, m, Ordering::Interleaved);
    Matrix a = random_matrix(Q, m, n, rng);
    RingElement u = random_unit(Q, rng);
    std::size_t plane = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(m)));
    for (const Letter& l : {Letter::e_alpha(a), Letter::e_beta_star(a), Letter::tau(u, plane), Letter::sigma_u(u, plane)})
      CHECK(reorder(letter_matrix(l, g), n, m, Ordering::Grouped, Ordering::Interleaved) == letter_matrix(l, i));
  }
}

TEST_CASE("structural inverses") {
  Rng rng(61);
  Ring Q = RingDescriptor::rationals();
  AmbientForm f(QuadraticSpace::hyperbolic(Q, 2), 2, Ordering::Interleaved);
  Matrix A = random_orthogonal(f.space(), 3, rng);
  for (const Letter& l : {Letter::e_alpha(random_matrix(Q, 2, 2, rng)), Letter::oe(3, 5, Q->from_integer(4)),
                          Letter::oe(1, 3, Q->from_integer(-2)), Letter::tau(Q->from_integer(3), 2),
                          Letter::sigma_u(Q->from_integer(7), 1), Letter::block_oq(A)}) {
    CHECK((letter_matrix(l, f) * letter_matrix(structural_inverse(l, f), f)).is_identity());
    CHECK((letter_matrix(l, f) * letter_matrix(Letter::inverse(l), f)).is_identity());
  }
}
