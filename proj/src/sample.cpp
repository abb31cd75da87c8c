#include "dser/sample.hpp"

namespace dser {

long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

RingElement random_element(const Ring& ring, Rng& rng, long bound) {
  switch (ring->kind()) {
    case RingKind::Integers: return ring->from_integer(uniform(rng, -bound, bound));
    case RingKind::Rationals:
      return ring->from_rational(mpq_class(uniform(rng, -bound, bound), uniform(rng, 1, bound)));
    case RingKind::Mod: {
      mpz_class r = static_cast<unsigned long>(rng() >> 1);
      return ring->from_integer(r);
    }
    case RingKind::Laurent: {
      std::vector<LaurentTerm> terms;
      long count = uniform(rng, 0, 3);
      for (long t = 0; t < count; ++t) {
        std::vector<int> e(ring->vars().size());
        for (std::size_t i = 0; i < e.size(); ++i)
          e[i] = static_cast<int>(ring->invertible()[i] ? uniform(rng, -2, 2) : uniform(rng, 0, 2));
        terms.push_back({e, random_element(ring->base(), rng, bound)});
      }
      return ring->make_laurent(std::move(terms));
    }
    case RingKind::Localized:
      return ring->make_local(random_element(ring->base(), rng, bound), static_cast<unsigned>(uniform(rng, 0, 2)));
    case RingKind::Poly: {
      std::vector<RingElement> c;
      long deg = uniform(rng, -1, 3);
      for (long d = 0; d <= deg; ++d) c.push_back(random_element(ring->base(), rng, bound));
      return ring->make_poly(std::move(c));
    }
  }
  return ring->zero();
}

RingElement random_unit(const Ring& ring, Rng& rng, long bound) {
  switch (ring->kind()) {
    case RingKind::Integers: return ring->from_integer(uniform(rng, 0, 1) ? 1 : -1);
    case RingKind::Laurent: {
      std::vector<int> e(ring->vars().size(), 0);
      for (std::size_t i = 0; i < e.size(); ++i)
        if (ring->invertible()[i]) e[i] = static_cast<int>(uniform(rng, -2, 2));
      return ring->make_laurent({{e, random_unit(ring->base(), rng, bound)}});
    }
    case RingKind::Poly: return ring->embed_from_base(random_unit(ring->base(), rng, bound));
    case RingKind::Localized:
      if (ring->base()->kind() == RingKind::Integers) {
        RingElement s = ring->embed_from_base(ring->s());
        RingElement u = ring->embed_from_base(random_unit(ring->base(), rng, bound));
        return ring->mul(u, ring->pow(s, uniform(rng, -2, 2)));
      }
      break;
    default: break;
  }
  for (int attempt = 0; attempt < 1000; ++attempt) {
    RingElement x = random_element(ring, rng, bound);
    if (is_unit(x)) return x;
  }
  return ring->one();
}

Matrix random_matrix(const Ring& ring, std::size_t rows, std::size_t cols, Rng& rng, long bound) {
  Matrix a(ring, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a(i, j) = random_element(ring, rng, bound);
  return a;
}

Matrix random_orthogonal(const QuadraticSpace& q, std::size_t count, Rng& rng) {
  const Ring& R = q.ring();
  Matrix A = Matrix::identity(R, q.n());
  for (std::size_t k = 0; k < count; ++k) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
      std::vector<RingElement> v;
      for (std::size_t i = 0; i < q.n(); ++i) v.push_back(R->from_integer(uniform(rng, -3, 3)));
      bool anisotropic = false;
      try {
        anisotropic = is_unit(q.value(v));
      } catch (const Error&) {
      }
      if (!anisotropic) continue;
      A = A * reflection(q, v);
      break;
    }
  }
  return A;
}

LocalizedWord random_localized_word(const RingElement& s, std::size_t m, Rng& rng) {
  const Ring& Z = s.ring();
  const std::size_t n = 2;
  LocalizedWord w(Z, s, QuadraticSpace::hyperbolic(Z, n).gram(), m, Ordering::Interleaved);
  const Ring& L = w.local_ring();
  const Ring& P = w.poly_ring();
  auto pick = [&](std::size_t hi) { return static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(hi))); };
  long count = uniform(rng, 1, 3);
  for (long t = 0; t < count; ++t) {
    Word g;
    long glen = uniform(rng, 0, 2);
    for (long c = 0; c < glen; ++c) {
      switch (uniform(rng, 0, 2)) {
        case 0: g.push(Letter::tau(L->from_integer(uniform(rng, 0, 1) ? 1 : -1), pick(m))); break;
        case 1: {
          if (m < 2) {
            g.push(Letter::alpha_single(pick(m), pick(n), L->from_integer(uniform(rng, -3, 3))));
            break;
          }
          std::size_t k, l;
          do {
            k = n + pick(2 * m);
            l = n + pick(2 * m);
          } while (k >= l || k == sigma_pair(l, n, m));
          g.push(Letter::oe(k, l, L->from_integer(uniform(rng, -3, 3))));
          break;
        }
        default: g.push(Letter::beta_star_single(pick(m), pick(n), L->from_integer(uniform(rng, -3, 3)))); break;
      }
    }
    std::vector<RingElement> coeffs{L->zero()};
    long deg = uniform(rng, 1, 3);
    for (long d = 1; d <= deg; ++d)
      coeffs.push_back(L->make_local(Z->from_integer(uniform(rng, -9, 9)), static_cast<unsigned>(uniform(rng, 0, 3))));
    RingElement x = P->make_poly(std::move(coeffs));
    Letter core = uniform(rng, 0, 1) ? Letter::alpha_single(pick(m), pick(n), x) : Letter::beta_star_single(pick(m), pick(n), x);
    w.letters.push_back({g, core});
  }
  return w;
}

Letter random_dser_letter(const AmbientForm& form, Rng& rng) {
  const Ring& R = form.ring();
  const std::size_t n = form.n(), m = form.m();
  auto pick = [&](std::size_t hi) { return static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(hi))); };
  switch (uniform(rng, 0, 3)) {
    case 0: return Letter::alpha_single(pick(m), pick(n), random_element(R, rng));
    case 1: return Letter::beta_star_single(pick(m), pick(n), random_element(R, rng));
    case 2: return Letter::e_alpha(random_matrix(R, m, n, rng));
    default: return Letter::e_beta_star(random_matrix(R, m, n, rng));
  }
}

Letter random_conjugator(const AmbientForm& form, Rng& rng) {
  const Ring& R = form.ring();
  const std::size_t n = form.n(), m = form.m();
  auto pick = [&](std::size_t hi) { return static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(hi))); };
  long family = uniform(rng, 0, m >= 2 ? 3 : 2);
  switch (family) {
    case 0: return Letter::tau(random_unit(R, rng), pick(m));
    case 1: return Letter::sigma_u(random_unit(R, rng), pick(m));
    case 2: return Letter::block_oq(random_orthogonal(form.space(), pick(3), rng));
    default: {
      std::size_t k, l;
      do {
        k = n + pick(2 * m);
        l = n + pick(2 * m);
      } while (k >= l || k == sigma_pair(l, n, m));
      return Letter::oe(k, l, random_element(R, rng));
    }
  }
}

}  // namespace dser
