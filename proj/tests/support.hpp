#pragma once

// Random generators and independent oracles shared by the test suites.

#include "hamgeom/exact_linalg.hpp"
#include "hamgeom/geom/calculus.hpp"

#include <algorithm>
#include <functional>

#include <random>

namespace support {

using namespace hamgeom;

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen); }
  Rational rational(int range = 5, int max_den = 3) {
    return Rational(integer(-range, range)) / Rational(integer(1, max_den));
  }
  Rational nonzero_rational(int range = 5, int max_den = 3) {
    Rational r;
    do r = rational(range, max_den);
    while (r == 0);
    return r;
  }
};

inline Polynomial random_polynomial(Rng& rng, std::size_t nvars, std::size_t terms = 3, unsigned max_degree = 2) {
  Polynomial p(nvars);
  for (std::size_t t = 0; t < terms; ++t) {
    Exponent e(nvars, 0);
    unsigned budget = static_cast<unsigned>(rng.integer(0, static_cast<int>(max_degree)));
    while (budget-- > 0) ++e[static_cast<std::size_t>(rng.integer(0, static_cast<int>(nvars) - 1))];
    p.add_term(e, rng.rational());
  }
  return p;
}

/// Polynomial, or with probability 1/3 a quotient by 1 + (random square-ish term).
inline RationalFunction random_function(Rng& rng, std::size_t nvars, bool allow_quotient = true) {
  Polynomial num = random_polynomial(rng, nvars);
  if (!allow_quotient || rng.integer(0, 2) != 0) return RationalFunction(num);
  Polynomial den = Polynomial::constant(nvars, 1);
  const auto v = static_cast<std::size_t>(rng.integer(0, static_cast<int>(nvars) - 1));
  den += Polynomial::variable(nvars, v).pow(2) * Rational(rng.integer(1, 3));
  return RationalFunction(num, den);
}

inline geom::VectorField random_field(Rng& rng, const Chart& chart, bool allow_quotient = true) {
  std::vector<RationalFunction> c;
  for (std::size_t i = 0; i < chart.dimension(); ++i)
    c.push_back(random_function(rng, chart.num_variables(), allow_quotient));
  return geom::VectorField(chart, std::move(c));
}

inline geom::DifferentialForm random_form(Rng& rng, const Chart& chart, std::size_t degree,
                                          bool allow_quotient = true) {
  geom::DifferentialForm a(chart, degree);
  const std::size_t n = chart.dimension();
  const int terms = rng.integer(1, 3);
  for (int t = 0; t < terms; ++t) {
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < degree; ++k) idx.push_back(static_cast<std::size_t>(rng.integer(0, static_cast<int>(n) - 1)));
    std::sort(idx.begin(), idx.end());
    if (std::adjacent_find(idx.begin(), idx.end()) != idx.end()) continue;
    a.add(idx, random_function(rng, chart.num_variables(), allow_quotient));
  }
  return a;
}

inline geom::Tensor11 random_tensor(Rng& rng, const Chart& chart, bool constant = false) {
  std::vector<RationalFunction> c;
  const std::size_t n = chart.dimension();
  for (std::size_t i = 0; i < n * n; ++i)
    c.push_back(constant ? RationalFunction::constant(chart.num_variables(), rng.rational())
                         : random_function(rng, chart.num_variables(), false));
  return geom::Tensor11(chart, std::move(c));
}

inline std::vector<Rational> random_point(Rng& rng, std::size_t nvars) {
  std::vector<Rational> p;
  for (std::size_t i = 0; i < nvars; ++i) p.push_back(rng.rational(9, 7));
  return p;
}

// Component-wise Lie derivative of a form, independent of Cartan's formula:
// (L_X a)_I = X^k d_k a_I + sum_s a_{I[s := k]} d_{i_s} X^k.
inline geom::DifferentialForm leibniz_lie(const geom::VectorField& x, const geom::DifferentialForm& a) {
  const Chart& c = a.chart();
  const std::size_t n = c.dimension(), deg = a.degree();
  geom::DifferentialForm out(c, deg);
  std::vector<std::size_t> idx(deg);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t start) {
    if (pos == deg) {
      RationalFunction sum(c.num_variables());
      for (std::size_t k = 0; k < n; ++k) sum += x[k] * geom::partial(a.component(idx), c, k);
      for (std::size_t s = 0; s < deg; ++s)
        for (std::size_t k = 0; k < n; ++k) {
          auto j = idx;
          j[s] = k;
          sum += a.component(j) * geom::partial(x[k], c, idx[s]);
        }
      out.add(idx, sum);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      idx[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
  return out;
}

inline ExactMatrix canonical_j(std::size_t n) {
  ExactMatrix j = ExactMatrix::Zero(2 * n, 2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    j(k, n + k) = 1;
    j(n + k, k) = -1;
  }
  return j;
}

inline geom::VectorField linear_field(const Chart& c, const ExactMatrix& a) {
  const std::size_t n = c.dimension();
  std::vector<RationalFunction> comps;
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial p(c.num_variables());
    for (std::size_t j = 0; j < n; ++j) p += Polynomial::variable(c.num_variables(), j) * a(i, j);
    comps.emplace_back(p);
  }
  return geom::VectorField(c, comps);
}

inline RationalFunction quadratic(const Chart& c, const ExactMatrix& m) {
  Polynomial p(c.num_variables());
  for (std::size_t i = 0; i < c.dimension(); ++i)
    for (std::size_t j = 0; j < c.dimension(); ++j)
      p += Polynomial::variable(c.num_variables(), i) * Polynomial::variable(c.num_variables(), j) * m(i, j);
  return RationalFunction(p);
}


struct DerivedInstance {
  geom::VectorField gamma;
  geom::Tensor11 tensor;
  RationalFunction f;
};

// G = A x with A = J S Hamiltonian on (q1, q2, p1, p2), T a polynomial in A
// (so L_G T = 0), F built from quadratic integrals x^t M x with A^t M + M A = 0.
inline DerivedInstance derived_instance(Rng& rng) {
  static const Chart c({"q1", "q2", "p1", "p2"});
  const ExactMatrix j = canonical_j(2);
  ExactMatrix s(4, 4);
  for (int a = 0; a < 4; ++a)
    for (int b = a; b < 4; ++b) s(a, b) = s(b, a) = rng.rational(3, 2);
  const ExactMatrix a = j * s;

  ExactMatrix t = ExactMatrix::Zero(4, 4), power = ExactMatrix::Identity(4, 4);
  for (int k = 0; k < 3; ++k) {
    t += rng.rational(2, 2) * power;
    power = power * a;
  }
  std::vector<RationalFunction> tc;
  for (int r = 0; r < 4; ++r)
    for (int col = 0; col < 4; ++col) tc.push_back(RationalFunction::constant(c.num_variables(), t(r, col)));

  std::vector<std::pair<int, int>> slots;
  for (int r = 0; r < 4; ++r)
    for (int col = r; col < 4; ++col) slots.emplace_back(r, col);
  ExactMatrix system(16, 10);
  for (std::size_t u = 0; u < slots.size(); ++u) {
    ExactMatrix m = ExactMatrix::Zero(4, 4);
    m(slots[u].first, slots[u].second) = m(slots[u].second, slots[u].first) = 1;
    const ExactMatrix e = a.transpose() * m + m * a;
    for (int k = 0; k < 16; ++k) system(k, static_cast<Eigen::Index>(u)) = e(k / 4, k % 4);
  }
  const ExactMatrix kernel = exact::kernel(system);
  auto integral = [&]() {
    ExactMatrix m = ExactMatrix::Zero(4, 4);
    for (Eigen::Index col = 0; col < kernel.cols(); ++col) {
      const Rational w = rng.rational(2, 1);
      for (std::size_t u = 0; u < slots.size(); ++u) {
        const auto& [r, k] = slots[u];
        m(r, k) += w * kernel(static_cast<Eigen::Index>(u), col);
        if (r != k) m(k, r) += w * kernel(static_cast<Eigen::Index>(u), col);
      }
    }
    return quadratic(c, m);
  };
  const auto f1 = integral(), f2 = integral();
  return {linear_field(c, a), geom::Tensor11(c, std::move(tc)), f1 * f2 + f1 * Rational(rng.integer(-2, 2))};
}

/// i_G omega_TF == -d(dF(T G)).
inline bool derived_theorem_holds(const DerivedInstance& d) {
  const Chart& c = d.gamma.chart();
  return geom::interior_product(d.gamma, geom::omega_tf(d.tensor, d.f)) ==
         -geom::differential(c, geom::pairing(geom::differential(c, d.f), d.tensor.apply(d.gamma)));
}

}  // namespace support
