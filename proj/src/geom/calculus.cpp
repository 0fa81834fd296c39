#include "hamgeom/geom/calculus.hpp"

#include <stdexcept>

namespace hamgeom::geom {

namespace {

void require_same_chart(const Chart& a, const Chart& b) {
  if (!(a == b)) throw std::invalid_argument("objects live on different charts");
}

RationalFunction zero_fn(const Chart& c) { return RationalFunction(c.num_variables()); }

}  // namespace

RationalFunction partial(const RationalFunction& f, const Chart& chart, std::size_t i) {
  if (i >= chart.dimension()) throw std::out_of_range("coordinate index out of range");
  return f.derivative(i);
}

RationalFunction partial(const RationalFunction& f, const Chart& chart, std::string_view coordinate) {
  auto i = chart.coordinate_index(coordinate);
  if (!i) throw std::invalid_argument("unknown coordinate '" + std::string(coordinate) + "'");
  return f.derivative(*i);
}

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b) {
  require_same_chart(a.chart(), b.chart());
  DifferentialForm r(a.chart(), a.degree() + b.degree());
  if (r.degree() > a.chart().dimension()) return r;
  for (const auto& [ia, fa] : a.coefficients()) {
    for (const auto& [ib, fb] : b.coefficients()) {
      std::vector<std::size_t> idx = ia;
      idx.insert(idx.end(), ib.begin(), ib.end());
      r.add(std::move(idx), fa * fb);
    }
  }
  return r;
}

DifferentialForm exterior_derivative(const DifferentialForm& a) {
  const auto& chart = a.chart();
  const auto n = chart.dimension();
  if (a.degree() >= n) return DifferentialForm(chart, n);
  DifferentialForm r(chart, a.degree() + 1);
  for (const auto& [idx, f] : a.coefficients()) {
    for (std::size_t j = 0; j < n; ++j) {
      if (std::find(idx.begin(), idx.end(), j) != idx.end()) continue;
      RationalFunction df = f.derivative(j);
      if (df.is_zero()) continue;
      std::vector<std::size_t> k{j};
      k.insert(k.end(), idx.begin(), idx.end());
      r.add(std::move(k), df);
    }
  }
  return r;
}

DifferentialForm differential(const Chart& chart, const RationalFunction& f) {
  return exterior_derivative(DifferentialForm::function(chart, f));
}

DifferentialForm interior_product(const VectorField& x, const DifferentialForm& a) {
  require_same_chart(x.chart(), a.chart());
  if (a.degree() == 0) return DifferentialForm(a.chart(), 0);
  DifferentialForm r(a.chart(), a.degree() - 1);
  for (const auto& [idx, f] : a.coefficients()) {
    for (std::size_t s = 0; s < idx.size(); ++s) {
      const auto& xs = x[idx[s]];
      if (xs.is_zero()) continue;
      std::vector<std::size_t> rest;
      rest.reserve(idx.size() - 1);
      for (std::size_t k = 0; k < idx.size(); ++k)
        if (k != s) rest.push_back(idx[k]);
      const RationalFunction term = xs * f;
      r.add(std::move(rest), s % 2 == 0 ? term : -term);
    }
  }
  return r;
}

RationalFunction pairing(const DifferentialForm& a, const VectorField& x) {
  if (a.degree() != 1) throw std::invalid_argument("pairing needs a 1-form");
  return interior_product(x, a).as_function();
}

RationalFunction lie_derivative(const VectorField& x, const RationalFunction& f) {
  RationalFunction r = zero_fn(x.chart());
  for (std::size_t i = 0; i < x.dimension(); ++i)
    if (!x[i].is_zero()) r += x[i] * f.derivative(i);
  return r;
}

DifferentialForm lie_derivative(const VectorField& x, const DifferentialForm& a) {
  require_same_chart(x.chart(), a.chart());
  DifferentialForm r = exterior_derivative(interior_product(x, a));
  if (a.degree() == 0) return interior_product(x, exterior_derivative(a));
  if (a.degree() < a.chart().dimension()) r = r + interior_product(x, exterior_derivative(a));
  return r;
}

VectorField lie_bracket(const VectorField& x, const VectorField& y) {
  require_same_chart(x.chart(), y.chart());
  const auto n = x.dimension();
  std::vector<RationalFunction> out(n, zero_fn(x.chart()));
  for (std::size_t i = 0; i < n; ++i) out[i] = lie_derivative(x, y[i]) - lie_derivative(y, x[i]);
  return VectorField(x.chart(), std::move(out));
}

VectorField lie_derivative(const VectorField& x, const VectorField& y) { return lie_bracket(x, y); }

Tensor11 lie_derivative(const VectorField& x, const Tensor11& t) {
  require_same_chart(x.chart(), t.chart());
  const auto n = t.dimension();
  // (L_X T)^i_j = X^k d_k T^i_j - T^k_j d_k X^i + T^i_k d_j X^k
  std::vector<RationalFunction> dx(n * n, zero_fn(x.chart()));  // dx[i*n+k] = d_k X^i
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) dx[i * n + k] = x[i].derivative(k);
  std::vector<RationalFunction> out(n * n, zero_fn(x.chart()));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      RationalFunction c = lie_derivative(x, t(i, j));
      for (std::size_t k = 0; k < n; ++k) {
        if (!t(k, j).is_zero() && !dx[i * n + k].is_zero()) c -= t(k, j) * dx[i * n + k];
        if (!t(i, k).is_zero() && !dx[k * n + j].is_zero()) c += t(i, k) * dx[k * n + j];
      }
      out[i * n + j] = std::move(c);
    }
  }
  return Tensor11(x.chart(), std::move(out));
}

DifferentialForm twisted_differential(const Tensor11& t, const RationalFunction& f) {
  const auto& chart = t.chart();
  const auto n = chart.dimension();
  std::vector<RationalFunction> grad;
  grad.reserve(n);
  for (std::size_t j = 0; j < n; ++j) grad.push_back(f.derivative(j));
  DifferentialForm r(chart, 1);
  for (std::size_t i = 0; i < n; ++i) {
    RationalFunction c = zero_fn(chart);
    for (std::size_t j = 0; j < n; ++j)
      if (!grad[j].is_zero() && !t(j, i).is_zero()) c += grad[j] * t(j, i);
    r.add({i}, c);
  }
  return r;
}

DifferentialForm omega_tf(const Tensor11& t, const RationalFunction& f) {
  return exterior_derivative(twisted_differential(t, f));
}

DifferentialForm tensor_derivation(const Tensor11& t, const DifferentialForm& a) {
  require_same_chart(t.chart(), a.chart());
  const auto n = t.dimension();
  DifferentialForm r(a.chart(), a.degree());
  // For each stored basis element a_I dx_I, replacing slot s by T gives
  // sum_j a_I T^{I_s}_j dx_{I with I_s -> j}.
  for (const auto& [idx, f] : a.coefficients()) {
    for (std::size_t s = 0; s < idx.size(); ++s) {
      for (std::size_t j = 0; j < n; ++j) {
        const auto& tc = t(idx[s], j);
        if (tc.is_zero()) continue;
        std::vector<std::size_t> k = idx;
        k[s] = j;
        r.add(std::move(k), f * tc);
      }
    }
  }
  return r;
}

DifferentialForm twisted_exterior_derivative(const Tensor11& t, const DifferentialForm& a) {
  if (a.degree() == 0) return twisted_differential(t, a.as_function());
  DifferentialForm lhs = tensor_derivation(t, exterior_derivative(a));
  DifferentialForm rhs = exterior_derivative(tensor_derivation(t, a));
  if (lhs.degree() != rhs.degree()) return -rhs;  // top degree: d a vanishes
  return lhs - rhs;
}

std::vector<RationalFunction> two_form_matrix(const DifferentialForm& w) {
  if (w.degree() != 2) throw std::invalid_argument("expected a 2-form");
  const auto n = w.chart().dimension();
  std::vector<RationalFunction> m(n * n, zero_fn(w.chart()));
  for (const auto& [idx, f] : w.coefficients()) {
    m[idx[0] * n + idx[1]] = f;
    m[idx[1] * n + idx[0]] = -f;
  }
  return m;
}

RationalFunction determinant(std::vector<RationalFunction> m, std::size_t n) {
  if (m.size() != n * n) throw std::invalid_argument("determinant needs a square matrix");
  if (n == 0) throw std::invalid_argument("empty matrix");
  const auto nv = m[0].num_variables();
  RationalFunction det = RationalFunction::constant(nv, Rational(1));
  for (std::size_t c = 0; c < n; ++c) {
    // Prefer the pivot with the smallest representation.
    std::size_t p = n;
    for (std::size_t r = c; r < n; ++r) {
      const auto& e = m[r * n + c];
      if (e.is_zero()) continue;
      if (p == n || e.numerator().size() + e.denominator().size() <
                        m[p * n + c].numerator().size() + m[p * n + c].denominator().size())
        p = r;
    }
    if (p == n) return RationalFunction(nv);
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m[p * n + j], m[c * n + j]);
      det = -det;
    }
    const RationalFunction pivot = m[c * n + c];
    det *= pivot;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r * n + c].is_zero()) continue;
      const RationalFunction f = m[r * n + c] / pivot;
      for (std::size_t j = c; j < n; ++j)
        if (!m[c * n + j].is_zero()) m[r * n + j] -= f * m[c * n + j];
    }
  }
  return det;
}

}  // namespace hamgeom::geom
