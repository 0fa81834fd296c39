#include "hamgeom/torus/lattice.hpp"

#include <boost/integer/common_factor_rt.hpp>
#include <boost/multiprecision/integer.hpp>

#include <stdexcept>

namespace hamgeom::torus {

namespace {

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

Integer lcm(const Integer& a, const Integer& b) { return boost::multiprecision::lcm(a, b); }

// Pivot column of each non-zero row of an echelon matrix.
std::vector<Eigen::Index> pivot_columns(const IntMatrix& h) {
  std::vector<Eigen::Index> out;
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    Eigen::Index c = 0;
    while (c < h.cols() && h(i, c) == 0) ++c;
    if (c == h.cols()) break;
    out.push_back(c);
  }
  return out;
}

}  // namespace

void FrequencySpec::validate() const {
  if (basis.empty()) throw std::invalid_argument("frequency basis is empty");
  if (coeffs.rows() == 0) throw std::invalid_argument("no frequencies given");
  if (coeffs.cols() != static_cast<Eigen::Index>(basis.size()))
    throw std::invalid_argument("frequency rows must have one coefficient per basis symbol");
  for (Eigen::Index i = 0; i < coeffs.rows(); ++i) {
    bool zero = true;
    for (Eigen::Index j = 0; j < coeffs.cols(); ++j) zero = zero && coeffs(i, j) == 0;
    if (zero) throw std::invalid_argument("frequency " + std::to_string(i + 1) + " is zero");
  }
}

HermiteForm hermite_normal_form(const IntMatrix& a) {
  HermiteForm out;
  out.h = a;
  out.u = IntMatrix::Identity(a.rows(), a.rows());
  IntMatrix& h = out.h;
  IntMatrix& u = out.u;
  const Eigen::Index rows = h.rows(), cols = h.cols();
  auto swap_rows = [&](Eigen::Index i, Eigen::Index j) {
    if (i == j) return;
    h.row(i).swap(h.row(j));
    u.row(i).swap(u.row(j));
  };
  auto add_multiple = [&](Eigen::Index target, Eigen::Index source, const Integer& q) {
    if (q == 0) return;
    h.row(target) -= q * h.row(source);
    u.row(target) -= q * u.row(source);
  };

  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    for (;;) {
      Eigen::Index best = -1;
      for (Eigen::Index i = r; i < rows; ++i)
        if (h(i, c) != 0 && (best < 0 || abs(h(i, c)) < abs(h(best, c)))) best = i;
      if (best < 0) break;
      swap_rows(r, best);
      bool reduced = true;
      for (Eigen::Index i = r + 1; i < rows; ++i) {
        if (h(i, c) == 0) continue;
        add_multiple(i, r, floor_div(h(i, c), h(r, c)));
        reduced = reduced && h(i, c) == 0;
      }
      if (reduced) break;
    }
    if (h(r, c) == 0) continue;
    if (h(r, c) < 0) {
      h.row(r) = -h.row(r);
      u.row(r) = -u.row(r);
    }
    for (Eigen::Index i = 0; i < r; ++i) add_multiple(i, r, floor_div(h(i, c), h(r, c)));
    ++r;
  }
  out.rank = r;
  return out;
}

ResonanceLattice resonance_lattice(const FrequencySpec& spec) {
  spec.validate();
  const Eigen::Index n = spec.coeffs.rows(), m = spec.coeffs.cols();
  // Scaling a column by a positive integer leaves the left kernel unchanged.
  IntMatrix ints(n, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    Integer den = 1;
    for (Eigen::Index i = 0; i < n; ++i) den = lcm(den, boost::multiprecision::denominator(spec.coeffs(i, j)));
    for (Eigen::Index i = 0; i < n; ++i) {
      const Rational v = spec.coeffs(i, j) * Rational(den);
      ints(i, j) = boost::multiprecision::numerator(v);
    }
  }
  const auto hnf = hermite_normal_form(ints);
  const Eigen::Index r = n - hnf.rank;
  ResonanceLattice out;
  if (r == 0) {
    out.basis = IntMatrix(0, n);
    return out;
  }
  out.basis = hermite_normal_form(IntMatrix(hnf.u.bottomRows(r))).h;
  return out;
}

bool contains(const ResonanceLattice& lattice, const IntVector& k) {
  const IntMatrix& b = lattice.basis;
  if (k.size() != b.cols()) throw std::invalid_argument("dimension mismatch");
  IntVector rest = k;
  const auto pivots = pivot_columns(b);
  Eigen::Index row = 0;
  for (Eigen::Index c = 0; c < rest.size(); ++c) {
    if (row < static_cast<Eigen::Index>(pivots.size()) && pivots[static_cast<std::size_t>(row)] == c) {
      if (rest(c) % b(row, c) != 0) return false;
      const Integer q = rest(c) / b(row, c);
      rest -= q * IntVector(b.row(row).transpose());
      ++row;
    } else if (rest(c) != 0) {
      return false;
    }
  }
  return true;
}

Eigen::Index orbit_closure_dimension(const FrequencySpec& spec) {
  return spec.size() - resonance_lattice(spec).rank();
}

std::string to_string(const Classification& c) {
  switch (c.kind) {
    case Classification::Kind::integrable:
      return "integrable";
    case Classification::Kind::superintegrable:
      return "superintegrable(" + std::to_string(c.extra) + ")";
    case Classification::Kind::maximally_superintegrable:
      return "maximally_superintegrable";
  }
  return "unknown";
}

Classification classify(const FrequencySpec& spec) {
  const Eigen::Index n = spec.size();
  const Eigen::Index d = orbit_closure_dimension(spec);
  Classification c{Classification::Kind::integrable, n - d, d};
  if (d == n) c.kind = Classification::Kind::integrable;
  else if (d == 1) c.kind = Classification::Kind::maximally_superintegrable;
  else c.kind = Classification::Kind::superintegrable;
  return c;
}

FrequencySpec nonlinear_oscillator_frequencies(const std::vector<std::string>& basis,
                                               const ExactMatrix& mode_energies, const std::vector<int>& signs) {
  if (static_cast<Eigen::Index>(signs.size()) != mode_energies.rows())
    throw std::invalid_argument("one sign per mode is required");
  if (mode_energies.cols() != static_cast<Eigen::Index>(basis.size()))
    throw std::invalid_argument("mode energies must have one coefficient per basis symbol");
  std::vector<Eigen::Index> excited;
  for (Eigen::Index a = 0; a < mode_energies.rows(); ++a) {
    const int s = signs[static_cast<std::size_t>(a)];
    if (s != 1 && s != -1) throw std::invalid_argument("mode signs must be +1 or -1");
    bool zero = true;
    for (Eigen::Index j = 0; j < mode_energies.cols(); ++j) zero = zero && mode_energies(a, j) == 0;
    if (!zero) excited.push_back(a);
  }
  if (excited.empty()) throw std::invalid_argument("no mode is excited");
  FrequencySpec spec{basis, ExactMatrix(static_cast<Eigen::Index>(excited.size()), mode_energies.cols())};
  for (std::size_t i = 0; i < excited.size(); ++i) {
    const Eigen::Index a = excited[i];
    spec.coeffs.row(static_cast<Eigen::Index>(i)) = Rational(2 * signs[static_cast<std::size_t>(a)]) * mode_energies.row(a);
  }
  spec.validate();
  return spec;
}

}  // namespace hamgeom::torus
