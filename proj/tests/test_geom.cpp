#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hamgeom/exact_linalg.hpp"
#include "hamgeom/expr/parser.hpp"
#include "hamgeom/geom/checks.hpp"
#include "support.hpp"

using namespace hamgeom;
using namespace hamgeom::geom;

namespace {

const Chart& r4() {
  static const Chart c({"q1", "q2", "p1", "p2"}, {"omega"});
  return c;
}
RationalFunction fn(const char* text, const Chart& c = r4()) { return parse_expression(text, c); }
DifferentialForm form(const char* text, const Chart& c = r4()) { return parse_form(text, c); }
VectorField field(const char* text, const Chart& c = r4()) { return parse_field(text, c); }

VectorField oscillator() { return field("[omega*p1, omega*p2, -omega*q1, -omega*q2]"); }
Tensor11 swap_tensor() { return parse_tensor("[[0,1,0,0],[1,0,0,0],[0,0,0,1],[0,0,1,0]]", r4()); }
RationalFunction quartic() { return fn("1/4*(p1^2+p2^2+q1^2+q2^2)^2"); }

}  // namespace

TEST_CASE("wedge examples") {
  const auto dq1 = form("(1) dq1"), dp1 = form("(1) dp1");
  CHECK(wedge(dq1, dq1).is_zero());
  CHECK(wedge(dq1, dp1) == -wedge(dp1, dq1));
  const auto w = wedge(differential(r4(), fn("p1^2+p2^2+q1^2+q2^2")), differential(r4(), fn("p1*p2+q1*q2")));
  // term-by-term expansion of the displayed product
  const auto expected = form(
      "(2*q1^2 - 2*q2^2) dq1^dq2 + (2*q1*p2 - 2*q2*p1) dq1^dp1 + (2*q1*p1 - 2*q2*p2) dq1^dp2"
      " + (2*q2*p2 - 2*q1*p1) dq2^dp1 + (2*q2*p1 - 2*q1*p2) dq2^dp2 + (2*p1^2 - 2*p2^2) dp1^dp2");
  CHECK(w == expected);
  CHECK(wedge(form("(1) dq1^dq2^dp1"), form("(1) dp2^dq1")).is_zero());
}

TEST_CASE("exterior derivative examples") {
  CHECK(differential(r4(), fn("1/2*(p1^2+q1^2)")) == form("(p1) dp1 + (q1) dq1"));
  const Chart c({"q", "p"});
  const auto a = parse_form("(p/(p^2+q^2)) dq + (-q/(p^2+q^2)) dp", c);
  CHECK(exterior_derivative(a).is_zero());
  CHECK(exterior_derivative(a).degree() == 2);
  const auto top = parse_form("(q) dq^dp", c);
  CHECK(exterior_derivative(top).is_zero());
  CHECK(exterior_derivative(top).degree() == 2);
  support::Rng rng(1);
  for (int i = 0; i < 20; ++i) {
    const auto f = RationalFunction(support::random_polynomial(rng, r4().num_variables()));
    CHECK(exterior_derivative(differential(r4(), f)).is_zero());
  }
}

TEST_CASE("interior product examples") {
  const auto gamma = oscillator();
  CHECK(interior_product(gamma, form("(1) dq1^dp1 + (1) dq2^dp2")) ==
        differential(r4(), fn("1/2*omega*(p1^2+p2^2+q1^2+q2^2)")));
  const auto dtau = form(
      "(1/2*p1/(omega*(p1^2+q1^2))) dq1 + (-1/2*q1/(omega*(p1^2+q1^2))) dp1"
      " + (1/2*p2/(omega*(p2^2+q2^2))) dq2 + (-1/2*q2/(omega*(p2^2+q2^2))) dp2");
  CHECK(interior_product(gamma, dtau).as_function() == RationalFunction::constant(r4().num_variables(), 1));
  support::Rng rng(2);
  for (int i = 0; i < 20; ++i) {
    const auto x = support::random_field(rng, r4());
    const auto f = support::random_function(rng, r4().num_variables());
    CHECK(interior_product(x, differential(r4(), f)).as_function() == lie_derivative(x, f));
  }
  CHECK(interior_product(gamma, DifferentialForm::function(r4(), fn("q1"))).is_zero());
}

TEST_CASE("lie derivative examples") {
  CHECK(lie_derivative(oscillator(), swap_tensor()).is_zero());
  const Chart tq({"q", "v"});
  CHECK(lie_derivative(parse_field("[0, v]", tq), parse_expression("v", tq)) == parse_expression("v", tq));
  CHECK(lie_derivative(VectorField::zero(r4()), fn("q1*p2")).is_zero());
}

TEST_CASE("bracket examples") {
  CHECK(lie_bracket(VectorField::coordinate(r4(), 0), VectorField::coordinate(r4(), 1)).is_zero());
  CHECK(lie_bracket(field("[q1, 0, 0, 0]"), VectorField::coordinate(r4(), 0)) == field("[-1, 0, 0, 0]"));
  support::Rng rng(3);
  for (int i = 0; i < 10; ++i) {
    const auto x = support::random_field(rng, r4());
    CHECK(lie_bracket(x, x).is_zero());
  }
}

TEST_CASE("twisted differential examples") {
  const auto f = fn("q1^2*p2 + omega*q2");
  CHECK(twisted_differential(Tensor11::identity(r4()), f) == differential(r4(), f));
  CHECK(twisted_differential(Tensor11::zero(r4()), f).is_zero());
  support::Rng rng(4);
  for (int i = 0; i < 20; ++i) {
    const auto t = support::random_tensor(rng, r4());
    const auto x = support::random_field(rng, r4());
    CHECK(pairing(twisted_differential(t, f), x) == pairing(differential(r4(), f), t.apply(x)));
  }
}

TEST_CASE("omega_TF for the invariant swap tensor") {
  const auto w = omega_tf(swap_tensor(), quartic());
  CHECK(w == wedge(differential(r4(), fn("p1^2+p2^2+q1^2+q2^2")), differential(r4(), fn("p1*p2+q1*q2"))));
  const auto extra = wedge(DifferentialForm::function(r4(), fn("2*(p1^2+p2^2+q1^2+q2^2)")),
                           form("(1) dq2^dq1 + (1) dp1^dp2"));
  CHECK_FALSE(exterior_derivative(extra).is_zero());
  CHECK_FALSE(w == w + extra);
  CHECK(omega_tf(Tensor11::identity(r4()), quartic()).is_zero());
  // T G is tangent to the level sets of F, so the generated Hamiltonian vanishes.
  CHECK(twisted_hamiltonian(oscillator(), swap_tensor(), quartic()).is_zero());
}

TEST_CASE("Hamiltonian description examples") {
  const auto gamma = oscillator();
  const auto w1 = form("(1) dq1^dp1 + (1) dq2^dp2");
  const auto r1 = is_hamiltonian_description(gamma, w1, fn("1/2*omega*(p1^2+p2^2+q1^2+q2^2)"));
  CHECK(r1.holds);
  CHECK(r1.nondegenerate == Tri::yes);
  const auto r2 = is_hamiltonian_description(gamma, form("(1) dq1^dp2 + (1) dq2^dp1"), fn("omega*(p1*p2+q1*q2)"));
  CHECK(r2.holds);
  const auto bad = is_hamiltonian_description(gamma, w1, fn("1/2*omega*(p1^2+p2^2+q1^2+q2^2) + q1"));
  CHECK_FALSE(bad.holds);
  CHECK_FALSE(bad.residual.is_zero());
  CHECK_THROWS_AS(is_hamiltonian_description(gamma, form("(1) dq1"), fn("q1")), std::invalid_argument);
  const auto open = is_hamiltonian_description(gamma, form("(q2) dq1^dp1"), fn("0"));
  CHECK_FALSE(open.closed);
}

TEST_CASE("normal form examples") {
  const auto gamma = oscillator();
  const std::vector<RationalFunction> integrals{fn("1/2*(p1^2+q1^2)"), fn("1/2*(p2^2+q2^2)")};
  const std::vector<VectorField> fields{field("[p1, 0, -q1, 0]"), field("[0, p2, 0, -q2]")};
  const auto ok = check_normal_form(gamma, integrals, fields, std::vector{fn("omega"), fn("omega")});
  CHECK(ok.condition_i);
  CHECK(ok.condition_ii);
  CHECK(ok.condition_iii);
  CHECK(ok.decomposition_exact == true);
  CHECK(ok.completeness_assumed);
  CHECK(ok.passes());
  const auto fitted = check_normal_form(gamma, integrals, fields, std::nullopt);
  REQUIRE(fitted.decomposition_residual.has_value());
  CHECK(*fitted.decomposition_residual < 1e-12);

  const std::vector<VectorField> noncommuting{VectorField::coordinate(r4(), 0), field("[0, q1, 0, 0]")};
  const auto nc = check_normal_form(gamma, integrals, noncommuting, std::nullopt);
  CHECK_FALSE(nc.condition_ii);
  CHECK_FALSE(nc.noncommuting.empty());

  const auto f = fn("1/2*(p1^2+q1^2)");
  const auto dep = check_normal_form(gamma, {f, f * f}, fields, std::nullopt);
  CHECK_FALSE(dep.condition_i);
  CHECK_FALSE(dep.integrals_independent);
  CHECK_THROWS_AS(check_normal_form(gamma, {f}, fields, std::nullopt), std::invalid_argument);
}

TEST_CASE("structure validation examples") {
  const Chart tq({"q", "v"});
  const auto s = parse_tensor("[[0,0],[1,0]]", tq);
  const auto delta = parse_field("[0, v]", tq);
  const auto tangent = validate_tangent(s, delta);
  CHECK(tangent.valid() == Tri::yes);
  CHECK(validate_tangent(Tensor11::identity(tq), delta).square_zero == false);
  CHECK(validate_tangent(Tensor11::identity(tq), delta).valid() == Tri::no);
  const auto varying = parse_tensor("[[0,0],[q,0]]", tq);
  CHECK(validate_tangent(varying, delta).kernel_equals_image == Tri::unknown);

  const Chart cq({"q", "p"});
  const auto cot = validate_cotangent(parse_form("(p) dq", cq), parse_field("[0, p]", cq));
  CHECK(cot.liouville);
  CHECK(cot.valid() == Tri::yes);
  CHECK(validate_cotangent(parse_form("(q) dq", cq), parse_field("[0, p]", cq)).valid() == Tri::no);

  const auto lin = validate_linear(parse_field("[q, p]", cq));
  CHECK(lin.euler_coordinates);
  CHECK(lin.valid() == Tri::yes);
  CHECK(validate_linear(parse_field("[q^2, p]", cq)).euler_coordinates == false);
}

TEST_CASE("text round trip") {
  support::Rng rng(5);
  for (int i = 0; i < 30; ++i) {
    const auto a = support::random_form(rng, r4(), static_cast<std::size_t>(i % 5));
    CHECK(parse_form(to_string(a), r4()) == a);
    const auto x = support::random_field(rng, r4());
    CHECK(parse_field(to_string(x), r4()) == x);
    const auto t = support::random_tensor(rng, r4());
    CHECK(parse_tensor(to_string(t), r4()) == t);
  }
  CHECK(to_string(DifferentialForm(r4(), 2)) == "2-form: 0");
  CHECK(parse_form("2-form: 0", r4()) == DifferentialForm(r4(), 2));
}

TEST_CASE("d squared vanishes on random forms") {
  support::Rng rng(21);
  for (int i = 0; i < 100; ++i) {
    const auto a = support::random_form(rng, r4(), static_cast<std::size_t>(i % 4));
    CHECK(exterior_derivative(exterior_derivative(a)).is_zero());
  }
}

TEST_CASE("Cartan formula agrees with the component-wise Lie derivative") {
  support::Rng rng(22);
  for (int i = 0; i < 100; ++i) {
    const auto x = support::random_field(rng, r4());
    const auto a = support::random_form(rng, r4(), static_cast<std::size_t>(1 + i % 3));
    CHECK(lie_derivative(x, a) == support::leibniz_lie(x, a));
  }
}

TEST_CASE("interior product is nilpotent") {
  support::Rng rng(23);
  for (int i = 0; i < 100; ++i) {
    const auto x = support::random_field(rng, r4());
    const auto a = support::random_form(rng, r4(), static_cast<std::size_t>(2 + i % 3));
    CHECK(interior_product(x, interior_product(x, a)).is_zero());
  }
}

TEST_CASE("wedge is graded commutative") {
  support::Rng rng(24);
  for (int i = 0; i < 100; ++i) {
    const auto p = static_cast<std::size_t>(i % 3), q = static_cast<std::size_t>((i / 3) % 3);
    const auto a = support::random_form(rng, r4(), p), b = support::random_form(rng, r4(), q);
    const auto ab = wedge(a, b), ba = wedge(b, a);
    CHECK(ab == ((p * q) % 2 ? -ba : ba));
  }
}

TEST_CASE("bracket antisymmetry and Jacobi identity") {
  support::Rng rng(25);
  for (int i = 0; i < 100; ++i) {
    const auto x = support::random_field(rng, r4(), false), y = support::random_field(rng, r4(), false),
               z = support::random_field(rng, r4(), false);
    CHECK(lie_bracket(x, y) == VectorField::zero(r4()) - lie_bracket(y, x));
    const auto jacobi = lie_bracket(x, lie_bracket(y, z)) + lie_bracket(y, lie_bracket(z, x)) +
                        lie_bracket(z, lie_bracket(x, y));
    CHECK(jacobi.is_zero());
  }
}

TEST_CASE("omega_TF is closed") {
  support::Rng rng(26);
  for (int i = 0; i < 100; ++i) {
    const auto t = support::random_tensor(rng, r4());
    const auto f = support::random_function(rng, r4().num_variables());
    CHECK(exterior_derivative(omega_tf(t, f)).is_zero());
  }
}

TEST_CASE("tensor Lie derivative obeys the Leibniz rule") {
  support::Rng rng(27);
  for (int i = 0; i < 30; ++i) {
    const auto x = support::random_field(rng, r4(), false), y = support::random_field(rng, r4(), false);
    const auto t = support::random_tensor(rng, r4());
    CHECK(lie_derivative(x, t.apply(y)) == lie_derivative(x, t).apply(y) + t.apply(lie_derivative(x, y)));
  }
}

TEST_CASE("twisted exterior derivative extends d_T") {
  support::Rng rng(28);
  for (int i = 0; i < 30; ++i) {
    const auto t = support::random_tensor(rng, r4());
    const auto f = support::random_function(rng, r4().num_variables());
    CHECK(twisted_exterior_derivative(t, DifferentialForm::function(r4(), f)) == twisted_differential(t, f));
  }
}

TEST_CASE("derived description theorem on constructed instances") {
  support::Rng rng(29);
  for (int i = 0; i < 100; ++i) {
    const auto inst = support::derived_instance(rng);
    REQUIRE(lie_derivative(inst.gamma, inst.tensor).is_zero());
    REQUIRE(lie_derivative(inst.gamma, inst.f).is_zero());
    CHECK(support::derived_theorem_holds(inst));
    const auto rep = twisted_description(inst.gamma, inst.tensor, inst.f);
    CHECK(rep.tensor_invariant);
    CHECK(rep.conserved);
    CHECK(rep.description.holds);
  }
}

TEST_CASE("chart mismatch is rejected") {
  const Chart other({"x", "y"});
  CHECK_THROWS_AS(wedge(form("(1) dq1"), parse_form("(1) dx", other)), std::invalid_argument);
  CHECK_THROWS_AS(interior_product(parse_field("[1, 0]", other), form("(1) dq1")), std::invalid_argument);
}
