#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <random>

#include "bellforge/bell_expression.hpp"
#include "bellforge/quantum_value.hpp"

using namespace bellforge;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

BellExpression unbalanced_rep() {
  BellExpression e(3);
  e.set_coeff(0b000, Dyadic(3));
  e.set_coeff(0b001, Dyadic(1));
  e.set_coeff(0b010, Dyadic(1));
  e.set_coeff(0b100, Dyadic(1));
  e.set_coeff(0b011, Dyadic(-1));
  e.set_coeff(0b101, Dyadic(-1));
  e.set_coeff(0b110, Dyadic(-1));
  e.set_coeff(0b111, Dyadic(1));
  return e;
}

BellExpression chsh_like_rep() {
  BellExpression e(3);
  e.set_coeff(0b000, Dyadic::scaled(1, 1));
  e.set_coeff(0b010, Dyadic::scaled(1, 1));
  e.set_coeff(0b100, Dyadic::scaled(1, 1));
  e.set_coeff(0b110, Dyadic::scaled(-1, 1));
  return e;
}

BellExpression extended_chsh_rep() {
  BellExpression e(3);
  e.set_coeff(0b000, Dyadic::scaled(1, 1));
  e.set_coeff(0b100, Dyadic::scaled(1, 1));
  e.set_coeff(0b011, Dyadic::scaled(1, 1));
  e.set_coeff(0b111, Dyadic::scaled(-1, 1));
  return e;
}

SignTable table_from_index(int n, uint64_t idx) {
  SignTable t;
  t.n = n;
  t.bits.assign(size_t{1} << n, 0);
  for (size_t s = 0; s < t.bits.size(); ++s) t.bits[s] = static_cast<uint8_t>((idx >> s) & 1);
  return t;
}

}  // namespace

TEST_CASE("anti-diagonal elements at zero angles") {
  AntidiagonalOperator op = antidiagonal_elements(mabk(2), {0, 0});
  REQUIRE(op.beta.size() == 4);
  for (const Complex& b : op.beta) CHECK(std::abs(b - Complex(1, 0)) < 1e-12);
  CHECK(op.hermitian);
}

TEST_CASE("anti-diagonal elements at the chain optimum") {
  AntidiagonalOperator op2 = antidiagonal_elements(mabk(2), {kPi / 2, kPi / 2});
  CHECK(std::abs(op2.beta[0] - Complex(1, -1)) < 1e-12);
  CHECK(std::abs(op2.beta[1]) < 1e-12);
  CHECK(std::abs(op2.beta[2]) < 1e-12);
  CHECK(std::abs(op2.beta[3] - Complex(1, 1)) < 1e-12);

  for (int n = 2; n <= 6; ++n) {
    AntidiagonalOperator op = antidiagonal_elements(mabk(n), AngleConfig(n, kPi / 2));
    REQUIRE(op.hermitian);
    GhzValueResult gv = ghz_value(op);
    CHECK(gv.value == doctest::Approx(std::pow(2.0, (n - 1) / 2.0)).epsilon(1e-12));
    CHECK(gv.b == 0);
    CHECK(gv.tied_branches.size() == 1);
  }

  GhzValueResult mermin = ghz_value(antidiagonal_elements(mabk(3), {kPi / 2, kPi / 2, kPi / 2}));
  CHECK(mermin.value == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(mermin.phase == doctest::Approx(kPi / 2).epsilon(1e-12));
}

TEST_CASE("densified block form agrees with the tensor route") {
  std::mt19937_64 rng(mix_seed(kDefaultSeed, 30));
  std::uniform_real_distribution<double> u(-kPi, kPi);
  for (int trial = 0; trial < 10; ++trial) {
    BellExpression e = wwzb_from_sign_table(table_from_index(3, rng()));
    AngleConfig th = {u(rng), u(rng), u(rng)};
    ComplexMatrix fast = antidiagonal_elements(e, th).densify();
    ComplexMatrix slow = dense_operator(e, observables_from_angles(th));
    CHECK(max_abs(fast - slow) < 1e-10);
  }
}

TEST_CASE("analytic gradient matches central differences") {
  std::mt19937_64 rng(mix_seed(kDefaultSeed, 31));
  std::uniform_real_distribution<double> u(-kPi, kPi);
  for (int trial = 0; trial < 6; ++trial) {
    int n = 3 + (trial % 2);
    BellExpression e = wwzb_from_sign_table(table_from_index(n, rng()));
    AngleConfig th(n);
    for (double& t : th) t = u(rng);
    for (uint32_t b : {uint32_t{0}, uint32_t{1}, (uint32_t{1} << n) - 2}) {
      std::vector<double> grad = antidiagonal_gradient(e, th, b);
      for (int j = 0; j < n; ++j) {
        const double h = 1e-6;
        AngleConfig tp = th, tm = th;
        tp[j] += h;
        tm[j] -= h;
        double fp = std::norm(antidiagonal_elements(e, tp).beta[b]);
        double fm = std::norm(antidiagonal_elements(e, tm).beta[b]);
        double fd = (fp - fm) / (2 * h);
        CHECK(std::abs(grad[j] - fd) < 1e-5 * std::max(1.0, std::abs(fd)));
      }
    }
  }
}

TEST_CASE("block value equals the dense top eigenvalue") {
  std::mt19937_64 rng(mix_seed(kDefaultSeed, 32));
  std::uniform_real_distribution<double> u(-kPi, kPi);
  for (int trial = 0; trial < 8; ++trial) {
    BellExpression e = wwzb_from_sign_table(table_from_index(3, rng()));
    AngleConfig th = {u(rng), u(rng), u(rng)};
    AntidiagonalOperator op = antidiagonal_elements(e, th);
    REQUIRE(op.hermitian);
    GhzValueResult gv = ghz_value(op);
    Eigensystem es = hermitian_eigensystem(op.densify());
    CHECK(gv.value == doctest::Approx(es.values[es.values.size() - 1]).epsilon(1e-9));
    StateVector psi = ghz_state(3, gv.b, gv.phase);
    Complex expect = (psi.adjoint() * op.densify() * psi)(0, 0);
    CHECK(expect.real() == doctest::Approx(gv.value).epsilon(1e-9));
    CHECK(std::abs(expect.imag()) < 1e-9);
  }
  CHECK_THROWS_AS(ghz_value(antidiagonal_elements_complex(
                      {Complex(0, 1), Complex(0, 1), Complex(0, 1), Complex(0, 1)}, 2, {0.3, 0.4})),
                  std::invalid_argument);
}

TEST_CASE("angle optimization on the chain family") {
  for (int n = 2; n <= 6; ++n) {
    QuantumValueResult r = optimize_angles(mabk(n));
    CHECK(r.value == doctest::Approx(std::pow(2.0, (n - 1) / 2.0)).epsilon(1e-10));
    for (double t : r.angles) CHECK(std::abs(std::abs(t) - kPi / 2) < 1e-6);
    REQUIRE(r.maximizer.has_value());
    // the reported branch carries the value at the reported angles
    AntidiagonalOperator op = antidiagonal_elements(mabk(n), r.angles);
    CHECK(std::abs(op.beta[r.maximizer->b]) == doctest::Approx(r.value).epsilon(1e-9));
    CHECK(r.method == "fast-path");
  }
}

TEST_CASE("angle optimization on the other tripartite classes") {
  QuantumValueResult u = optimize_angles(unbalanced_rep());
  CHECK(u.value == doctest::Approx(20.0 / 3.0).epsilon(1e-9));
  for (double t : u.angles) CHECK(std::abs(std::cos(t) - (-1.0 / 3.0)) < 1e-6);

  QuantumValueResult c = optimize_angles(chsh_like_rep());
  CHECK(c.value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));

  QuantumValueResult x = optimize_angles(extended_chsh_rep());
  CHECK(x.value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));

  BellExpression single(3);
  single.set_coeff(0, Dyadic(1));
  CHECK(optimize_angles(single).value == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("angle optimization is deterministic") {
  QuantumValueResult a = optimize_angles(mabk(3));
  QuantumValueResult b = optimize_angles(mabk(3));
  CHECK(a.value == b.value);
  CHECK(a.angles == b.angles);

  setenv("BELLFORGE_THREADS", "3", 1);
  QuantumValueResult c = optimize_angles(mabk(3));
  unsetenv("BELLFORGE_THREADS");
  CHECK(a.value == c.value);
  CHECK(a.angles == c.angles);
}

TEST_CASE("see-saw oracle reaches the chain values") {
  for (int n = 2; n <= 4; ++n) {
    QuantumValueResult r = seesaw_oracle(mabk(n));
    CHECK(r.value == doctest::Approx(std::pow(2.0, (n - 1) / 2.0)).epsilon(1e-9));
    CHECK(r.method == "see-saw");
    REQUIRE(r.diagnostics.sweep_values.size() >= 2);
    for (size_t i = 1; i < r.diagnostics.sweep_values.size(); ++i)
      CHECK(r.diagnostics.sweep_values[i] >= r.diagnostics.sweep_values[i - 1] - 1e-12);
  }
  CHECK_THROWS_AS(seesaw_oracle(mabk(9)), std::invalid_argument);
}

TEST_CASE("see-saw agrees with the fast path on random tables") {
  std::mt19937_64 rng(mix_seed(kDefaultSeed, 33));
  for (int trial = 0; trial < 50; ++trial) {
    int n = trial < 30 ? 3 : 4;
    BellExpression e = wwzb_from_sign_table(table_from_index(n, rng()));
    QuantumValueResult fast = optimize_angles(e);
    SeesawOptions so;
    so.restarts = 10;
    QuantumValueResult slow = seesaw_oracle(e, so);
    CHECK(std::abs(fast.value - slow.value) < 1e-6);
  }
}

TEST_CASE("quadratic witness value at fixed angles") {
  QuadraticExpression q3 = uffink(3, UffinkBase::mabk);
  QuantumValueResult at_opt = uffink_value(q3, {kPi / 2, kPi / 2, kPi / 2});
  CHECK(at_opt.value == doctest::Approx(4.0).epsilon(1e-12));
  REQUIRE(at_opt.maximizer.has_value());
  CHECK(at_opt.maximizer->b == 0);
  CHECK(at_opt.maximizer->phase == doctest::Approx(kPi / 4).epsilon(1e-9));

  // the aligned GHZ branch reproduces the value through dense expectations
  StateVector psi = ghz_state(3, at_opt.maximizer->b, at_opt.maximizer->phase);
  auto obs = observables_from_angles({kPi / 2, kPi / 2, kPi / 2});
  double m = (psi.adjoint() * dense_operator(q3.first, obs) * psi)(0, 0).real();
  double mp = (psi.adjoint() * dense_operator(q3.second, obs) * psi)(0, 0).real();
  CHECK(m * m + mp * mp == doctest::Approx(4.0).epsilon(1e-9));

  QuantumValueResult at_zero = uffink_value(q3, {0, 0, 0});
  CHECK(at_zero.value == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("quadratic witness optimization and oracle") {
  for (int n = 3; n <= 5; ++n) {
    QuantumValueResult r = uffink_optimize(uffink(n, UffinkBase::mabk));
    CHECK(r.value == doctest::Approx(std::pow(2.0, n - 1)).epsilon(1e-9));
    for (double t : r.angles) CHECK(std::abs(std::abs(t) - kPi / 2) < 1e-6);
  }
  QuantumValueResult o3 = uffink_oracle(uffink(3, UffinkBase::mabk));
  CHECK(o3.value == doctest::Approx(4.0).epsilon(1e-6));
  CHECK(o3.method == "phi-scan");
}

TEST_CASE("ghz helpers") {
  StateVector psi = ghz_state(3, 0b001, 0.37);
  CHECK(is_normalized(psi));
  GhzDescriptor d = ghz_descriptor_from_state(psi, 0b001);
  CHECK(d.phase == doctest::Approx(0.37).epsilon(1e-12));
  CHECK(d.amplitude0 == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(d.b_string() == "001");

  StateVector junk = StateVector::Zero(8);
  junk[0] = junk[1] = junk[2] = Complex(1 / std::sqrt(3.0), 0);
  CHECK_THROWS_AS(ghz_descriptor_from_state(junk, 0), std::runtime_error);
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS(antidiagonal_elements(mabk(2), {0.1}), std::invalid_argument);
  CHECK_THROWS_AS(antidiagonal_elements_complex({Complex(1, 0)}, 2, {0, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(dense_operator(mabk(2), observables_from_angles({0.1})),
                  std::invalid_argument);
}
