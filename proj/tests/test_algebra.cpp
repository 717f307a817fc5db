#include <doctest.h>

#include <cmath>

#include "ncaz/algebra.hpp"
#include "ncaz/error.hpp"
#include "ncaz/random.hpp"
#include "oracles.hpp"

using namespace ncaz;

namespace {

Matrix m2(Complex a, Complex b, Complex c, Complex d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

double rel_frobenius(const Matrix& a, const Matrix& b) {
  return (a - b).norm() / std::max(1.0, b.norm());
}

}  // namespace

TEST_CASE("construction symmetrizes and rejects bad shapes") {
  const HermitianElement x(m2(1.0, Complex(2.0, 1.0), Complex(0.0, 0.0), 3.0));
  CHECK(std::abs(x.matrix()(0, 1) - Complex(1.0, 0.5)) < 1e-15);
  CHECK(std::abs(x.matrix()(1, 0) - Complex(1.0, -0.5)) < 1e-15);
  CHECK_THROWS_AS(HermitianElement(Matrix(2, 3)), DimensionError);
  CHECK_THROWS_AS(HermitianElement(Matrix(0, 0)), DimensionError);
}

TEST_CASE("spectral decomposition of small analytic cases") {
  SUBCASE("pauli x") {
    const auto spec = spectral_decompose(HermitianElement(m2(0.0, 1.0, 1.0, 0.0)));
    CHECK(spec.eigenvalues(0) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(spec.eigenvalues(1) == doctest::Approx(1.0).epsilon(1e-14));
    const Matrix p_minus = 0.5 * m2(1.0, -1.0, -1.0, 1.0);
    const Matrix p_plus = 0.5 * m2(1.0, 1.0, 1.0, 1.0);
    CHECK(oracle::max_abs(spec.projection(0) - p_minus) < 1e-12);
    CHECK(oracle::max_abs(spec.projection(1) - p_plus) < 1e-12);
  }
  SUBCASE("zero matrix") {
    const auto spec = spectral_decompose(HermitianElement::zero(3));
    for (int i = 0; i < 3; ++i) CHECK(spec.eigenvalues(i) == 0.0);
    Matrix sum = Matrix::Zero(3, 3);
    for (std::size_t i = 0; i < 3; ++i) sum += spec.projection(i);
    CHECK(oracle::max_abs(sum - Matrix::Identity(3, 3)) < 1e-12);
  }
  SUBCASE("diagonal sorted ascending") {
    const auto spec = spectral_decompose(HermitianElement::diagonal({3.0, 1.0, 1.0, -2.0}));
    const double expected[] = {-2.0, 1.0, 1.0, 3.0};
    for (int i = 0; i < 4; ++i) CHECK(spec.eigenvalues(i) == doctest::Approx(expected[i]));
  }
}

TEST_CASE("spectral invariants on random elements match the Jacobi oracle") {
  RandomStream rng(1, 0);
  for (std::size_t d : {1, 2, 3, 5, 8, 16}) {
    const auto x = random_hermitian(d, rng);
    const auto spec = spectral_decompose(x);
    CHECK(rel_frobenius(spec.reconstruct(), x.matrix()) < 1e-10);
    const auto ref = oracle::eigenvalues(x.matrix());
    for (std::size_t i = 0; i < d; ++i) {
      CHECK(std::abs(spec.eigenvalues(static_cast<Eigen::Index>(i)) - ref[i]) < 1e-10);
    }
    for (std::size_t i = 0; i < d; ++i) {
      const Matrix pi = spec.projection(i);
      CHECK(oracle::max_abs(pi * pi - pi) < 1e-10);
      for (std::size_t j = i + 1; j < d; ++j) CHECK(oracle::max_abs(pi * spec.projection(j)) < 1e-10);
    }
  }
}

TEST_CASE("functional calculus") {
  CHECK(oracle::max_abs(exp_element(HermitianElement::zero(3)).matrix() - Matrix::Identity(3, 3)) <
        1e-15);

  const auto r = apply_function(HermitianElement::diagonal({1.0, 4.0}), [](double v) { return std::sqrt(v); });
  CHECK(oracle::max_abs(r.matrix() - HermitianElement::diagonal({1.0, 2.0}).matrix()) < 1e-14);

  const double t = 0.7;
  const auto e = exp_element(HermitianElement(m2(0.0, t, t, 0.0)));
  const Matrix expected = m2(std::cosh(t), std::sinh(t), std::sinh(t), std::cosh(t));
  CHECK(oracle::max_abs(e.matrix() - expected) < 1e-14);

  RandomStream rng(2, 0);
  for (int k = 0; k < 5; ++k) {
    const auto x = random_hermitian(6, rng);
    CHECK(rel_frobenius(exp_element(x).matrix(), oracle::expm(x.matrix())) < 1e-10);

    // homomorphism for polynomials and commutation with x
    const auto f = [](double v) { return v * v - 2.0 * v + 0.5; };
    const auto g = [](double v) { return 3.0 * v * v * v + v; };
    const auto fg = apply_function(x, [&](double v) { return f(v) * g(v); });
    const Matrix prod = apply_function(x, f).matrix() * apply_function(x, g).matrix();
    CHECK(rel_frobenius(fg.matrix(), prod) < 1e-9);
    const Matrix fx = apply_function(x, f).matrix();
    CHECK((fx * x.matrix() - x.matrix() * fx).norm() / std::max(1.0, fx.norm() * x.matrix().norm()) <
          1e-9);
  }

  CHECK_THROWS_AS(apply_function(HermitianElement::diagonal({1.0, -1.0}), [](double v) { return std::log(v); }),
                  DomainError);
}

TEST_CASE("trace state") {
  CHECK(trace_state(HermitianElement::identity(5)) == doctest::Approx(1.0));
  CHECK(trace_state(HermitianElement::diagonal({3.0, 1.0, 1.0, -2.0})) == doctest::Approx(0.75));
  RandomStream rng(3, 0);
  const auto a = random_hermitian(4, rng);
  CHECK(std::abs(trace_state(a - apply_function(a, [](double v) { return v; }))) < 1e-14);

  // tau(xy) = tau(yx), tau(x*x) >= 0
  const auto b = random_hermitian(4, rng);
  const Complex xy = trace_state(Matrix(a.matrix() * b.matrix()));
  const Complex yx = trace_state(Matrix(b.matrix() * a.matrix()));
  CHECK(std::abs(xy - yx) < 1e-12);
  CHECK(trace_state(square(a)) >= 0.0);
  CHECK(trace_state(a) == doctest::Approx(oracle::normalized_trace(a.matrix())).epsilon(1e-13));
}

TEST_CASE("tail probability") {
  const auto x = HermitianElement::diagonal({3.0, 1.0, 1.0, -2.0});
  CHECK(tail_probability(x, 2.0) == 0.25);
  CHECK(tail_probability(x, -3.0) == 1.0);
  CHECK(tail_probability(x, 1.0) == 0.75);  // closed interval at the boundary
  CHECK(tail_probability(HermitianElement::zero(3), 0.5) == 0.0);

  RandomStream rng(4, 0);
  for (int k = 0; k < 20; ++k) {
    const auto y = random_hermitian(7, rng);
    const auto spec = spectral_decompose(y);
    CHECK(tail_probability(y, spec.min() - 1.0) == 1.0);
    const double t = rng.uniform(-2.0, 2.0);
    // complementary tails cover everything; equality away from eigenvalues
    const double sum = tail_probability(y, t) + tail_probability(-y, -t);
    CHECK(sum >= 1.0);
    CHECK(sum == doctest::Approx(1.0));
    double prev = 1.0;
    for (double s = -4.0; s <= 4.0; s += 0.25) {
      const double cur = tail_probability(spec, s);
      CHECK(cur <= prev);
      prev = cur;
    }
  }
}

TEST_CASE("absolute value") {
  CHECK(oracle::max_abs(abs_element(HermitianElement::diagonal({1.0, -1.0})).matrix() -
                        Matrix::Identity(2, 2)) < 1e-14);
  CHECK(oracle::max_abs(abs_element(HermitianElement(m2(0.0, 2.0, 2.0, 0.0))).matrix() -
                        2.0 * Matrix::Identity(2, 2)) < 1e-14);
  RandomStream rng(5, 0);
  const auto p = random_positive(6, rng);
  CHECK(rel_frobenius(abs_element(p).matrix(), p.matrix()) < 1e-10);
  const auto y = random_hermitian(6, rng);
  CHECK(min_eigenvalue(abs_element(y)) >= -1e-12);
}

TEST_CASE("schatten norms") {
  CHECK(schatten_norm(HermitianElement::diagonal({1.0, -1.0}), 2.0) == doctest::Approx(1.0));
  for (double p : {1.0, 1.5, 2.0, 7.0, double(INFINITY)}) {
    CHECK(schatten_norm(HermitianElement::identity(4), p) == doctest::Approx(1.0));
  }
  CHECK(schatten_norm(HermitianElement::diagonal({3.0, 0.0, 0.0, 0.0}), 1.0) == doctest::Approx(0.75));
  CHECK_THROWS_AS(schatten_norm(HermitianElement::identity(2), 0.5), ParameterError);

  RandomStream rng(6, 0);
  for (int k = 0; k < 10; ++k) {
    const auto a = random_hermitian(5, rng);
    const auto b = random_hermitian(5, rng);
    for (double p : {1.0, 2.0, 3.0, double(INFINITY)}) {
      CHECK(schatten_norm(a + b, p) <= schatten_norm(a, p) + schatten_norm(b, p) + 1e-12);
    }
    double direct = 0.0;
    for (double v : oracle::eigenvalues(a.matrix())) direct += std::pow(std::abs(v), 3.0);
    CHECK(schatten_norm(a, 3.0) == doctest::Approx(std::cbrt(direct / 5.0)).epsilon(1e-12));
  }
}

TEST_CASE("operator order") {
  CHECK(leq_order(HermitianElement::zero(2), HermitianElement::diagonal({1.0, 2.0}), 1e-12));
  CHECK_FALSE(leq_order(HermitianElement::diagonal({2.0, 0.0}), HermitianElement::diagonal({1.0, 1.0}), 1e-12));
  RandomStream rng(7, 0);
  const auto x = random_hermitian(4, rng);
  CHECK(leq_order(x, x, 1e-12));
  CHECK_THROWS_AS(leq_order(HermitianElement::zero(2), HermitianElement::zero(3), 1e-12), DimensionError);
}

TEST_CASE("Golden-Thompson") {
  RandomStream rng(8, 0);
  SUBCASE("commuting pair attains equality") {
    const auto y1 = HermitianElement::diagonal({0.3, -1.2, 2.0});
    const auto y2 = HermitianElement::diagonal({1.0, 0.5, -0.7});
    const auto r = check_golden_thompson(y1, y2);
    CHECK(r.holds);
    CHECK(std::abs(r.aux.at("rhs_sandwich") - r.lhs) <= 1e-10 * r.lhs);
    CHECK(std::abs(r.aux.at("rhs_product") - r.lhs) <= 1e-10 * r.lhs);
  }
  SUBCASE("y2 = 0") {
    const auto y1 = random_hermitian(4, rng);
    const auto r = check_golden_thompson(y1, HermitianElement::zero(4));
    const double expected = oracle::normalized_trace(oracle::expm(y1.matrix()));
    CHECK(r.lhs == doctest::Approx(expected).epsilon(1e-10));
    CHECK(r.aux.at("rhs_sandwich") == doctest::Approx(expected).epsilon(1e-10));
    CHECK(r.aux.at("rhs_product") == doctest::Approx(expected).epsilon(1e-10));
  }
  SUBCASE("random pairs, both forms against the oracle exponential") {
    RandomStream seeded(7, 0);
    for (int k = 0; k < 25; ++k) {
      const auto y1 = random_hermitian(4, seeded);
      const auto y2 = random_hermitian(4, seeded);
      const auto r = check_golden_thompson(y1, y2);
      CHECK(r.holds);
      CHECK(r.ratio <= 1.0 + 1e-12);
      const double lhs = oracle::normalized_trace(oracle::expm(y1.matrix() + y2.matrix()));
      const double t2 = (oracle::expm(y1.matrix()) * oracle::expm(y2.matrix())).trace().real() / 4.0;
      CHECK(r.lhs == doctest::Approx(lhs).epsilon(1e-10));
      CHECK(r.aux.at("rhs_product") == doctest::Approx(t2).epsilon(1e-10));
      CHECK(lhs <= t2 * (1 + 1e-9));
    }
  }
}

TEST_CASE("exponential Chebyshev") {
  auto r = check_exp_chebyshev(HermitianElement::zero(3), 1.0);
  CHECK(r.lhs == 0.0);
  CHECK(r.rhs == doctest::Approx(std::exp(-1.0)));
  CHECK(r.holds);

  r = check_exp_chebyshev(HermitianElement::diagonal({2.0, 0.0}), 2.0);
  CHECK(r.lhs == 0.5);
  CHECK(r.rhs == doctest::Approx(std::exp(-2.0) * (std::exp(2.0) + 1.0) / 2.0).epsilon(1e-14));
  CHECK(r.rhs == doctest::Approx(0.5677).epsilon(1e-4));
  CHECK(r.holds);

  RandomStream rng(9, 0);
  for (int k = 0; k < 10; ++k) {
    const auto x = random_hermitian(5, rng);
    const auto rec = check_exp_chebyshev(x, min_eigenvalue(x));
    CHECK(rec.lhs == 1.0);
    CHECK(rec.holds);
    // Peierls-Bogoliubov: tau(e^x) >= e^{tau(x)}
    CHECK(trace_state(exp_element(x)) >= std::exp(trace_state(x)) * (1 - 1e-12));
  }
}

TEST_CASE("Lp integral identity") {
  auto r = check_lp_integral_identity(HermitianElement::identity(3), 2.0);
  CHECK(r.lhs == doctest::Approx(1.0));
  CHECK(r.holds);
  r = check_lp_integral_identity(HermitianElement::diagonal({2.0, 0.0}), 1.0);
  CHECK(r.lhs == doctest::Approx(1.0));
  CHECK(r.rhs == doctest::Approx(1.0));

  RandomStream rng(10, 0);
  const auto x = random_positive(5, rng) * 3.0;
  r = check_lp_integral_identity(x, 3.0);
  CHECK(r.holds);
  double direct = 0.0;
  for (double v : oracle::eigenvalues(x.matrix())) direct += std::pow(std::max(v, 0.0), 3.0);
  CHECK(r.lhs == doctest::Approx(direct / 5.0).epsilon(1e-9));

  // repeated eigenvalues collapse into one jump
  r = check_lp_integral_identity(HermitianElement::diagonal({1.0, 1.0, 2.5, 0.0}), 2.5);
  CHECK(r.holds);

  CHECK_THROWS_AS(tail_integral(HermitianElement::diagonal({1.0, -0.5}), 2.0), PreconditionError);
}
