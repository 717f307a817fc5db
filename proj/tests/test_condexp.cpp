#include <doctest.h>

#include <cmath>

#include "ncaz/condexp.hpp"
#include "ncaz/error.hpp"
#include "ncaz/random.hpp"
#include "oracles.hpp"

using namespace ncaz;

namespace {

Eigen::Index ix(std::size_t v) { return static_cast<Eigen::Index>(v); }

}  // namespace

TEST_CASE("filtration shape") {
  const TensorFiltration f({2, 3, 2});
  CHECK(f.levels() == 3);
  CHECK(f.ambient_dim() == 12);
  CHECK(f.left_dim(0) == 1);
  CHECK(f.left_dim(2) == 6);
  CHECK(f.right_dim(1) == 6);
  CHECK(f.factor_dim(2) == 3);
  CHECK_THROWS_AS((void)f.factor_dim(0), ParameterError);
  CHECK_THROWS_AS((void)f.left_dim(4), ParameterError);
  CHECK_THROWS_AS(TensorFiltration({2, 0}), DimensionError);
  CHECK_THROWS_AS(TensorFiltration({8, 8, 2}), DimensionError);
  CHECK_NOTHROW(TensorFiltration({8, 8, 2}, 128));
}

TEST_CASE("embedding") {
  const TensorFiltration f({2, 3, 2});
  CHECK(oracle::max_abs(embed(HermitianElement::identity(3), 2, f).matrix() - Matrix::Identity(12, 12)) == 0.0);
  CHECK(trace_state(embed(HermitianElement::diagonal({1.0, -1.0}), 1, f)) == doctest::Approx(0.0));

  RandomStream rng(1, 0);
  const auto a = random_hermitian(2, rng);
  const auto b = random_hermitian(3, rng);
  const Matrix ea = embed(a, 1, f).matrix();
  const Matrix eb = embed(b, 2, f).matrix();
  const Matrix expected = oracle::kron(oracle::kron(a.matrix(), b.matrix()), Matrix::Identity(2, 2));
  CHECK(oracle::max_abs(ea * eb - expected) < 1e-14);
  CHECK(oracle::max_abs(ea * eb - eb * ea) < 1e-14);
  CHECK(trace_state(embed(b, 2, f)) == doctest::Approx(trace_state(b)).epsilon(1e-14));
  CHECK_THROWS_AS(embed(a, 2, f), DimensionError);
}

TEST_CASE("conditional expectation against the partial-trace oracle") {
  const TensorFiltration f({2, 3, 2});
  RandomStream rng(2, 0);
  const auto x = random_hermitian(12, rng);
  for (std::size_t j = 0; j <= 3; ++j) {
    const auto ej = conditional_expectation(x, f, j);
    const Matrix ref = oracle::partial_trace_expectation(x.matrix(), ix(f.left_dim(j)), ix(f.right_dim(j)));
    CHECK(oracle::max_abs(ej.matrix() - ref) < 1e-12);
    CHECK(trace_state(ej) == doctest::Approx(trace_state(x)).epsilon(1e-12));
    // result lies in M_j: commutes with everything on the traced factors
    const auto z = random_hermitian(f.right_dim(j), rng);
    const Matrix zz = oracle::kron(Matrix::Identity(ix(f.left_dim(j)), ix(f.left_dim(j))), z.matrix());
    CHECK(oracle::max_abs(ej.matrix() * zz - zz * ej.matrix()) < 1e-10);
    // idempotent
    CHECK(oracle::max_abs(conditional_expectation(ej, f, j).matrix() - ej.matrix()) < 1e-12);
  }
  CHECK_THROWS_AS(conditional_expectation(x, f, 4), ParameterError);
}

TEST_CASE("conditional expectation examples") {
  const TensorFiltration f({2, 3});
  RandomStream rng(3, 0);
  const auto a = random_hermitian(2, rng);
  const auto b = random_hermitian(3, rng);
  const HermitianElement ab(oracle::kron(a.matrix(), b.matrix()));
  const auto e1 = conditional_expectation(ab, f, 1);
  CHECK(oracle::max_abs(e1.matrix() - trace_state(b) * embed(a, 1, f).matrix()) < 1e-12);

  for (std::size_t j = 0; j <= 2; ++j) {
    CHECK(oracle::max_abs(conditional_expectation(HermitianElement::identity(6), f, j).matrix() -
                          Matrix::Identity(6, 6)) < 1e-14);
  }
  const auto x = random_hermitian(6, rng);
  CHECK(oracle::max_abs(conditional_expectation(x, f, 0).matrix() -
                        trace_state(x) * Matrix::Identity(6, 6)) < 1e-12);
}

TEST_CASE("pinching") {
  Matrix x(2, 2);
  x << 1.0, 2.0, 2.0, 1.0;
  const auto p = Pinching::standard_basis(2);
  CHECK(oracle::max_abs(pinching_expectation(x, p) - Matrix::Identity(2, 2)) == 0.0);

  const auto d = HermitianElement::diagonal({1.0, -3.0, 2.0});
  CHECK(oracle::max_abs(pinching_expectation(d, Pinching::standard_basis(3)).matrix() - d.matrix()) == 0.0);

  RandomStream rng(4, 0);
  const auto y = random_hermitian(6, rng);
  CHECK(trace_state(pinching_expectation(y, Pinching::standard_basis(6))) ==
        doctest::Approx(trace_state(y)).epsilon(1e-13));

  // a non-diagonal partition: spectral projections of a random element
  const auto spec = spectral_decompose(random_hermitian(4, rng));
  std::vector<Matrix> ps{spec.projection(0) + spec.projection(1), spec.projection(2), spec.projection(3)};
  const Pinching general(ps);
  CHECK_FALSE(general.diagonal());
  const auto w = random_hermitian(4, rng);
  const Matrix pw = pinching_expectation(w.matrix(), general);
  Matrix ref = Matrix::Zero(4, 4);
  for (const auto& q : ps) ref += q * w.matrix() * q;
  CHECK(oracle::max_abs(pw - ref) < 1e-14);
  CHECK(oracle::max_abs(pinching_expectation(pw, general) - pw) < 1e-12);
  CHECK(std::abs(trace_state(pw) - trace_state(w.matrix())) < 1e-12);

  // bimodule property for elements commuting with the partition
  const Matrix c = spec.eigenvectors * RealVector::LinSpaced(4, -1.0, 2.0).cast<Complex>().asDiagonal() *
                   spec.eigenvectors.adjoint();
  CHECK(oracle::max_abs(pinching_expectation(Matrix(c * w.matrix() * c), general) - c * pw * c) < 1e-10);

  Matrix half = Matrix::Zero(2, 2);
  half(0, 0) = 1.0;
  CHECK_THROWS_AS(Pinching({half}), ConstructionError);
  CHECK_THROWS_AS(Pinching({Matrix::Identity(2, 2), Matrix::Identity(2, 2)}), ConstructionError);
  CHECK_THROWS_AS(Pinching({0.5 * Matrix::Identity(2, 2), 0.5 * Matrix::Identity(2, 2)}), ConstructionError);
  CHECK_THROWS_AS(pinching_expectation(Matrix::Identity(3, 3), p), DimensionError);
}

TEST_CASE("pinching route reproduces the partial trace") {
  for (const auto& dims : {std::vector<std::size_t>{2, 2}, {2, 3, 2}, {3, 2}, {4, 2}}) {
    const TensorFiltration f(dims);
    RandomStream rng(5, dims.size());
    const auto x = random_hermitian(f.ambient_dim(), rng);
    for (std::size_t j = 0; j <= f.levels(); ++j) {
      CHECK(oracle::max_abs(conditional_expectation_by_pinching(x.matrix(), f, j) -
                            conditional_expectation(x.matrix(), f, j)) < 1e-12);
    }
  }
}

TEST_CASE("order independence") {
  const TensorFiltration f({2, 2, 2});
  RandomStream rng(6, 0);
  auto a = random_hermitian(2, rng);
  a -= HermitianElement::scalar(2, trace_state(a));
  CHECK(oracle::max_abs(conditional_expectation(embed(a, 2, f), f, 1).matrix()) < 1e-14);
  CHECK(oracle::max_abs(conditional_expectation(HermitianElement::identity(8), f, 1).matrix() -
                        Matrix::Identity(8, 8)) < 1e-14);

  const auto r = verify_order_independence(f, 100, rng);
  CHECK(r.theorem == TheoremId::ORDER_INDEP);
  CHECK(r.holds);
  CHECK_FALSE(r.degenerate);
  CHECK(verify_order_independence(TensorFiltration({3}), 10, rng).degenerate);
}

TEST_CASE("conditional expectation axioms on several filtrations") {
  for (const auto& dims : {std::vector<std::size_t>{2, 2}, {2, 2, 2}, {3, 2}, {2, 3, 2}, {4, 2}}) {
    const TensorFiltration f(dims);
    RandomStream rng(7, dims.size() * 10 + dims[0]);
    const auto records = check_ce_axioms(f, rng);
    CHECK(records.size() == 8);
    for (const auto& r : records) {
      INFO(r.label);
      CHECK(r.theorem == TheoremId::CE_AXIOMS);
      CHECK(r.holds);
    }
  }
}
