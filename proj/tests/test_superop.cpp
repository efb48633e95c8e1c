#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "zeno/random.hpp"
#include "zeno/superop.hpp"
#include "test_helpers.hpp"

using namespace zeno;
using namespace zeno::testing;

TEST_CASE("vectorize follows column stacking") {
  Vector v = vectorize(Matrix::Identity(2, 2));
  Vector expected(4);
  expected << 1, 0, 0, 1;
  CHECK(max_abs(v - expected) == 0.0);

  Matrix ket01 = Matrix::Zero(2, 2);
  ket01(0, 1) = 1.0;  // |0><1|
  Vector v2 = vectorize(ket01);
  Vector expected2(4);
  expected2 << 0, 0, 1, 0;
  CHECK(max_abs(v2 - expected2) == 0.0);
}

TEST_CASE("devectorize inverts vectorize bit-exactly") {
  std::mt19937_64 rng(1);
  const Matrix x = random_ginibre(3, 3, rng);
  CHECK((devectorize(vectorize(x)) - x).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("vec(AXB) = (B^T kron A) vec(X)") {
  std::mt19937_64 rng(2);
  for (int d = 1; d <= 4; ++d) {
    for (int rep = 0; rep < 5; ++rep) {
      const Matrix a = random_ginibre(d, d, rng);
      const Matrix x = random_ginibre(d, d, rng);
      const Matrix b = random_ginibre(d, d, rng);
      const Matrix lhs = devectorize(kron(b.transpose(), a) * vectorize(x));
      CHECK(max_abs(lhs - a * x * b) < 1e-12);
    }
  }
}

TEST_CASE("kraus_to_superop on reference channels") {
  // identity channel
  const SuperOp id = kraus_to_superop(KrausSet(2, {Matrix::Identity(2, 2)},
                                               KrausSet::Kind::channel));
  CHECK(superop_dist(id, SuperOp::identity(2)) == 0.0);

  // pinching
  Vector diag(4);
  diag << 1, 0, 0, 1;
  CHECK(superop_dist(pinching_superop(), SuperOp(Matrix(diag.asDiagonal()))) == 0.0);

  // bit flip: sigma_x kron sigma_x maps vec indices (0,1,2,3) -> (3,2,1,0)
  const SuperOp flip = kraus_to_superop(KrausSet(2, {pauli_x()}, KrausSet::Kind::channel));
  Matrix expected = Matrix::Zero(4, 4);
  expected(3, 0) = expected(2, 1) = expected(1, 2) = expected(0, 3) = 1.0;
  CHECK(superop_dist(flip, SuperOp(expected)) == 0.0);
}

TEST_CASE("kraus superop action matches the Kraus sum") {
  std::mt19937_64 rng(3);
  const KrausSet k = random_channel_kraus(3, 3, rng);
  const SuperOp t = kraus_to_superop(k);
  const Matrix rho = random_density(3, rng);
  Matrix direct = Matrix::Zero(3, 3);
  for (const Matrix& op : k.ops) direct += op * rho * op.adjoint();
  CHECK(max_abs(t.apply(rho) - direct) < 1e-13);
}

TEST_CASE("KrausSet validation") {
  CHECK_THROWS_AS(KrausSet(2, {2.0 * Matrix::Identity(2, 2)}, KrausSet::Kind::channel),
                  ValidationError);
  CHECK_THROWS_AS(KrausSet(2, {Matrix::Identity(3, 3)}, KrausSet::Kind::channel),
                  ValidationError);
  // sub-normalized single Kraus is a valid operation but not a channel
  Matrix half = 0.5 * Matrix::Identity(2, 2);
  CHECK_THROWS_AS(KrausSet(2, {half}, KrausSet::Kind::channel), ValidationError);
  CHECK_NOTHROW(KrausSet(2, {half}, KrausSet::Kind::operation));
}

TEST_CASE("choi matrices of reference maps") {
  // identity: |Omega><Omega|, rank one, trace d
  const Matrix j_id = choi_matrix(SuperOp::identity(2));
  Vector omega(4);
  omega << 1, 0, 0, 1;
  CHECK(max_abs(j_id - omega * omega.adjoint()) == 0.0);
  CHECK(std::abs(j_id.trace() - Complex(2.0)) < 1e-14);

  // pinching: projector onto span{|00>, |11>}
  const Matrix j_pinch = choi_matrix(pinching_superop());
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 0) = expected(3, 3) = 1.0;
  CHECK(max_abs(j_pinch - expected) == 0.0);

  // completely depolarizing: rho -> tr(rho) 1/2 has Choi 1_4 / 2
  const Vector vec_id = vectorize(Matrix::Identity(2, 2));
  const SuperOp depol(Matrix(0.5 * vectorize(Matrix::Identity(2, 2)) * vec_id.adjoint()));
  CHECK(max_abs(choi_matrix(depol) - 0.5 * Matrix::Identity(4, 4)) < 1e-15);
}

TEST_CASE("classify_map flags") {
  const MapClassification id_c = classify_map(SuperOp::identity(2), 1e-9);
  CHECK(id_c.cp);
  CHECK(id_c.trace_preserving);
  CHECK(id_c.trace_nonincreasing);
  CHECK(id_c.hermiticity_preserving);

  const MapClassification twice = classify_map(2.0 * SuperOp::identity(2), 1e-9);
  CHECK(twice.cp);
  CHECK_FALSE(twice.trace_preserving);
  CHECK_FALSE(twice.trace_nonincreasing);

  std::mt19937_64 rng(4);
  for (int i = 0; i < 10; ++i) {
    const int d = 2 + i % 2;
    const SuperOp t = kraus_to_superop(random_channel_kraus(d, 2, rng));
    const MapClassification c = classify_map(t, 1e-9);
    CHECK(c.cp);
    CHECK(c.trace_preserving);
  }

  // transpose map: hermiticity preserving but not CP (Choi eigenvalue -1)
  Matrix swap = Matrix::Zero(4, 4);
  swap(0, 0) = swap(3, 3) = 1.0;
  swap(1, 2) = swap(2, 1) = 1.0;
  const SuperOp transpose_map(swap);
  const MapClassification tc = classify_map(transpose_map, 1e-9);
  CHECK(tc.hermiticity_preserving);
  CHECK(tc.trace_preserving);
  CHECK_FALSE(tc.cp);
  Eigen::SelfAdjointEigenSolver<Matrix> es(choi_matrix(transpose_map));
  CHECK(std::abs(es.eigenvalues().minCoeff() + 1.0) < 1e-12);
}

TEST_CASE("apply on reference maps") {
  Matrix rho(2, 2);
  rho << Complex(0.6), Complex(0.2, 0.1), Complex(0.2, -0.1), Complex(0.4);
  const Matrix pinched = pinching_superop().apply(rho);
  Matrix expected(2, 2);
  expected << 0.6, 0, 0, 0.4;
  CHECK(max_abs(pinched - expected) == 0.0);

  CHECK(max_abs(SuperOp::identity(2).apply(rho) - rho) == 0.0);

  const SuperOp flip = kraus_to_superop(KrausSet(2, {pauli_x()}, KrausSet::Kind::channel));
  Matrix diag_p(2, 2);
  diag_p << 0.3, 0, 0, 0.7;
  Matrix flipped_expected(2, 2);
  flipped_expected << 0.7, 0, 0, 0.3;
  CHECK(max_abs(flip.apply(diag_p) - flipped_expected) == 0.0);

  CHECK_THROWS_AS(pinching_superop().apply(Matrix::Identity(3, 3)), ValidationError);
}

TEST_CASE("expm of zero is the identity") {
  CHECK(superop_dist(expm_superop(SuperOp::zero(2), 1.0), SuperOp::identity(2)) < 1e-15);
}

TEST_CASE("expm of the dephasing generator is diagonal") {
  const double gamma = 0.25, t = 0.8;
  const SuperOp e = expm_superop(dephasing_superop(gamma), t);
  Vector diag(4);
  diag << 1.0, std::exp(-2.0 * gamma * t), std::exp(-2.0 * gamma * t), 1.0;
  CHECK(superop_dist(e, SuperOp(Matrix(diag.asDiagonal()))) < 1e-14);
}

TEST_CASE("expm matches the eigendecomposition oracle on normal matrices") {
  std::mt19937_64 rng(5);
  const Matrix u = random_unitary(4, rng);
  Vector eig(4);
  eig << Complex(-0.3, 0.7), Complex(0.1, -1.2), Complex(-1.0, 0.0), Complex(0.4, 0.4);
  const Matrix a = u * eig.asDiagonal() * u.adjoint();
  Matrix oracle = u * eig.unaryExpr([](Complex z) { return std::exp(z); }).asDiagonal() *
                  u.adjoint();
  CHECK(max_abs(expm(a) - oracle) < 1e-13);
}

TEST_CASE("expm semigroup law") {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 5; ++i) {
    SuperOp a = random_superop(2, 1.0, rng);
    a = (1.0 / std::max(1.0, proxy_norm(a))) * a;  // ||A|| <= 1
    const SuperOp lhs = expm_superop(a, 0.7) * expm_superop(a, 0.5);
    const SuperOp rhs = expm_superop(a, 1.2);
    CHECK(proxy_norm(lhs - rhs) < 1e-10);
  }
}

TEST_CASE("expm rejects huge arguments") {
  CHECK_THROWS_AS(expm_superop(SuperOp::identity(2), 2e4), ValidationError);
}

TEST_CASE("norm estimate on reference maps") {
  const NormEstimate id2 = norm_1to1_estimate(SuperOp::identity(2), 4, 10, 11);
  CHECK(id2.lower == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(id2.upper == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

  const NormEstimate zero = norm_1to1_estimate(SuperOp::zero(3), 2, 4, 12);
  CHECK(zero.lower == 0.0);
  CHECK(zero.upper == 0.0);
}

TEST_CASE("norm estimate brackets: lower <= upper on random superoperators") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    const SuperOp t = random_superop(2, 1.0, rng);
    const NormEstimate est = norm_1to1_estimate(t, 2, 6, 1000 + i);
    CHECK(est.lower <= est.upper + 1e-12);
  }
}

TEST_CASE("channels have norm 1: lower lands in [1 - 1e-9, upper]") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 25; ++i) {
    const int d = 2 + i % 2;
    const SuperOp t = kraus_to_superop(random_channel_kraus(d, 1 + i % 3, rng));
    const NormEstimate est = norm_1to1_estimate(t, 4, 10, 2000 + i);
    CHECK(est.lower >= 1.0 - 1e-9);
    CHECK(est.lower <= est.upper + 1e-12);
  }
}

TEST_CASE("contraction_bound is ~1 for channels and honest otherwise") {
  std::mt19937_64 rng(9);
  const SuperOp t = kraus_to_superop(random_channel_kraus(2, 2, rng));
  CHECK(contraction_bound(t) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(contraction_bound(2.0 * SuperOp::identity(2)) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("DensityMatrix invariants") {
  CHECK_NOTHROW(DensityMatrix{0.5 * Matrix::Identity(2, 2)});
  Matrix not_herm(2, 2);
  not_herm << 0.5, 0.1, 0.0, 0.5;
  CHECK_THROWS_AS(DensityMatrix{not_herm}, ValidationError);
  Matrix neg(2, 2);
  neg << 1.5, 0, 0, -0.5;
  CHECK_THROWS_AS(DensityMatrix{neg}, ValidationError);
  CHECK_THROWS_AS(DensityMatrix{Matrix::Identity(2, 2)}, ValidationError);  // trace 2
}

TEST_CASE("SuperOp shape validation") {
  CHECK_THROWS_AS(SuperOp(Matrix::Zero(3, 3)), ValidationError);  // 3 not a square
  CHECK_THROWS_AS(SuperOp(Matrix::Zero(4, 2)), ValidationError);
  CHECK(SuperOp(Matrix::Zero(1, 1)).dim() == 1);  // d = 1 is allowed
}

TEST_CASE("pow matches iterated multiplication") {
  std::mt19937_64 rng(10);
  const SuperOp a = random_superop(2, 0.5, rng);
  SuperOp iterated = SuperOp::identity(2);
  for (int i = 0; i < 11; ++i) iterated = iterated * a;
  CHECK(proxy_norm(pow(a, 11) - iterated) < 1e-12);
  CHECK(superop_dist(pow(a, 0), SuperOp::identity(2)) == 0.0);
}
