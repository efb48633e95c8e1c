#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "zeno/random.hpp"
#include "zeno/zeno_static.hpp"
#include "test_helpers.hpp"

using namespace zeno;
using namespace zeno::testing;

namespace {

ZenoStaticScenario classic_zeno() {
  return ZenoStaticScenario(pinching_superop(), rabi_superop(), 1.0);
}

ZenoStaticScenario damped_rabi() {
  return ZenoStaticScenario(pinching_superop(),
                            build_generator(pauli_x(), {std::sqrt(0.3) * pauli_z()}), 1.0);
}

ZenoStaticScenario identity_scenario() {
  return ZenoStaticScenario(SuperOp::identity(2), dephasing_superop(0.3), 1.0);
}

// M = conj(K) kron K for K = diag(1, 1/2): spectrum {1, 1/2, 1/2, 1/4}, so
// the inner spectrum is genuinely gapped away from the peripheral
// eigenvalue and the projected-product gap decay is visible at moderate n.
ZenoStaticScenario gapped_contraction() {
  Matrix k(2, 2);
  k << 1, 0, 0, 0.5;
  const SuperOp m = kraus_to_superop(KrausSet(2, {k}, KrausSet::Kind::operation));
  return ZenoStaticScenario(
      m, build_generator(pauli_x(), {std::sqrt(0.2) * sigma_minus()}), 1.0);
}

}  // namespace

TEST_CASE("zeno_product basics") {
  const ZenoStaticScenario s = classic_zeno();
  CHECK(superop_dist(zeno_product(s, 1), s.m() * expm_superop(s.l(), 1.0)) < 1e-14);

  const ZenoStaticScenario id = identity_scenario();
  for (long n : {1L, 7L, 32L})
    CHECK(proxy_norm(zeno_product(id, n) - expm_superop(id.l(), 1.0)) < 1e-12);
}

TEST_CASE("classic Zeno freezes onto the pinching projector") {
  const ZenoStaticScenario s = classic_zeno();
  // P L P = 0: the limit is the projector itself
  CHECK(superop_dist(zeno_limit_static(s), pinching_superop()) < 1e-11);

  const double e16 = proxy_norm(zeno_product(s, 16) - pinching_superop());
  const double e256 = proxy_norm(zeno_product(s, 256) - pinching_superop());
  CHECK(e256 < e16 / 4);
}

TEST_CASE("zeno_limit_static reference values") {
  const ZenoStaticScenario id = identity_scenario();
  CHECK(proxy_norm(zeno_limit_static(id) - expm_superop(id.l(), 1.0)) < 1e-12);

  // pinching + dephasing: P annihilates the dephasing action entirely
  const ZenoStaticScenario deph(pinching_superop(), dephasing_superop(0.4), 1.0);
  CHECK(superop_dist(zeno_limit_static(deph), pinching_superop()) < 1e-11);
}

TEST_CASE("zeno limit lands inside the range of P") {
  const ZenoStaticScenario s = damped_rabi();
  const SuperOp limit = zeno_limit_static(s);
  CHECK(proxy_norm(limit * s.projector() - limit) < 1e-10);
}

TEST_CASE("convergence_curve on the identity scenario is flat zero") {
  const ZenoStaticScenario id = identity_scenario();
  for (const auto& rec : convergence_curve(id, {4, 16, 64}, NormKind::proxy))
    CHECK(rec.error <= 1e-10);
}

TEST_CASE("convergence_curve decreases strictly on the classic scenario") {
  const ZenoStaticScenario s = classic_zeno();
  const auto records = convergence_curve(s, {4, 8, 16, 32, 64, 128}, NormKind::proxy);
  for (std::size_t i = 1; i < records.size(); ++i)
    CHECK(records[i].error < records[i - 1].error);
}

TEST_CASE("t = 0 reduces to the power iteration of M") {
  // M = diag(1, c, c, c^2): ||M^n - P|| = c^n exactly
  Matrix k(2, 2);
  k << 1, 0, 0, 0.5;
  const SuperOp m = kraus_to_superop(KrausSet(2, {k}, KrausSet::Kind::operation));
  const ZenoStaticScenario s(m, dephasing_superop(0.2), 0.0);
  const auto records = convergence_curve(s, {2, 4, 8}, NormKind::proxy);
  for (const auto& rec : records)
    CHECK(rec.error == doctest::Approx(std::pow(0.5, rec.n)).epsilon(1e-10));
}

TEST_CASE("chernoff_gap reference cases") {
  const auto [l_id, r_id] = chernoff_gap(SuperOp::identity(2), 8);
  CHECK(l_id == 0.0);
  CHECK(r_id == 0.0);

  // C = diag(1,0,0,0): C^n - e^{n(C-1)} = diag(0, -e^-n, -e^-n, -e^-n)
  Matrix c = Matrix::Zero(4, 4);
  c(0, 0) = 1.0;
  for (long n : {1L, 4L, 16L}) {
    const SuperOp cs(c);
    const auto [lhs, rhs] = chernoff_gap(cs, n, 55);
    CHECK(lhs <= rhs + 1e-12);
    const SuperOp diff =
        pow(cs, n) - expm_superop(cs - SuperOp::identity(2), static_cast<double>(n));
    CHECK(proxy_norm(diff) == doctest::Approx(std::exp(-n)).epsilon(1e-11));
  }
}

TEST_CASE("chernoff inequality holds on random channels") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 20; ++i) {
    const int d = 2 + i % 2;
    const SuperOp c = kraus_to_superop(random_channel_kraus(d, 2, rng));
    for (long n : {1L, 8L, 64L}) {
      const auto [lhs, rhs] = chernoff_gap(c, n, 100 + i);
      CHECK(lhs <= rhs + 1e-9);
    }
  }
}

TEST_CASE("chernoff_gap rejects non-contractions") {
  CHECK_THROWS_AS(chernoff_gap(1.2 * SuperOp::identity(2), 4), ValidationError);
}

TEST_CASE("projected zeno product on the diagonal reference") {
  // pinching + dephasing: everything is diagonal, P_{1/n} = P and the
  // projected product collapses to P itself.
  const ZenoStaticScenario s(pinching_superop(), dephasing_superop(0.4), 1.0);
  CHECK(s.epsilon() == 1.0);
  for (long n : {2L, 8L, 64L})
    CHECK(superop_dist(projected_zeno_product(s, n), pinching_superop()) < 1e-10);
}

TEST_CASE("projected product of the identity scenario is the semigroup") {
  const ZenoStaticScenario id = identity_scenario();
  CHECK(proxy_norm(projected_zeno_product(id, 8) - expm_superop(id.l(), 1.0)) < 1e-9);
}

TEST_CASE("projected and plain products approach each other") {
  const ZenoStaticScenario s = gapped_contraction();
  auto gap = [&](long n) {
    return proxy_norm(zeno_product(s, n) - projected_zeno_product(s, n));
  };
  const double g8 = gap(8), g16 = gap(16), g24 = gap(24);
  CHECK(g16 < g8);
  CHECK(g24 < g16);
  CHECK(g16 < g8 / 4);  // geometric, not just monotone
}

TEST_CASE("projected-product gap obeys the geometric resolvent certificate") {
  const ZenoStaticScenario s = gapped_contraction();
  const double delta = s.report().delta;
  const ContourSpec small = ContourSpec::around_rest(delta);
  for (long n : {8L, 16L, 24L}) {
    const double lhs = proxy_norm(zeno_product(s, n) - projected_zeno_product(s, n));
    const double sup = resolvent_sup(s.m(), s.l(), small, 8, static_cast<int>(n));
    const double bound = std::pow(0.5 * (1.0 + delta), static_cast<double>(n + 1)) * sup;
    CHECK(lhs <= bound + 1e-8);
  }
}

TEST_CASE("functional calculus identity for the projected-product gap") {
  // (M e^{L/n})^n - (P M e^{L/n} P)^n equals the contour integral of
  // z^n (z - M e^{L/n})^{-1} over the inner circle. Quadrature is done
  // here from scratch as an independent oracle.
  const ZenoStaticScenario s = gapped_contraction();
  const long n = 12;
  const double delta = s.report().delta;
  const SuperOp lhs = zeno_product(s, n) - projected_zeno_product(s, n);

  const Matrix a = (s.m() * expm_superop(s.l(), 1.0 / n)).rep();
  const double radius = 0.5 * (1.0 + delta);
  const int nodes = 4096;
  Matrix integral = Matrix::Zero(4, 4);
  for (int j = 0; j < nodes; ++j) {
    const double phi = 2.0 * M_PI * j / nodes;
    const Complex z = radius * Complex(std::cos(phi), std::sin(phi));
    Matrix shifted = -a;
    shifted.diagonal().array() += z;
    integral += std::pow(z, static_cast<double>(n)) * (z / static_cast<double>(nodes)) *
                shifted.inverse();
  }
  CHECK(max_abs(lhs.rep() - integral) < 1e-9);
}

TEST_CASE("central quantity reference cases") {
  const ZenoStaticScenario deph(pinching_superop(), dephasing_superop(0.4), 1.0);
  for (long n : {4L, 64L, 1024L})
    CHECK(proxy_norm(central_quantity(deph, n)) < 1e-9);  // exactly 0 in this geometry

  // L = 0, idempotent M: C = P for every n
  const ZenoStaticScenario still(pinching_superop(), SuperOp::zero(2), 1.0);
  CHECK(proxy_norm(central_quantity(still, 8)) < 1e-10);
}

TEST_CASE("central quantity converges to PLP") {
  const ZenoStaticScenario s = damped_rabi();
  const SuperOp& p = s.projector();
  const SuperOp target = p * s.l() * p;  // t = 1, so the absorbed generator is L
  const double d16 = proxy_norm(central_quantity(s, 16) - target);
  const double d256 = proxy_norm(central_quantity(s, 256) - target);
  const double d1024 = proxy_norm(central_quantity(s, 1024) - target);
  CHECK(d256 < d16);
  CHECK(d1024 <= d16 / 10);
}

TEST_CASE("generator variants coincide after exponentiation") {
  // frozen diagonal case: pinching P, dephasing L
  const GeneratorVariants gv = generator_variants(pinching_superop(), dephasing_superop(0.5));
  CHECK(proxy_norm(gv.plp) == 0.0);
  CHECK(proxy_norm(gv.pl) == 0.0);
  Vector shift(4);
  shift << 0, -1, -1, 0;
  CHECK(max_abs(gv.p_shift.rep() - Matrix(shift.asDiagonal())) < 1e-15);
  CHECK(gv.max_pairwise_distance <= 1e-10);

  // P = id: every variant is L itself
  const GeneratorVariants gid = generator_variants(SuperOp::identity(2), dephasing_superop(0.3));
  CHECK(gid.max_pairwise_distance <= 1e-12);

  std::mt19937_64 rng(42);
  for (int i = 0; i < 5; ++i) {
    const SuperOp m = random_gapped_operation(2, 0.5, rng);
    const SuperOp p = power_limit_projector(m, 1e-12, 40).proj;
    const SuperOp l = random_gkls(2, 1, 0.9, rng).to_superop();
    CHECK(generator_variants(p, l).max_pairwise_distance <= 1e-10);
  }
}

TEST_CASE("generator_variants rejects non-idempotent P") {
  CHECK_THROWS_AS(generator_variants(0.5 * SuperOp::identity(2), dephasing_superop(0.3)),
                  ValidationError);
}

TEST_CASE("scenario validation") {
  // gap failure
  const SuperOp weak = expm_superop(dephasing_superop(0.001), 1.0);
  CHECK_THROWS_AS(ZenoStaticScenario(weak, dephasing_superop(0.3), 1.0), ValidationError);
  // not a generator
  CHECK_THROWS_AS(ZenoStaticScenario(pinching_superop(), SuperOp::identity(2), 1.0),
                  ValidationError);
}
