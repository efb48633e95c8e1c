#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "zeno/random.hpp"
#include "zeno/spectral.hpp"
#include "zeno/timedep.hpp"
#include "test_helpers.hpp"

using namespace zeno;
using namespace zeno::testing;

namespace {

GeneratorPath drive_path(double gamma = 0.3) {
  const Matrix deph = std::sqrt(gamma) * pauli_z();
  return GeneratorPath({{0.0, LindbladGenerator(pauli_x(), {deph})},
                        {1.0, LindbladGenerator(pauli_y(), {deph})}});
}

// The damping rate ramps down over time, so the projected generator family
// P L_t P is genuinely time dependent on the diagonal sector.
GeneratorPath damped_path() {
  return GeneratorPath(
      {{0.0, LindbladGenerator(pauli_x(), {std::sqrt(0.6) * sigma_minus()})},
       {1.0, LindbladGenerator(pauli_y(), {std::sqrt(0.1) * sigma_minus()})}});
}

GeneratorPath random_path(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return GeneratorPath({{0.0, random_gkls(2, 1, 1.0, rng)},
                        {1.0, random_gkls(2, 1, 1.0, rng)}});
}

}  // namespace

TEST_CASE("propagator of a constant path is the semigroup") {
  std::mt19937_64 rng(51);
  const LindbladGenerator g = random_gkls(2, 1, 1.0, rng);
  const GeneratorPath path = GeneratorPath::constant(g, 1.0);
  const SuperOp t = propagate(path, 0.2, 0.9, 1e-10);
  CHECK(proxy_norm(t - expm_superop(g.to_superop(), 0.7)) < 1e-12);
}

TEST_CASE("propagator identity law is exact") {
  const GeneratorPath path = drive_path();
  const SuperOp t = propagate(path, 0.4, 0.4, 1e-10);
  CHECK(superop_dist(t, SuperOp::identity(2)) == 0.0);
}

TEST_CASE("propagator cocycle law") {
  const GeneratorPath path = random_path(52);
  const double tol = 1e-10;
  const SuperOp t01 = propagate(path, 0.0, 0.35, tol);
  const SuperOp t12 = propagate(path, 0.35, 1.0, tol);
  const SuperOp t02 = propagate(path, 0.0, 1.0, tol);
  CHECK(proxy_norm(t12 * t01 - t02) < 3 * tol);
}

TEST_CASE("propagators are quantum channels") {
  const GeneratorPath path = random_path(53);
  const SuperOp t = propagate(path, 0.0, 1.0, 1e-10);
  const MapClassification c = classify_map(t, 1e-7);
  CHECK(c.cp);
  CHECK(c.trace_preserving);
}

TEST_CASE("propagate validates its interval") {
  const GeneratorPath path = drive_path();
  CHECK_THROWS_AS(propagate(path, 0.5, 0.2, 1e-10), ValidationError);
  CHECK_THROWS_AS(propagate(path, -0.1, 0.5, 1e-10), ValidationError);
  CHECK_THROWS_AS(propagate(path, 0.0, 1.5, 1e-10), ValidationError);
}

TEST_CASE("piecewise-constant bound on a constant path is an equality at zero") {
  std::mt19937_64 rng(54);
  const GeneratorPath path = GeneratorPath::constant(random_gkls(2, 1, 1.0, rng), 1.0);
  const auto [lhs, rhs] = piecewise_constant_bound(path, 0.2, 0.8, 0.1, 1);
  CHECK(rhs == 0.0);
  CHECK(lhs <= 1e-10);
}

TEST_CASE("piecewise-constant bound with s = t") {
  const GeneratorPath path = random_path(55);
  for (double delta : {0.1, 0.05, 0.025}) {
    const auto [lhs, rhs] = piecewise_constant_bound(path, 0.3, 0.3, delta, 2);
    CHECK(rhs == doctest::Approx(path.lipschitz() * delta * delta / 2).epsilon(1e-12));
    CHECK(lhs <= rhs + 1e-8);
  }
}

TEST_CASE("piecewise-constant bound on a linear ramp") {
  // L_t = t * G via keyframes (0, zero) -> (1, G): certified L equals the
  // upper norm estimate of G.
  std::mt19937_64 rng(56);
  const LindbladGenerator g = random_gkls(2, 1, 1.0, rng);
  const GeneratorPath path({{0.0, LindbladGenerator(Matrix::Zero(2, 2), {})}, {1.0, g}});
  CHECK(path.lipschitz() == doctest::Approx(norm_1to1_upper(g.to_superop())).epsilon(1e-12));
  int seed = 3;
  for (double t : {0.0, 0.4})
    for (double s : {0.1, 0.7})
      for (double delta : {0.1, 0.05}) {
        const auto [lhs, rhs] = piecewise_constant_bound(path, t, s, delta, seed++);
        CHECK(lhs <= rhs + 1e-8);
      }
}

TEST_CASE("piecewise-constant bound range validation") {
  const GeneratorPath path = drive_path();
  CHECK_THROWS_AS(piecewise_constant_bound(path, 0.95, 0.5, 0.1, 1), ValidationError);
  CHECK_THROWS_AS(piecewise_constant_bound(path, 0.1, 1.5, 0.1, 1), ValidationError);
}

TEST_CASE("intercepted product basics") {
  const SuperOp m = pinching_superop();
  const GeneratorPath path = drive_path();

  InterceptedConfig one{m, path, 1, 1, 1e-10};
  CHECK(proxy_norm(intercepted_product(one) - m * propagate(path, 0.0, 1.0, 1e-10)) < 1e-9);

  InterceptedConfig idcfg{SuperOp::identity(2), path, 8, 1, 1e-10};
  CHECK(proxy_norm(intercepted_product(idcfg) - propagate(path, 0.0, 1.0, 1e-10)) < 1e-8);
}

TEST_CASE("time-dependent Zeno freezes the pinched drive") {
  // Both commutators map diagonal to off-diagonal, so P L_t P = 0 and the
  // intercepted evolution approaches the bare projector applied to rho0.
  const SuperOp m = pinching_superop();
  const GeneratorPath path = drive_path();
  Matrix rho0(2, 2);
  rho0 << 0.5, 0.5, 0.5, 0.5;

  double e8 = 0, e64 = 0;
  {
    InterceptedConfig c8{m, path, 8, 1, 1e-10};
    e8 = trace_norm(intercepted_product(c8).apply(rho0) - m.apply(rho0));
    InterceptedConfig c64{m, path, 64, 1, 1e-10};
    e64 = trace_norm(intercepted_product(c64).apply(rho0) - m.apply(rho0));
  }
  CHECK(e64 < e8 / 4);
}

TEST_CASE("theta_step values and properties") {
  const double expected[] = {1.0 / 3, 1.0 / 3, 2.0 / 3, 2.0 / 3, 1.0, 1.0};
  for (long i = 1; i <= 6; ++i)
    CHECK(theta_step(i, 6, 3) == doctest::Approx(expected[i - 1]).epsilon(1e-15));

  for (long i = 1; i <= 10; ++i)
    CHECK(theta_step(i, 10, 10) == doctest::Approx(static_cast<double>(i) / 10).epsilon(1e-15));

  std::mt19937_64 rng(57);
  std::uniform_int_distribution<long> ndist(2, 200);
  for (int rep = 0; rep < 50; ++rep) {
    const long n = ndist(rng);
    std::uniform_int_distribution<long> mdist(1, n);
    const long m = mdist(rng);
    for (long i = 0; i < n; ++i) {
      const double theta = theta_step(i + 1, n, m);
      CHECK(theta >= 1.0 / static_cast<double>(m) - 1e-15);
      CHECK(theta <= 1.0 + 1e-15);
      CHECK(std::abs(theta - static_cast<double>(i) / n) <= 2.0 / static_cast<double>(m) + 1e-12);
    }
  }

  CHECK_THROWS_AS(theta_step(0, 6, 3), ValidationError);
  CHECK_THROWS_AS(theta_step(7, 6, 3), ValidationError);
  CHECK_THROWS_AS(theta_step(1, 6, 7), ValidationError);
}

TEST_CASE("w pair on a constant path coincides") {
  std::mt19937_64 rng(58);
  const GeneratorPath path = GeneratorPath::constant(random_gkls(2, 1, 0.8, rng), 1.0);
  InterceptedConfig cfg{pinching_superop(), path, 16, 4, 1e-11};
  const auto [w, wp] = w_pair(cfg);
  CHECK(proxy_norm(w - wp) < 1e-9);
}

TEST_CASE("w pair with a single factor") {
  const GeneratorPath path = drive_path();
  const SuperOp m = pinching_superop();
  InterceptedConfig cfg{m, path, 1, 1, 1e-11};
  const auto [w, wp] = w_pair(cfg);
  CHECK(proxy_norm(w - m * propagate(path, 0.0, 1.0, 1e-11)) < 1e-9);
  CHECK(proxy_norm(wp - m * expm_superop(path.eval(1.0), 1.0)) < 1e-12);
}

TEST_CASE("telescoping bound") {
  const GeneratorPath constant =
      GeneratorPath::constant(LindbladGenerator(pauli_x(), {}), 1.0);
  InterceptedConfig ccfg{pinching_superop(), constant, 8, 2, 1e-11};
  const auto [cd, cb] = telescoping_check(ccfg, 60);
  CHECK(cb == 0.0);
  CHECK(cd <= 1e-9);

  for (const GeneratorPath& path : {drive_path(), damped_path()}) {
    double prev_bound = -1.0;
    for (long m : {2L, 4L, 8L}) {
      InterceptedConfig cfg{pinching_superop(), path, 32 * m, m, 1e-9};
      const auto [dist, bound] = telescoping_check(cfg, 61 + m);
      CHECK(dist <= bound);
      if (prev_bound > 0) CHECK(bound == doctest::Approx(prev_bound / 2).epsilon(1e-12));
      prev_bound = bound;
    }
  }
}

TEST_CASE("zeno_limit_timedep with P = id is the plain propagator") {
  const GeneratorPath path = random_path(62);
  const SuperOp limit = zeno_limit_timedep(SuperOp::identity(2), path, 1e-10);
  CHECK(proxy_norm(limit - propagate(path, 0.0, 1.0, 1e-10)) < 2e-10);
}

TEST_CASE("zeno_limit_timedep freezes commutator-only paths") {
  const SuperOp p = pinching_superop();
  const GeneratorPath path = drive_path();
  CHECK(proxy_norm(zeno_limit_timedep(p, path, 1e-10) - p) < 1e-9);
}

TEST_CASE("zeno_limit_timedep rejects non-projections") {
  CHECK_THROWS_AS(zeno_limit_timedep(0.5 * SuperOp::identity(2), drive_path(), 1e-10),
                  ValidationError);
}

TEST_CASE("wprime_m reference cases") {
  const SuperOp p = pinching_superop();
  const GeneratorPath path = damped_path();
  const SuperOp w1 = wprime_m(p, path, 1);
  CHECK(proxy_norm(w1 - expm_superop(p * path.eval(1.0) * p, 1.0) * p) < 1e-12);

  std::mt19937_64 rng(63);
  const GeneratorPath constant = GeneratorPath::constant(random_gkls(2, 1, 0.8, rng), 1.0);
  const SuperOp m = pinching_superop();
  const SuperOp plp = expm_superop(m * constant.eval(0.5) * m, 1.0) * m;
  for (long mm : {1L, 4L, 16L}) CHECK(proxy_norm(wprime_m(m, constant, mm) - plp) < 1e-11);
}

TEST_CASE("wprime_m converges to the time-dependent limit") {
  const SuperOp p = pinching_superop();
  const GeneratorPath path = damped_path();
  const SuperOp limit = zeno_limit_timedep(p, path, 1e-11);
  const double d16 = proxy_norm(wprime_m(p, path, 16) - limit);
  const double d256 = proxy_norm(wprime_m(p, path, 256) - limit);
  CHECK(d256 <= d16 / 10);
}

TEST_CASE("reparameterize with the identity is the identity") {
  const GeneratorPath path = damped_path();
  const GeneratorPath same = reparameterize_path(path, {{0.0, 0.0}, {1.0, 1.0}});
  CHECK(same.keyframe_count() == path.keyframe_count());
  for (std::size_t i = 0; i < path.keyframe_count(); ++i)
    CHECK(std::abs(same.times()[i] - path.times()[i]) < 1e-12);
  std::mt19937_64 rng(64);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double t = unif(rng);
    CHECK(superop_dist(same.eval(t), path.eval(t)) < 1e-12);
  }
}

TEST_CASE("reparameterize at double speed") {
  const GeneratorPath path = damped_path();
  const GeneratorPath fast = reparameterize_path(path, {{0.0, 0.0}, {0.5, 1.0}});
  CHECK(fast.horizon() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(fast.lipschitz() == doctest::Approx(2.0 * path.lipschitz()).epsilon(1e-12));
  for (double t : {0.1, 0.2, 0.45}) CHECK(superop_dist(fast.eval(t), path.eval(2 * t)) < 1e-12);
}

TEST_CASE("reparameterize rejects bad nu") {
  const GeneratorPath path = damped_path();
  CHECK_THROWS_AS(reparameterize_path(path, {{0.0, 0.0}, {0.5, 0.8}, {1.0, 0.4}}),
                  ValidationError);  // non-monotone
  CHECK_THROWS_AS(reparameterize_path(path, {{0.0, 0.0}, {1.0, 0.7}}),
                  ValidationError);  // wrong endpoint
  CHECK_THROWS_AS(reparameterize_path(path, {{0.0, 0.2}, {1.0, 1.0}}),
                  ValidationError);  // nu(0) != 0
}

TEST_CASE("the full sweep survives a nonuniform reparameterization") {
  const GeneratorPath path = damped_path();
  const GeneratorPath warped =
      reparameterize_path(path, {{0.0, 0.0}, {0.5, 0.2}, {1.0, 1.0}});
  const SuperOp m = pinching_superop();
  const SpectralReport rep = spectrum_report(m, 0.05);
  const SuperOp p = riesz_contour(m, ContourSpec::around_one(rep.delta)).proj;
  const SuperOp limit = zeno_limit_timedep(p, warped, 1e-10);

  Matrix rho0(2, 2);
  rho0 << 0.5, 0.5, 0.5, 0.5;
  const Matrix target = limit.apply(rho0);

  double first = 0, last = 0;
  for (long n : {8L, 32L, 128L}) {
    InterceptedConfig cfg{m, warped, n, 1, 1e-10};
    const double err = trace_norm(intercepted_product(cfg).apply(rho0) - target);
    if (n == 8) first = err;
    last = err;
  }
  CHECK(last <= first / 5);
}
