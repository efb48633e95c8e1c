#include "zeno/timedep.hpp"

#include <algorithm>
#include <cmath>

namespace zeno {

namespace detail {

namespace {
SuperOp midpoint_product(const std::function<SuperOp(double)>& gen, int dim, double s,
                         double t, long steps) {
  const double h = (t - s) / static_cast<double>(steps);
  SuperOp u = SuperOp::identity(dim);
  for (long k = 0; k < steps; ++k) {
    const double mid = s + (static_cast<double>(k) + 0.5) * h;
    u = expm_superop(gen(mid), h) * u;  // later factors compose on the left
  }
  return u;
}
}  // namespace

SuperOp propagate_map(const std::function<SuperOp(double)>& gen, int dim, double s,
                      double t, double tol) {
  if (tol <= 0) throw ValidationError("propagate: tol must be positive");
  if (t < s) throw ValidationError("propagate: t must be >= s");
  if (t == s) return SuperOp::identity(dim);

  long steps = 1;
  SuperOp current = midpoint_product(gen, dim, s, t, steps);
  while (steps <= (1L << 20)) {
    steps *= 2;
    SuperOp next = midpoint_product(gen, dim, s, t, steps);
    const double diff = proxy_norm(next - current);
    current = std::move(next);
    if (diff < tol) return current;
  }
  throw ConvergenceError("propagate: midpoint scheme not converged before 2^20 steps");
}

GeneratorPath unit_horizon(const GeneratorPath& path) {
  const double tau = path.horizon();
  if (tau == 1.0) return path;
  std::vector<std::pair<double, LindbladGenerator>> keyframes;
  keyframes.reserve(path.keyframe_count());
  for (std::size_t i = 0; i < path.keyframe_count(); ++i) {
    const LindbladGenerator& g = path.keyframe(i);
    std::vector<Matrix> jumps;
    jumps.reserve(g.jumps.size());
    for (const Matrix& v : g.jumps) jumps.push_back(std::sqrt(tau) * v);
    keyframes.emplace_back(path.times()[i] / tau,
                           LindbladGenerator(tau * g.hamiltonian, std::move(jumps)));
  }
  // Guard against roundoff in the rescaled endpoint.
  keyframes.back().first = 1.0;
  return GeneratorPath(std::move(keyframes));
}

}  // namespace detail

SuperOp propagate(const PropagatorRequest& req) {
  return propagate(req.path, req.s, req.t, req.tol);
}

SuperOp propagate(const GeneratorPath& path, double s, double t, double tol) {
  if (s < 0 || t > path.horizon() + 1e-12)
    throw ValidationError("propagate: [s,t] outside [0, horizon]");
  if (t < s) throw ValidationError("propagate: t must be >= s");
  return detail::propagate_map([&path](double r) { return path.eval(r); }, path.dim(), s,
                               std::min(t, path.horizon()), tol);
}

std::pair<double, double> piecewise_constant_bound(const GeneratorPath& path, double t, double s,
                                       double delta, std::uint64_t seed) {
  if (delta < 0) throw ValidationError("piecewise_constant_bound: delta must be >= 0");
  if (t < 0 || t + delta > path.horizon() + 1e-12)
    throw ValidationError("piecewise_constant_bound: [t, t+delta] outside [0, horizon]");
  if (s < 0 || s > path.horizon())
    throw ValidationError("piecewise_constant_bound: s outside [0, horizon]");

  const SuperOp approx = expm_superop(path.eval(s), delta);
  const SuperOp exact = propagate(path, t, t + delta, 1e-11);
  const double lhs = norm_1to1_estimate(exact - approx, 4, 16, seed).lower;
  const double rhs = path.lipschitz() * (delta * std::abs(t - s) + 0.5 * delta * delta);
  return {lhs, rhs};
}

namespace {

void validate_intercepted(const InterceptedConfig& cfg) {
  if (cfg.n < 1) throw ValidationError("intercepted config: n must be >= 1");
  if (cfg.m_coarse < 1 || cfg.m_coarse > cfg.n)
    throw ValidationError("intercepted config: need 1 <= m <= n");
  if (cfg.m.dim() != cfg.path.dim())
    throw ValidationError("intercepted config: dimension mismatch");
  if (cfg.tol <= 0) throw ValidationError("intercepted config: tol must be positive");
}

}  // namespace

SuperOp intercepted_product(const InterceptedConfig& cfg) {
  validate_intercepted(cfg);
  const double tau = cfg.path.horizon();
  const double factor_tol = cfg.tol / static_cast<double>(cfg.n);
  SuperOp u = SuperOp::identity(cfg.m.dim());
  for (long i = 1; i <= cfg.n; ++i) {
    const double lo = tau * static_cast<double>(i - 1) / static_cast<double>(cfg.n);
    const double hi = tau * static_cast<double>(i) / static_cast<double>(cfg.n);
    u = cfg.m * propagate(cfg.path, lo, hi, factor_tol) * u;
  }
  return u;
}

double theta_step(long i, long n, long m) {
  if (n < 1 || m < 1 || m > n) throw ValidationError("theta_step: need 1 <= m <= n");
  if (i < 1 || i > n) throw ValidationError("theta_step: need 1 <= i <= n");
  const long ceil_im_over_n = (i * m + n - 1) / n;
  return static_cast<double>(ceil_im_over_n) / static_cast<double>(m);
}

std::pair<SuperOp, SuperOp> w_pair(const InterceptedConfig& cfg) {
  validate_intercepted(cfg);
  const GeneratorPath unit = detail::unit_horizon(cfg.path);

  InterceptedConfig unit_cfg{cfg.m, unit, cfg.n, cfg.m_coarse, cfg.tol};
  SuperOp w = intercepted_product(unit_cfg);

  const double h = 1.0 / static_cast<double>(cfg.n);
  SuperOp wprime = SuperOp::identity(cfg.m.dim());
  for (long i = 1; i <= cfg.n; ++i) {
    const double theta = theta_step(i, cfg.n, cfg.m_coarse);
    wprime = cfg.m * expm_superop(unit.eval(theta), h) * wprime;
  }
  return {std::move(w), std::move(wprime)};
}

std::pair<double, double> telescoping_check(const InterceptedConfig& cfg,
                                            std::uint64_t seed) {
  const auto [w, wprime] = w_pair(cfg);
  const double dist = norm_1to1_estimate(w - wprime, 4, 16, seed).lower;
  const double lip = detail::unit_horizon(cfg.path).lipschitz();
  const double bound = 3.0 * lip / static_cast<double>(cfg.m_coarse);
  return {dist, bound};
}

SuperOp zeno_limit_timedep(const SuperOp& p, const GeneratorPath& path, double tol) {
  if (p.dim() != path.dim()) throw ValidationError("zeno_limit_timedep: dimension mismatch");
  if (proxy_norm(p * p - p) > 1e-8)
    throw ValidationError("zeno_limit_timedep: P not idempotent within 1e-8");
  const SuperOp u = detail::propagate_map(
      [&](double t) { return p * path.eval(t) * p; }, p.dim(), 0.0, path.horizon(), tol);
  return u * p;
}

SuperOp wprime_m(const SuperOp& p, const GeneratorPath& path, long m) {
  if (m < 1) throw ValidationError("wprime_m: m must be >= 1");
  if (p.dim() != path.dim()) throw ValidationError("wprime_m: dimension mismatch");
  const GeneratorPath unit = detail::unit_horizon(path);
  const double h = 1.0 / static_cast<double>(m);
  SuperOp u = SuperOp::identity(p.dim());
  for (long j = 1; j <= m; ++j) {
    const double tj = static_cast<double>(j) / static_cast<double>(m);
    u = expm_superop(p * unit.eval(tj) * p, h) * u;
  }
  return u * p;
}

GeneratorPath reparameterize_path(const GeneratorPath& path,
                                  const std::vector<std::pair<double, double>>& nu_keyframes) {
  if (nu_keyframes.size() < 2)
    throw ValidationError("reparameterize_path: nu needs at least two breakpoints");
  if (nu_keyframes.front().first != 0.0 || nu_keyframes.front().second != 0.0)
    throw ValidationError("reparameterize_path: nu must start at (0, 0)");
  const double tau = path.horizon();
  if (std::abs(nu_keyframes.back().second - tau) > 1e-12)
    throw ValidationError("reparameterize_path: nu must end at the path horizon");

  double nu_lipschitz = 0.0;
  for (std::size_t i = 0; i + 1 < nu_keyframes.size(); ++i) {
    const double dt = nu_keyframes[i + 1].first - nu_keyframes[i].first;
    const double dv = nu_keyframes[i + 1].second - nu_keyframes[i].second;
    if (dt <= 0)
      throw ValidationError("reparameterize_path: nu times must be strictly increasing");
    if (dv < 0) throw ValidationError("reparameterize_path: nu must be nondecreasing");
    nu_lipschitz = std::max(nu_lipschitz, dv / dt);
  }

  // Breakpoints: nu's own corners plus the preimages of the original
  // keyframe times, so the composed path is exactly piecewise linear
  // between the new keyframes.
  std::vector<double> breaks;
  for (const auto& [t, v] : nu_keyframes) breaks.push_back(t);
  for (std::size_t i = 0; i + 1 < nu_keyframes.size(); ++i) {
    const auto [a, va] = nu_keyframes[i];
    const auto [b, vb] = nu_keyframes[i + 1];
    if (vb <= va) continue;  // flat segment: composition is constant there
    for (double u : path.times())
      if (u > va && u < vb) breaks.push_back(a + (u - va) * (b - a) / (vb - va));
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end(),
                           [](double x, double y) { return std::abs(x - y) < 1e-14; }),
               breaks.end());

  auto nu_at = [&](double t) {
    std::size_t i = 0;
    while (i + 2 < nu_keyframes.size() && t >= nu_keyframes[i + 1].first) ++i;
    const auto [a, va] = nu_keyframes[i];
    const auto [b, vb] = nu_keyframes[i + 1];
    const double lambda = (t - a) / (b - a);
    return std::clamp(va + lambda * (vb - va), 0.0, tau);
  };

  std::vector<std::pair<double, LindbladGenerator>> keyframes;
  keyframes.reserve(breaks.size());
  for (double t : breaks) keyframes.emplace_back(t, path.eval_generator(nu_at(t)));
  return GeneratorPath(std::move(keyframes), nu_lipschitz * path.lipschitz());
}

}  // namespace zeno
