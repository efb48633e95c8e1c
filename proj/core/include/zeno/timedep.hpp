#pragma once

#include <cstdint>
#include <functional>
#include <utility>

#include "zeno/lindblad.hpp"
#include "zeno/superop.hpp"

namespace zeno {

struct PropagatorRequest {
  GeneratorPath path;
  double s = 0.0;
  double t = 0.0;
  double tol = 1e-10;
};

/// Propagator T_[t,s] of the time-dependent master equation, built as a
/// product of midpoint-rule exponentials over a uniform grid with step
/// halving until successive results differ by < tol (proxy norm). Every
/// factor is a channel, so the result is one up to roundoff.
SuperOp propagate(const PropagatorRequest& req);
SuperOp propagate(const GeneratorPath& path, double s, double t, double tol);

/// Piecewise-constant approximation probe:
///   first  = rank-one lower estimate of ‖T_[t+δ,t] - e^{δ L_s}‖
///   second = L (δ|t-s| + δ²/2) with L the certified path Lipschitz bound.
/// The pair must satisfy first ≤ second.
std::pair<double, double> piecewise_constant_bound(const GeneratorPath& path, double t, double s,
                                       double delta, std::uint64_t seed = 0);

struct InterceptedConfig {
  SuperOp m;
  GeneratorPath path;
  long n = 1;         // interception count
  long m_coarse = 1;  // coarse subdivision for the W/W' constructions, ≤ n
  double tol = 1e-10;
};

/// Tₙ = ∏ᵢ M T_[iτ/n,(i-1)τ/n], time ordered (i = 1 applied first), with a
/// per-factor tolerance budget of tol/n.
SuperOp intercepted_product(const InterceptedConfig& cfg);

/// θ(i) = ⌈i·m/n⌉ / m in exact integer arithmetic; range {1/m, …, 1}.
double theta_step(long i, long n, long m);

/// The telescoping pair on the unit-normalized horizon:
///   W  = ∏ᵢ M T_[i/n,(i-1)/n]        (true propagators)
///   W' = ∏ᵢ M e^{(1/n) L_θ(i)}       (piecewise-constant generators)
std::pair<SuperOp, SuperOp> w_pair(const InterceptedConfig& cfg);

/// first = rank-one lower estimate of ‖W - W'‖, second = 3L/m with L the
/// certified Lipschitz bound of the unit-horizon path. first ≤ second must
/// hold.
std::pair<double, double> telescoping_check(const InterceptedConfig& cfg,
                                            std::uint64_t seed = 0);

/// Superoperator ρ₀ ↦ ρ̃(τ): propagates the projected generator family
/// t ↦ P L_t P from 0 to τ with the midpoint-exponential scheme at the
/// given tolerance, then composes with P on the right.
SuperOp zeno_limit_timedep(const SuperOp& p, const GeneratorPath& path, double tol);

/// W'(m) = ∏ⱼ e^{(1/m) P L_{j/m} P} P, time ordered, on the unit-normalized
/// horizon; converges to zeno_limit_timedep as m → ∞.
SuperOp wprime_m(const SuperOp& p, const GeneratorPath& path, long m);

/// Path evaluating to L_{ν(t)} for a piecewise-linear nondecreasing ν with
/// ν(0) = 0 and ν(τ') = τ, given as (t, ν(t)) breakpoints. The stated
/// Lipschitz bound is Lip(ν) · path.lipschitz().
GeneratorPath reparameterize_path(const GeneratorPath& path,
                                  const std::vector<std::pair<double, double>>& nu_keyframes);

namespace detail {

/// Midpoint-exponential propagator for an arbitrary superoperator-valued
/// generator family (used for projected generators, which need not be GKLS).
SuperOp propagate_map(const std::function<SuperOp(double)>& gen, int dim, double s,
                      double t, double tol);

/// Time rescaling onto horizon 1: s ↦ τ·L_{sτ}. Solutions match the
/// original path's; the certified Lipschitz bound becomes τ²·L.
GeneratorPath unit_horizon(const GeneratorPath& path);

}  // namespace detail

}  // namespace zeno
