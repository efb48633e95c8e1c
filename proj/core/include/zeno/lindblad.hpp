#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "zeno/superop.hpp"

namespace zeno {

/// GKLS data: ρ ↦ -i[H,ρ] + Σₖ (Vₖ ρ Vₖ† - ½{Vₖ†Vₖ, ρ}).
struct LindbladGenerator {
  int dim = 0;
  Matrix hamiltonian;
  std::vector<Matrix> jumps;

  LindbladGenerator(Matrix h, std::vector<Matrix> jump_ops);
  SuperOp to_superop() const;
};

/// Superoperator of the GKLS map for Hermitian H (1e-12) and jump operators.
SuperOp build_generator(const Matrix& h, const std::vector<Matrix>& jumps);

/// True iff A annihilates the trace functional (vec(1)†A = 0 within tol) and
/// e^{sA} is CP for s ∈ {0.1, 0.5, 1.0} by the Choi test. A sampled
/// sufficient check, not a decomposition into GKLS form.
bool check_generator(const SuperOp& a, double tol);

/// Lipschitz map t ↦ 𝓛ₜ stored as keyframed GKLS generators on [0, τ].
/// Evaluation interpolates the materialized superoperators linearly between
/// keyframes; convex combinations of GKLS generators are GKLS, so every
/// intermediate value is a valid generator.
class GeneratorPath {
 public:
  /// Keyframe times must be strictly increasing and start at 0; the horizon
  /// is the last keyframe time. An explicit lipschitz bound must dominate
  /// the computed per-segment slope bound.
  GeneratorPath(std::vector<std::pair<double, LindbladGenerator>> keyframes,
                std::optional<double> lipschitz_bound = std::nullopt);

  static GeneratorPath constant(const LindbladGenerator& g, double horizon);

  int dim() const { return dim_; }
  double horizon() const { return times_.back(); }
  std::size_t keyframe_count() const { return times_.size(); }
  const std::vector<double>& times() const { return times_; }
  const LindbladGenerator& keyframe(std::size_t i) const { return gens_[i]; }

  /// 𝓛ₜ for t ∈ [0, τ]; exact keyframe superoperators at keyframe times.
  SuperOp eval(double t) const;

  /// Same interpolation expressed as GKLS data: Hamiltonians combine
  /// linearly, jump lists concatenate with √λ weights.
  LindbladGenerator eval_generator(double t) const;

  /// Certified Lipschitz constant: max over segments of the upper
  /// 1→1-norm estimate of the slope, so that the upper estimate of
  /// ‖𝓛ₜ - 𝓛ₛ‖ never exceeds lipschitz() · |t-s|.
  double lipschitz() const { return lipschitz_; }

 private:
  std::size_t segment_of(double t) const;

  int dim_ = 0;
  std::vector<double> times_;
  std::vector<LindbladGenerator> gens_;
  std::vector<SuperOp> superops_;
  double lipschitz_ = 0.0;
};

/// max over segments of the certified slope bound (= path.lipschitz()).
double path_lipschitz(const GeneratorPath& path);

/// 𝓛ₜ (= path.eval(t)); throws for t outside [0, τ].
SuperOp path_eval(const GeneratorPath& path, double t);

}  // namespace zeno
