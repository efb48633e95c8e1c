#include "zeno/lindblad.hpp"

#include <cmath>

namespace zeno {

LindbladGenerator::LindbladGenerator(Matrix h, std::vector<Matrix> jump_ops)
    : dim(static_cast<int>(h.rows())), hamiltonian(std::move(h)), jumps(std::move(jump_ops)) {
  if (hamiltonian.rows() != hamiltonian.cols())
    throw ValidationError("LindbladGenerator: Hamiltonian not square");
  if (hermiticity_defect(hamiltonian) > 1e-12)
    throw ValidationError("LindbladGenerator: Hamiltonian not Hermitian within 1e-12");
  for (const Matrix& v : jumps)
    if (v.rows() != dim || v.cols() != dim)
      throw ValidationError("LindbladGenerator: jump operator dimension mismatch");
}

SuperOp LindbladGenerator::to_superop() const { return build_generator(hamiltonian, jumps); }

SuperOp build_generator(const Matrix& h, const std::vector<Matrix>& jumps) {
  const LindbladGenerator checked(h, jumps);  // validates hermiticity and shapes
  const int d = checked.dim;
  const Matrix id = Matrix::Identity(d, d);
  const Complex i_unit(0.0, 1.0);

  // -i[H, ρ]  →  -i (1 ⊗ H - Hᵀ ⊗ 1)
  Matrix rep = -i_unit * (kron(id, h) - kron(h.transpose(), id));
  for (const Matrix& v : jumps) {
    const Matrix vdv = v.adjoint() * v;
    // VρV† - ½{V†V, ρ}
    rep += kron(v.conjugate(), v) -
           0.5 * (kron(id, vdv) + kron(vdv.transpose(), id));
  }
  return SuperOp(std::move(rep));
}

bool check_generator(const SuperOp& a, double tol) {
  if (tol <= 0) throw ValidationError("check_generator: tol must be positive");
  const int d = a.dim();
  const Vector vec_id = vectorize(Matrix::Identity(d, d));
  const Eigen::RowVectorXcd row = vec_id.adjoint() * a.rep();
  if (row.cwiseAbs().maxCoeff() > tol) return false;

  for (double s : {0.1, 0.5, 1.0}) {
    const SuperOp e = expm_superop(a, s);
    const Matrix j = choi_matrix(e);
    if (hermiticity_defect(j) > tol) return false;
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (j + j.adjoint()));
    if (es.eigenvalues().minCoeff() < -tol) return false;
  }
  return true;
}

GeneratorPath::GeneratorPath(std::vector<std::pair<double, LindbladGenerator>> keyframes,
                             std::optional<double> lipschitz_bound) {
  if (keyframes.size() < 2)
    throw ValidationError("GeneratorPath: need at least two keyframes");
  if (keyframes.front().first != 0.0)
    throw ValidationError("GeneratorPath: first keyframe time must be 0");

  dim_ = keyframes.front().second.dim;
  times_.reserve(keyframes.size());
  gens_.reserve(keyframes.size());
  superops_.reserve(keyframes.size());
  for (auto& [t, g] : keyframes) {
    if (!times_.empty() && t <= times_.back())
      throw ValidationError("GeneratorPath: keyframe times must be strictly increasing");
    if (g.dim != dim_) throw ValidationError("GeneratorPath: keyframe dimension mismatch");
    times_.push_back(t);
    superops_.push_back(g.to_superop());
    gens_.push_back(std::move(g));
  }

  double lip = 0.0;
  for (std::size_t i = 0; i + 1 < times_.size(); ++i) {
    const double dt = times_[i + 1] - times_[i];
    lip = std::max(lip, norm_1to1_upper(superops_[i + 1] - superops_[i]) / dt);
  }
  if (lipschitz_bound) {
    if (*lipschitz_bound < lip - 1e-12 * (1.0 + lip))
      throw ValidationError("GeneratorPath: stated Lipschitz bound below the certified slope bound");
    lipschitz_ = *lipschitz_bound;
  } else {
    lipschitz_ = lip;
  }
}

GeneratorPath GeneratorPath::constant(const LindbladGenerator& g, double horizon) {
  if (horizon <= 0) throw ValidationError("GeneratorPath: horizon must be positive");
  std::vector<std::pair<double, LindbladGenerator>> kf;
  kf.emplace_back(0.0, g);
  kf.emplace_back(horizon, g);
  return GeneratorPath(std::move(kf));
}

std::size_t GeneratorPath::segment_of(double t) const {
  if (t < 0.0 || t > horizon() + 1e-15)
    throw ValidationError("GeneratorPath: time outside [0, horizon]");
  std::size_t i = 0;
  while (i + 2 < times_.size() && t >= times_[i + 1]) ++i;
  return i;
}

SuperOp GeneratorPath::eval(double t) const {
  const std::size_t i = segment_of(t);
  if (t == times_[i]) return superops_[i];
  if (t >= times_[i + 1]) return superops_[i + 1];
  const double lambda = (t - times_[i]) / (times_[i + 1] - times_[i]);
  return (1.0 - lambda) * superops_[i] + lambda * superops_[i + 1];
}

LindbladGenerator GeneratorPath::eval_generator(double t) const {
  const std::size_t i = segment_of(t);
  if (t == times_[i]) return gens_[i];
  if (t >= times_[i + 1]) return gens_[i + 1];
  const double lambda = (t - times_[i]) / (times_[i + 1] - times_[i]);

  Matrix h = (1.0 - lambda) * gens_[i].hamiltonian + lambda * gens_[i + 1].hamiltonian;
  std::vector<Matrix> jumps;
  jumps.reserve(gens_[i].jumps.size() + gens_[i + 1].jumps.size());
  for (const Matrix& v : gens_[i].jumps) jumps.push_back(std::sqrt(1.0 - lambda) * v);
  for (const Matrix& v : gens_[i + 1].jumps) jumps.push_back(std::sqrt(lambda) * v);
  return LindbladGenerator(std::move(h), std::move(jumps));
}

double path_lipschitz(const GeneratorPath& path) { return path.lipschitz(); }

SuperOp path_eval(const GeneratorPath& path, double t) { return path.eval(t); }

}  // namespace zeno
