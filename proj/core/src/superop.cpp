#include "zeno/superop.hpp"

#include <cmath>
#include <random>

#include "zeno/random.hpp"

namespace zeno {

namespace {

// side of a superoperator matrix must be a perfect square
int hilbert_dim_from_side(Eigen::Index side) {
  const int d = static_cast<int>(std::llround(std::sqrt(static_cast<double>(side))));
  if (d < 1 || static_cast<Eigen::Index>(d) * d != side) {
    throw ValidationError("SuperOp: matrix side " + std::to_string(side) +
                          " is not a perfect square");
  }
  return d;
}

}  // namespace

double max_abs(const Matrix& x) {
  if (x.size() == 0) return 0.0;
  return x.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const Matrix& x) { return max_abs(x - x.adjoint()); }

bool is_finite(const Matrix& x) { return x.allFinite(); }

Vector vectorize(const Matrix& x) {
  if (x.rows() != x.cols()) throw ValidationError("vectorize: matrix not square");
  return x.reshaped();  // Eigen reshaping is column-major = column stacking
}

Matrix devectorize(const Vector& v) {
  const int d = hilbert_dim_from_side(v.size());
  return v.reshaped(d, d);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

SuperOp::SuperOp(Matrix rep) : rep_(std::move(rep)) {
  if (rep_.rows() != rep_.cols()) throw ValidationError("SuperOp: matrix not square");
  dim_ = hilbert_dim_from_side(rep_.rows());
  if (!is_finite(rep_)) throw ValidationError("SuperOp: non-finite entries");
}

SuperOp SuperOp::identity(int dim) {
  return SuperOp(Matrix::Identity(static_cast<Eigen::Index>(dim) * dim,
                                  static_cast<Eigen::Index>(dim) * dim));
}

SuperOp SuperOp::zero(int dim) {
  return SuperOp(Matrix::Zero(static_cast<Eigen::Index>(dim) * dim,
                              static_cast<Eigen::Index>(dim) * dim));
}

Matrix SuperOp::apply(const Matrix& x) const {
  if (x.rows() != dim_ || x.cols() != dim_)
    throw ValidationError("SuperOp::apply: operand dimension mismatch");
  return devectorize(rep_ * vectorize(x));
}

SuperOp SuperOp::adjoint() const { return SuperOp(rep_.adjoint()); }

namespace {
void require_same_dim(const SuperOp& a, const SuperOp& b, const char* what) {
  if (a.dim() != b.dim())
    throw ValidationError(std::string(what) + ": dimension mismatch");
}
}  // namespace

SuperOp operator*(const SuperOp& a, const SuperOp& b) {
  require_same_dim(a, b, "SuperOp composition");
  return SuperOp(a.rep() * b.rep());
}

SuperOp operator+(const SuperOp& a, const SuperOp& b) {
  require_same_dim(a, b, "SuperOp sum");
  return SuperOp(a.rep() + b.rep());
}

SuperOp operator-(const SuperOp& a, const SuperOp& b) {
  require_same_dim(a, b, "SuperOp difference");
  return SuperOp(a.rep() - b.rep());
}

SuperOp operator*(Complex c, const SuperOp& a) { return SuperOp(c * a.rep()); }
SuperOp operator*(double c, const SuperOp& a) { return SuperOp(c * a.rep()); }

SuperOp pow(const SuperOp& a, long n) {
  if (n < 0) throw ValidationError("pow: negative exponent");
  Matrix acc = Matrix::Identity(a.side(), a.side());
  Matrix base = a.rep();
  long k = n;
  while (k > 0) {
    if (k & 1) acc = acc * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return SuperOp(std::move(acc));
}

DensityMatrix::DensityMatrix(Matrix rho) : rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols()) throw ValidationError("DensityMatrix: not square");
  if (!is_finite(rho_)) throw ValidationError("DensityMatrix: non-finite entries");
  if (hermiticity_defect(rho_) > 1e-12)
    throw ValidationError("DensityMatrix: not Hermitian within 1e-12");
  if (std::abs(rho_.trace() - Complex(1.0, 0.0)) > 1e-12)
    throw ValidationError("DensityMatrix: trace differs from 1 by more than 1e-12");
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho_ + rho_.adjoint()));
  if (es.eigenvalues().minCoeff() < -1e-12)
    throw ValidationError("DensityMatrix: negative eigenvalue below -1e-12");
}

KrausSet::KrausSet(int dim_in, std::vector<Matrix> ops_in, Kind kind_in)
    : dim(dim_in), ops(std::move(ops_in)), kind(kind_in) {
  if (dim < 1) throw ValidationError("KrausSet: dimension must be >= 1");
  Matrix sum = Matrix::Zero(dim, dim);
  for (const Matrix& k : ops) {
    if (k.rows() != dim || k.cols() != dim)
      throw ValidationError("KrausSet: Kraus operator dimension mismatch");
    if (!is_finite(k)) throw ValidationError("KrausSet: non-finite Kraus operator");
    sum += k.adjoint() * k;
  }
  if (kind == Kind::channel) {
    if (max_abs(sum - Matrix::Identity(dim, dim)) > 1e-10)
      throw ValidationError("KrausSet: completeness sum differs from identity (not a channel)");
  } else {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (sum + sum.adjoint()));
    if (es.eigenvalues().maxCoeff() > 1.0 + 1e-10)
      throw ValidationError("KrausSet: completeness sum exceeds identity (not trace-non-increasing)");
  }
}

SuperOp kraus_to_superop(const KrausSet& k) {
  const Eigen::Index side = static_cast<Eigen::Index>(k.dim) * k.dim;
  Matrix rep = Matrix::Zero(side, side);
  for (const Matrix& op : k.ops) rep += kron(op.conjugate(), op);
  return SuperOp(std::move(rep));
}

Matrix choi_matrix(const SuperOp& t) {
  const int d = t.dim();
  Matrix j = Matrix::Zero(static_cast<Eigen::Index>(d) * d, static_cast<Eigen::Index>(d) * d);
  for (int i = 0; i < d; ++i) {
    for (int jj = 0; jj < d; ++jj) {
      // T(E_ij) is the devectorized column of the representation at vec index i + j*d
      const Matrix tij = devectorize(t.rep().col(i + jj * d));
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) j(a * d + i, b * d + jj) += tij(a, b);
    }
  }
  return j;
}

MapClassification classify_map(const SuperOp& t, double tol) {
  if (tol <= 0) throw ValidationError("classify_map: tol must be positive");
  MapClassification out;
  const int d = t.dim();
  const Matrix j = choi_matrix(t);

  out.hermiticity_preserving = hermiticity_defect(j) <= tol;
  if (out.hermiticity_preserving) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (j + j.adjoint()));
    out.cp = es.eigenvalues().minCoeff() >= -tol;
  }

  // The trace functional is the fixed left vector vec(1)†.
  const Vector vec_id = vectorize(Matrix::Identity(d, d));
  const Eigen::RowVectorXcd row = vec_id.adjoint() * t.rep() - vec_id.adjoint();
  out.trace_preserving = row.cwiseAbs().maxCoeff() <= tol;

  // Trace-non-increasing: the dual image of 1 must be ≤ 1.
  const Matrix dual_id = devectorize(t.rep().adjoint() * vec_id);
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (dual_id + dual_id.adjoint()));
  out.trace_nonincreasing = es.eigenvalues().maxCoeff() <= 1.0 + tol;

  return out;
}

SuperOp expm_superop(const SuperOp& a, double t) {
  if (!std::isfinite(t)) throw ValidationError("expm_superop: non-finite time");
  const Matrix scaled = t * a.rep();
  const double norm1 = scaled.size() == 0 ? 0.0 : scaled.cwiseAbs().colwise().sum().maxCoeff();
  if (norm1 > 1e4)
    throw ValidationError("expm_superop: ||tA||_1 = " + std::to_string(norm1) +
                          " exceeds the 1e4 overflow guard");
  return SuperOp(expm(scaled));
}

double proxy_norm(const SuperOp& t) {
  if (t.side() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(t.rep().adjoint() * t.rep());
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

double trace_norm(const Matrix& x) {
  if (x.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(x);
  return svd.singularValues().sum();
}

double norm_1to1_upper(const SuperOp& t) {
  return std::sqrt(static_cast<double>(t.dim())) * proxy_norm(t);
}

NormEstimate norm_1to1_estimate(const SuperOp& t, int restarts, int iters,
                                std::uint64_t seed) {
  if (restarts < 1 || iters < 1)
    throw ValidationError("norm_1to1_estimate: restarts and iters must be >= 1");

  const int d = t.dim();
  std::mt19937_64 rng(seed);
  double best = 0.0;

  for (int r = 0; r < restarts; ++r) {
    Vector x = random_unit_vector(d, rng);
    // Odd restarts begin from a diagonal rank-one |x⟩⟨x|; for completely
    // positive maps those already realize the norm.
    Vector y = (r % 2 == 1) ? x : random_unit_vector(d, rng);

    for (int it = 0; it < iters; ++it) {
      const Matrix z = t.apply(x * y.adjoint());
      Eigen::JacobiSVD<Matrix> svd(z, Eigen::ComputeThinU | Eigen::ComputeThinV);
      best = std::max(best, svd.singularValues().sum());
      if (svd.singularValues().maxCoeff() < 1e-300) break;  // T(|x⟩⟨y|) ≈ 0, ascent stuck

      // Polar factor U of z turns the trace norm into the linear functional
      // tr(U† T(|x⟩⟨y|)) = y† W† x with W = devec(T† vec U). Alternately
      // maximizing that functional over unit x and y is power iteration on W.
      const Matrix u = svd.matrixU() * svd.matrixV().adjoint();
      Matrix w = devectorize(t.rep().adjoint() * vectorize(u));
      Vector wx = w * y;
      if (wx.norm() > 1e-300) x = wx / wx.norm();

      const Matrix z2 = t.apply(x * y.adjoint());
      Eigen::JacobiSVD<Matrix> svd2(z2, Eigen::ComputeThinU | Eigen::ComputeThinV);
      best = std::max(best, svd2.singularValues().sum());
      const Matrix u2 = svd2.matrixU() * svd2.matrixV().adjoint();
      w = devectorize(t.rep().adjoint() * vectorize(u2));
      Vector wy = w.adjoint() * x;
      if (wy.norm() > 1e-300) y = wy / wy.norm();
    }
  }

  NormEstimate est;
  est.lower = best;
  est.upper = norm_1to1_upper(t);
  est.lower_method = "rank1_ascent";
  est.upper_method = "sqrt_d_sigma_max";
  return est;
}

double contraction_bound(const SuperOp& t) {
  const Matrix j = choi_matrix(t);
  if (hermiticity_defect(j) <= 1e-10) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (j + j.adjoint()));
    if (es.eigenvalues().minCoeff() >= -1e-10) {
      // CP case: the induced trace norm equals ‖T*(1)‖_∞.
      const Vector vec_id = vectorize(Matrix::Identity(t.dim(), t.dim()));
      const Matrix dual_id = devectorize(t.rep().adjoint() * vec_id);
      Eigen::SelfAdjointEigenSolver<Matrix> es2(0.5 * (dual_id + dual_id.adjoint()));
      return std::max(0.0, es2.eigenvalues().maxCoeff());
    }
  }
  return norm_1to1_upper(t);
}

}  // namespace zeno
