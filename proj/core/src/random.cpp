#include "zeno/random.hpp"

#include <cmath>

#include "zeno/lindblad.hpp"
#include "zeno/spectral.hpp"
#include "zeno/superop.hpp"

namespace zeno {

Matrix random_ginibre(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
  return m;
}

Vector random_unit_vector(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(d);
  for (int i = 0; i < d; ++i) v(i) = Complex(gauss(rng), gauss(rng));
  const double n = v.norm();
  return n > 0 ? Vector(v / n) : Vector::Unit(d, 0);
}

Matrix random_unitary(int d, std::mt19937_64& rng) {
  const Matrix g = random_ginibre(d, d, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase ambiguity so the distribution is Haar.
  for (int j = 0; j < d; ++j) {
    const Complex rjj = r(j, j);
    if (std::abs(rjj) > 0) q.col(j) *= rjj / std::abs(rjj);
  }
  return q;
}

Matrix random_hermitian(int d, double scale, std::mt19937_64& rng) {
  const Matrix g = random_ginibre(d, d, rng);
  return scale * 0.5 * (g + g.adjoint());
}

Matrix random_density(int d, std::mt19937_64& rng) {
  const Matrix g = random_ginibre(d, d, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  // Symmetrize away the roundoff so the DensityMatrix invariants hold.
  rho = 0.5 * (rho + rho.adjoint());
  rho /= rho.trace().real();
  return rho;
}

KrausSet random_channel_kraus(int d, int kraus_count, std::mt19937_64& rng) {
  if (kraus_count < 1) throw ValidationError("random_channel_kraus: need >= 1 Kraus op");
  // Columns of a random isometry V: C^d -> C^(kd), split into k blocks.
  const Matrix g = random_ginibre(d * kraus_count, d, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  const Matrix v = Matrix(qr.householderQ()).leftCols(d);
  std::vector<Matrix> ops;
  ops.reserve(kraus_count);
  for (int k = 0; k < kraus_count; ++k) ops.push_back(v.middleRows(k * d, d));
  return KrausSet(d, std::move(ops), KrausSet::Kind::channel);
}

SuperOp random_superop(int d, double scale, std::mt19937_64& rng) {
  return SuperOp(scale * random_ginibre(d * d, d * d, rng));
}

namespace {

// Pinching in the basis of U, then a partial depolarization: spectrum
// {1} ∪ {1-lambda (d-1 times)} ∪ {0}, all rotated unitarily.
SuperOp pinch_depolarize(int d, double lambda, const Matrix& u) {
  const Eigen::Index side = static_cast<Eigen::Index>(d) * d;
  Matrix pinch = Matrix::Zero(side, side);
  for (int i = 0; i < d; ++i) {
    const Matrix e = u.col(i) * u.col(i).adjoint();
    pinch += kron(e.conjugate(), e);
  }
  const Matrix max_mixed = Matrix::Identity(d, d) / static_cast<double>(d);
  const Vector vec_id = vectorize(Matrix::Identity(d, d));
  const Matrix depol = vectorize(max_mixed) * vec_id.adjoint();
  const Matrix mix = (1.0 - lambda) * Matrix::Identity(side, side) + lambda * depol;
  return SuperOp(pinch * mix);
}

}  // namespace

SuperOp random_gapped_channel(int d, double delta_max, std::mt19937_64& rng) {
  if (delta_max <= 0 || delta_max >= 1)
    throw ValidationError("random_gapped_channel: delta_max must be in (0,1)");
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int attempt = 0; attempt < 64; ++attempt) {
    const double delta0 = delta_max * (0.3 + 0.6 * unif(rng));
    const Matrix u = random_unitary(d, rng);
    const SuperOp base = pinch_depolarize(d, 1.0 - delta0, u);
    const SuperOp noise = kraus_to_superop(random_channel_kraus(d, 2, rng));
    const double eta = 0.15 * unif(rng);
    const SuperOp m = (1.0 - eta) * base + eta * noise;

    const SpectralReport rep = spectrum_report(m, 0.05);
    if (rep.gap_ok && rep.delta <= delta_max) return m;
  }
  throw ConvergenceError("random_gapped_channel: no gapped sample after 64 attempts");
}

SuperOp random_gapped_operation(int d, double delta_max, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  if (unif(rng) < 0.5) return random_gapped_channel(d, delta_max, rng);

  // Single-Kraus contraction U diag(1, c₂, …, c_d) U†: trace-non-increasing,
  // eigenvalue 1 simple, everything else of magnitude ≤ delta_max.
  const Matrix u = random_unitary(d, rng);
  Vector diag(d);
  diag(0) = 1.0;
  for (int i = 1; i < d; ++i) {
    const double r = delta_max * (0.2 + 0.8 * unif(rng));
    const double phase = 2.0 * M_PI * unif(rng);
    diag(i) = r * Complex(std::cos(phase), std::sin(phase));
  }
  const Matrix k = u * diag.asDiagonal() * u.adjoint();
  return kraus_to_superop(KrausSet(d, {k}, KrausSet::Kind::operation));
}

LindbladGenerator random_gkls(int d, int jumps, double scale, std::mt19937_64& rng) {
  Matrix h = random_hermitian(d, scale, rng);
  std::vector<Matrix> vs;
  vs.reserve(jumps);
  for (int k = 0; k < jumps; ++k) vs.push_back(scale * 0.5 * random_ginibre(d, d, rng));
  return LindbladGenerator(std::move(h), std::move(vs));
}

}  // namespace zeno
