#include "zeno/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace zeno {

namespace {

constexpr double kClusterRadius = 1e-8;   // eigenvalues this close to 1 count as peripheral
constexpr double kContourClearance = 1e-6;
constexpr double kQuadratureTol = 1e-10;
constexpr int kMaxNodes = 1 << 14;

std::vector<Complex> schur_eigenvalues(const Matrix& a) {
  Eigen::ComplexSchur<Matrix> schur(a, /*computeU=*/false);
  if (schur.info() != Eigen::Success)
    throw ConvergenceError("spectrum: Schur decomposition did not converge");
  std::vector<Complex> eig(a.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i) eig[i] = schur.matrixT()(i, i);
  return eig;
}

double distance_to_circle(Complex z, const ContourSpec& c) {
  return std::abs(std::abs(z - c.center) - c.radius);
}

// Equispaced trapezoidal rule for (1/2πi) ∮ (z id - A)⁻¹ dz on the circle,
// which for periodic analytic integrands converges geometrically in the
// node count.
Matrix contour_quadrature(const Matrix& a, const ContourSpec& c, int nodes) {
  const Eigen::Index n = a.rows();
  Matrix acc = Matrix::Zero(n, n);
  for (int j = 0; j < nodes; ++j) {
    const double phi = 2.0 * M_PI * j / nodes;
    const Complex e(std::cos(phi), std::sin(phi));
    const Complex z = c.center + c.radius * e;
    Matrix shifted = -a;
    shifted.diagonal().array() += z;
    const Matrix resolvent = shifted.partialPivLu().solve(Matrix::Identity(n, n));
    acc += (c.radius * e / static_cast<double>(nodes)) * resolvent;
  }
  return acc;
}

RieszProjector make_projector(SuperOp p, ProjectorMethod method, const SuperOp& source) {
  const double defect = proxy_norm(p * p - p);
  if (defect > 1e-8)
    throw ConvergenceError("RieszProjector: idempotency defect above 1e-8");
  if (proxy_norm(p * source - source * p) > 1e-8)
    throw ConvergenceError("RieszProjector: projector does not commute with its source");
  return RieszProjector{std::move(p), defect, method};
}

}  // namespace

ContourSpec ContourSpec::around_one(double delta, int nodes) {
  if (delta < 0 || delta >= 1) throw ValidationError("ContourSpec: delta must be in [0,1)");
  return ContourSpec{Complex(1.0, 0.0), 0.5 * (1.0 - delta), nodes};
}

ContourSpec ContourSpec::around_rest(double delta, int nodes) {
  if (delta < 0 || delta >= 1) throw ValidationError("ContourSpec: delta must be in [0,1)");
  return ContourSpec{Complex(0.0, 0.0), 0.5 * (1.0 + delta), nodes};
}

SpectralReport spectrum_report(const SuperOp& m, double gap_min) {
  if (gap_min <= 0 || gap_min >= 1)
    throw ValidationError("spectrum_report: gap_min must be in (0,1)");

  SpectralReport rep;
  rep.gap_min = gap_min;
  rep.eigenvalues = schur_eigenvalues(m.rep());
  std::sort(rep.eigenvalues.begin(), rep.eigenvalues.end(),
            [](Complex a, Complex b) { return std::abs(a) > std::abs(b); });

  bool exact_one = false;
  for (Complex ev : rep.eigenvalues) {
    if (std::abs(ev - 1.0) <= kClusterRadius) {
      ++rep.peripheral_multiplicity;
      if (std::abs(ev - 1.0) <= 1e-10) exact_one = true;
    } else {
      rep.delta = std::max(rep.delta, std::abs(ev));
    }
  }
  rep.gap_ok = exact_one && rep.delta < 1.0 - gap_min;
  return rep;
}

RieszProjector riesz_contour(const SuperOp& a, const ContourSpec& contour) {
  if (contour.radius <= 0) throw ValidationError("riesz_contour: radius must be positive");
  if (contour.nodes < 16) throw ValidationError("riesz_contour: need at least 16 nodes");

  for (Complex ev : schur_eigenvalues(a.rep()))
    if (distance_to_circle(ev, contour) < kContourClearance)
      throw ValidationError("riesz_contour: eigenvalue within 1e-6 of the contour circle");

  int nodes = contour.nodes;
  Matrix current = contour_quadrature(a.rep(), contour, nodes);
  bool converged = false;
  while (nodes < kMaxNodes) {
    nodes *= 2;
    Matrix next = contour_quadrature(a.rep(), contour, nodes);
    const double diff = proxy_norm(SuperOp(next - current));
    current = std::move(next);
    if (diff < kQuadratureTol) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw ConvergenceError("riesz_contour: quadrature not converged at 2^14 nodes");

  return make_projector(SuperOp(std::move(current)), ProjectorMethod::contour, a);
}

namespace {

// Plane rotation [cs, sn; -conj(sn), cs] with real cs mapping (f,g) to (r,0).
void complex_givens(Complex f, Complex g, double& cs, Complex& sn) {
  if (std::abs(g) == 0.0) {
    cs = 1.0;
    sn = 0.0;
    return;
  }
  if (std::abs(f) == 0.0) {
    cs = 0.0;
    sn = std::conj(g) / std::abs(g);
    return;
  }
  const double denom = std::hypot(std::abs(f), std::abs(g));
  cs = std::abs(f) / denom;
  sn = (f / std::abs(f)) * std::conj(g) / denom;
}

// Swap the adjacent diagonal entries k, k+1 of the upper triangular T by a
// unitary similarity, accumulating it into Q.
void swap_schur_entries(Matrix& t, Matrix& q, Eigen::Index k) {
  const Complex t11 = t(k, k);
  const Complex t12 = t(k, k + 1);
  const Complex t22 = t(k + 1, k + 1);
  double cs;
  Complex sn;
  complex_givens(t12, t22 - t11, cs, sn);

  const Eigen::Index n = t.rows();
  // rows k, k+1 from the left with R, columns with R†
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex a = t(k, j), b = t(k + 1, j);
    t(k, j) = cs * a + sn * b;
    t(k + 1, j) = -std::conj(sn) * a + cs * b;
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex a = t(i, k), b = t(i, k + 1);
    t(i, k) = cs * a + std::conj(sn) * b;
    t(i, k + 1) = -sn * a + cs * b;
    const Complex qa = q(i, k), qb = q(i, k + 1);
    q(i, k) = cs * qa + std::conj(sn) * qb;
    q(i, k + 1) = -sn * qa + cs * qb;
  }
  t(k + 1, k) = 0.0;
}

// Solve T11 X - X T22 = C for upper triangular T11, T22, by forward
// column substitution.
Matrix triangular_sylvester(const Matrix& t11, const Matrix& t22, const Matrix& c) {
  const Eigen::Index p = t11.rows();
  const Eigen::Index q = t22.rows();
  Matrix x = Matrix::Zero(p, q);
  for (Eigen::Index j = 0; j < q; ++j) {
    Vector rhs = c.col(j);
    for (Eigen::Index i = 0; i < j; ++i) rhs += x.col(i) * t22(i, j);
    Matrix shifted = t11;
    shifted.diagonal().array() -= t22(j, j);
    x.col(j) = shifted.triangularView<Eigen::Upper>().solve(rhs);
  }
  return x;
}

}  // namespace

RieszProjector riesz_schur(const SuperOp& a, Complex cluster_center, double cluster_radius) {
  if (cluster_radius <= 0) throw ValidationError("riesz_schur: radius must be positive");
  Eigen::ComplexSchur<Matrix> schur(a.rep(), /*computeU=*/true);
  if (schur.info() != Eigen::Success)
    throw ConvergenceError("riesz_schur: Schur decomposition did not converge");
  Matrix t = schur.matrixT();
  Matrix q = schur.matrixU();
  const Eigen::Index n = t.rows();

  auto in_cluster = [&](Complex ev) { return std::abs(ev - cluster_center) <= cluster_radius; };

  // Separation between the cluster and the rest controls the Sylvester solve.
  double min_sep = std::numeric_limits<double>::infinity();
  Eigen::Index cluster_size = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (in_cluster(t(i, i))) ++cluster_size;
    for (Eigen::Index j = 0; j < n; ++j)
      if (in_cluster(t(i, i)) != in_cluster(t(j, j)))
        min_sep = std::min(min_sep, std::abs(t(i, i) - t(j, j)));
  }
  if (cluster_size > 0 && cluster_size < n && min_sep < 1e-8)
    throw ConvergenceError("riesz_schur: cluster/rest separation below 1e-8");

  // Selection sort on the diagonal: bubble each cluster eigenvalue to the front.
  for (Eigen::Index target = 0; target < cluster_size; ++target) {
    Eigen::Index src = target;
    while (src < n && !in_cluster(t(src, src))) ++src;
    for (Eigen::Index k = src; k > target; --k) swap_schur_entries(t, q, k - 1);
  }

  Matrix p_schur = Matrix::Zero(n, n);
  if (cluster_size == n) {
    p_schur = Matrix::Identity(n, n);
  } else if (cluster_size > 0) {
    const Matrix t11 = t.topLeftCorner(cluster_size, cluster_size);
    const Matrix t22 = t.bottomRightCorner(n - cluster_size, n - cluster_size);
    const Matrix t12 = t.topRightCorner(cluster_size, n - cluster_size);
    p_schur.topLeftCorner(cluster_size, cluster_size) =
        Matrix::Identity(cluster_size, cluster_size);
    p_schur.topRightCorner(cluster_size, n - cluster_size) =
        triangular_sylvester(t11, t22, t12);
  }

  return make_projector(SuperOp(q * p_schur * q.adjoint()), ProjectorMethod::schur, a);
}

RieszProjector power_limit_projector(const SuperOp& m, double tol, int max_iter) {
  if (tol <= 0) throw ValidationError("power_limit_projector: tol must be positive");
  if (max_iter < 1) throw ValidationError("power_limit_projector: max_iter must be >= 1");

  SuperOp current = m;
  for (int it = 0; it < max_iter; ++it) {
    SuperOp next = current * current;
    const double diff = proxy_norm(next - current);
    current = std::move(next);
    if (diff < tol)
      return make_projector(std::move(current), ProjectorMethod::power, m);
  }
  throw ConvergenceError(
      "power_limit_projector: no convergence in " + std::to_string(max_iter) +
      " squarings (gap failure or peripheral spectrum away from 1)");
}

double epsilon_window(const SuperOp& m, const SuperOp& l, double t_max, int grid,
                      double gap_min) {
  if (t_max <= 0) throw ValidationError("epsilon_window: t_max must be positive");
  if (grid < 1) throw ValidationError("epsilon_window: grid must be >= 1");

  const SpectralReport rep = spectrum_report(m, gap_min);
  if (!rep.gap_ok) return 0.0;
  const ContourSpec big = ContourSpec::around_one(rep.delta);
  const ContourSpec small = ContourSpec::around_rest(rep.delta);

  auto separated = [&](double t) {
    const Matrix mt = m.rep() * expm(t * l.rep());
    for (Complex ev : schur_eigenvalues(mt)) {
      const bool inside_big = std::abs(ev - big.center) < big.radius;
      const bool inside_small = std::abs(ev - small.center) < small.radius;
      if (!inside_big && !inside_small) return false;
      if (distance_to_circle(ev, big) <= kContourClearance) return false;
      if (distance_to_circle(ev, small) <= kContourClearance) return false;
    }
    return true;
  };

  if (!separated(0.0)) return 0.0;
  double eps = 0.0;
  for (int k = 1; k <= grid; ++k) {
    const double t = t_max * k / grid;
    if (!separated(t)) break;
    eps = t;
  }
  return eps;
}

SuperOp projector_derivative(const SuperOp& m, const SuperOp& l, double h) {
  if (h <= 0) throw ValidationError("projector_derivative: h must be positive");
  const SpectralReport rep = spectrum_report(m, 0.05);
  if (!rep.gap_ok)
    throw ValidationError("projector_derivative: M fails the gap condition");
  const double eps = epsilon_window(m, l, std::max(2.0 * h, 1e-3), 64);
  if (eps < 2.0 * h)
    throw ValidationError("projector_derivative: admissible window below 2h");

  const ContourSpec big = ContourSpec::around_one(rep.delta);
  const SuperOp m_plus(m.rep() * expm(h * l.rep()));
  const SuperOp m_minus(m.rep() * expm(-h * l.rep()));
  const SuperOp p_plus = riesz_contour(m_plus, big).proj;
  const SuperOp p_minus = riesz_contour(m_minus, big).proj;
  return (1.0 / (2.0 * h)) * (p_plus - p_minus);
}

double resolvent_sup(const SuperOp& m, const SuperOp& l, const ContourSpec& contour,
                     int t_grid, int n) {
  if (t_grid < 1) throw ValidationError("resolvent_sup: t_grid must be >= 1");
  if (n < 1) throw ValidationError("resolvent_sup: n must be >= 1");

  const Eigen::Index side = m.side();
  double sup = 0.0;
  for (int j = 0; j <= t_grid; ++j) {
    const double tau = static_cast<double>(j) / (static_cast<double>(t_grid) * n);
    const Matrix mt = m.rep() * expm(tau * l.rep());
    for (Complex ev : schur_eigenvalues(mt))
      if (distance_to_circle(ev, contour) < kContourClearance)
        throw ValidationError("resolvent_sup: eigenvalue within 1e-6 of the contour");
    for (int k = 0; k < contour.nodes; ++k) {
      const double phi = 2.0 * M_PI * k / contour.nodes;
      const Complex z = contour.center + contour.radius * Complex(std::cos(phi), std::sin(phi));
      Matrix shifted = -mt;
      shifted.diagonal().array() += z;
      const Matrix resolvent = shifted.partialPivLu().solve(Matrix::Identity(side, side));
      sup = std::max(sup, proxy_norm(SuperOp(resolvent)));
    }
  }
  return sup;
}

}  // namespace zeno
