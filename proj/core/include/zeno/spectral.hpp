#pragma once

#include <vector>

#include "zeno/superop.hpp"

namespace zeno {

/// Eigenvalue layout of a quantum operation against the gap condition
/// spec(M) ⊆ {1} ∪ D_δ with δ < 1.
struct SpectralReport {
  std::vector<Complex> eigenvalues;  // sorted by decreasing magnitude
  double delta = 0.0;                // max magnitude outside the 1-cluster
  int peripheral_multiplicity = 0;   // eigenvalues within 1e-8 of 1
  bool gap_ok = false;
  double gap_min = 0.0;              // threshold the report was made for
};

SpectralReport spectrum_report(const SuperOp& m, double gap_min);

/// Circle used for resolvent integrals and spectrum separation.
struct ContourSpec {
  Complex center{0.0, 0.0};
  double radius = 0.0;
  int nodes = 16;

  /// Γ: center 1, radius (1-δ)/2 — encloses only the eigenvalue-1 cluster.
  static ContourSpec around_one(double delta, int nodes = 16);
  /// γ: center 0, radius (1+δ)/2 — encloses the rest of the spectrum.
  static ContourSpec around_rest(double delta, int nodes = 16);
};

enum class ProjectorMethod { contour, schur, power };

struct RieszProjector {
  SuperOp proj;
  double idempotency_defect = 0.0;  // proxy norm of P² - P
  ProjectorMethod method = ProjectorMethod::contour;
};

/// P = (1/2πi) ∮ (z id - A)⁻¹ dz over the circle, by trapezoidal quadrature
/// with node doubling until successive results differ by < 1e-10 (proxy
/// norm) or 2¹⁴ nodes are reached. Rejects eigenvalues within 1e-6 of the
/// contour.
RieszProjector riesz_contour(const SuperOp& a, const ContourSpec& contour);

/// Spectral projector onto the eigenvalues inside the disk
/// |z - cluster_center| ≤ cluster_radius, via an ordered Schur form and a
/// triangular Sylvester solve for the coupling block. Independent of the
/// quadrature route.
RieszProjector riesz_schur(const SuperOp& a, Complex cluster_center, double cluster_radius);

/// P = lim Mⁿ by repeated squaring until successive iterates differ by
/// < tol in proxy norm. Requires a gapped quantum operation.
RieszProjector power_limit_projector(const SuperOp& m, double tol, int max_iter);

/// Largest grid point ε ≤ t_max such that for every grid time t ≤ ε all
/// eigenvalues of M e^{tL} are strictly inside Γ or strictly inside γ
/// (clearance 1e-6 from both circles), with Γ, γ built from the spectrum of
/// M at gap_min. Returns 0 if t = 0 or the first grid point already fails.
/// A grid estimate: a lower bound for the true admissible window.
double epsilon_window(const SuperOp& m, const SuperOp& l, double t_max, int grid,
                      double gap_min = 0.05);

/// P' = d/dt P_t at t = 0 by central differences (P_h - P_{-h})/(2h), with
/// P_{±h} the contour projectors of M e^{±hL}. Requires the grid-estimated
/// window to cover 2h.
SuperOp projector_derivative(const SuperOp& m, const SuperOp& l, double h);

/// max over contour nodes z and grid times τ ∈ [0, 1/n] of
/// σ_max((z id - M e^{τL})⁻¹); the τ grid is {j/(t_grid·n)}, j = 0..t_grid,
/// so refining t_grid samples a superset.
double resolvent_sup(const SuperOp& m, const SuperOp& l, const ContourSpec& contour,
                     int t_grid, int n);

}  // namespace zeno
