#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zeno/common.hpp"

namespace zeno {

// Vectorization is column-stacking throughout the library:
//   vec(X) concatenates the columns of X, entry X(i,j) lands at index i + j*d,
// so the matrix of X -> A X B is Bᵀ ⊗ A. Everything downstream (Kraus
// assembly, GKLS generators, Choi matrices) relies on this one convention.
Vector vectorize(const Matrix& x);
Matrix devectorize(const Vector& v);
Matrix kron(const Matrix& a, const Matrix& b);

/// Linear map on d×d operators, stored as its d²×d² matrix acting on vec(X).
class SuperOp {
 public:
  SuperOp() = default;
  explicit SuperOp(Matrix rep);

  static SuperOp identity(int dim);
  static SuperOp zero(int dim);

  int dim() const { return dim_; }
  Eigen::Index side() const { return rep_.rows(); }
  const Matrix& rep() const { return rep_; }

  /// devectorize(rep · vectorize(x))
  Matrix apply(const Matrix& x) const;

  /// Adjoint with respect to the Hilbert-Schmidt inner product tr(A†B).
  SuperOp adjoint() const;

 private:
  int dim_ = 0;
  Matrix rep_;
};

SuperOp operator*(const SuperOp& a, const SuperOp& b);  // composition
SuperOp operator+(const SuperOp& a, const SuperOp& b);
SuperOp operator-(const SuperOp& a, const SuperOp& b);
SuperOp operator*(Complex c, const SuperOp& a);
SuperOp operator*(double c, const SuperOp& a);

/// a^n by binary powering, n ≥ 0.
SuperOp pow(const SuperOp& a, long n);

/// State on a d-dimensional Hilbert space. Construction enforces
/// hermiticity (1e-12 max-entry), positivity (eigenvalues ≥ -1e-12) and
/// unit trace (1e-12).
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix rho);
  int dim() const { return static_cast<int>(rho_.rows()); }
  const Matrix& mat() const { return rho_; }

 private:
  Matrix rho_;
};

struct KrausSet {
  enum class Kind { channel, operation };

  int dim = 0;
  std::vector<Matrix> ops;
  Kind kind = Kind::channel;

  // Validates shape and the (in)equality Σ K†K = 1 (channel, 1e-10) or
  // Σ K†K ≤ 1 (operation, max eigenvalue ≤ 1 + 1e-10).
  KrausSet(int dim, std::vector<Matrix> ops, Kind kind);
};

struct MapClassification {
  bool cp = false;
  bool trace_preserving = false;
  bool trace_nonincreasing = false;
  bool hermiticity_preserving = false;
};

struct NormEstimate {
  double lower = 0.0;
  double upper = 0.0;
  std::string lower_method;
  std::string upper_method;
};

/// Σᵢ conj(Kᵢ) ⊗ Kᵢ; applied to vec(ρ) this is vec(Σ Kᵢ ρ Kᵢ†).
SuperOp kraus_to_superop(const KrausSet& k);

/// Choi matrix J(T) = Σ_ij T(E_ij) ⊗ E_ij, i.e. (T ⊗ id)|Ω⟩⟨Ω| with the
/// unnormalized |Ω⟩ = Σ|ii⟩. T is completely positive iff J(T) ⪰ 0.
Matrix choi_matrix(const SuperOp& t);

MapClassification classify_map(const SuperOp& t, double tol);

/// Dense e^A by Padé scaling-and-squaring (backward error near machine eps).
Matrix expm(const Matrix& a);

/// e^{tA}. Rejects ‖tA‖₁ > 1e4.
SuperOp expm_superop(const SuperOp& a, double t);

/// σ_max of the matrix representation. Cheap stand-in for the 1→1 norm,
/// equivalent up to dimension factors; used for convergence measurements.
double proxy_norm(const SuperOp& t);

/// Sum of singular values of x.
double trace_norm(const Matrix& x);

/// √d · σ_max — a certified upper bound on the 1→1 norm, via
/// ‖X‖₂ ≤ ‖X‖₁ and ‖Y‖₁ ≤ √d ‖Y‖₂.
double norm_1to1_upper(const SuperOp& t);

/// Two-sided estimate of ‖T‖ = sup ‖T(X)‖₁/‖X‖₁.
/// lower: best ‖T(|x⟩⟨y|)‖₁ over unit x, y found by alternating ascent from
/// `restarts` random starts (a valid lower bound: the trace-norm unit ball's
/// extreme points are rank one). upper: norm_1to1_upper.
NormEstimate norm_1to1_estimate(const SuperOp& t, int restarts, int iters,
                                std::uint64_t seed = 0);

/// Upper bound on ‖T‖ that is ≈ 1 for channels: for maps whose Choi matrix
/// is PSD (within 1e-10) this is λ_max of the dual image of the identity,
/// otherwise it falls back to norm_1to1_upper.
double contraction_bound(const SuperOp& t);

}  // namespace zeno
