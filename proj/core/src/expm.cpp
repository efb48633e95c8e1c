#include <array>
#include <cmath>

#include "zeno/superop.hpp"

namespace zeno {

namespace {

// [m/m] Padé approximant to e^A: returns (V - U)^{-1} (V + U) with
// U the odd and V the even part of the numerator polynomial.
Matrix pade_eval(const Matrix& a, const double* b, int m) {
  const Eigen::Index n = a.rows();
  const Matrix id = Matrix::Identity(n, n);
  const Matrix a2 = a * a;

  Matrix u, v;
  if (m == 13) {
    const Matrix a4 = a2 * a2;
    const Matrix a6 = a4 * a2;
    u = a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) +
             b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
    v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) +
        b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
  } else {
    // m ∈ {3, 5, 7, 9}: plain Horner over powers of A².
    Matrix even = b[0] * id;
    Matrix odd = b[1] * id;
    Matrix a2k = id;
    for (int k = 1; 2 * k <= m; ++k) {
      a2k = a2k * a2;
      even += b[2 * k] * a2k;
      if (2 * k + 1 <= m) odd += b[2 * k + 1] * a2k;
    }
    u = a * odd;
    v = even;
  }
  return (v - u).partialPivLu().solve(v + u);
}

constexpr std::array<double, 4> kPade3 = {120.0, 60.0, 12.0, 1.0};
constexpr std::array<double, 6> kPade5 = {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
constexpr std::array<double, 8> kPade7 = {17297280.0, 8648640.0, 1995840.0, 277200.0,
                                          25200.0,    1512.0,    56.0,      1.0};
constexpr std::array<double, 10> kPade9 = {17643225600.0, 8821612800.0, 2075673600.0,
                                           302702400.0,   30270240.0,   2162160.0,
                                           110880.0,      3960.0,       90.0,
                                           1.0};
constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};

// Order-selection thresholds on ‖A‖₁ (Higham 2005).
constexpr double kTheta3 = 1.495585217958292e-2;
constexpr double kTheta5 = 2.539398330063230e-1;
constexpr double kTheta7 = 9.504178996162932e-1;
constexpr double kTheta9 = 2.097847961257068e0;
constexpr double kTheta13 = 5.371920351148152e0;

}  // namespace

Matrix expm(const Matrix& a) {
  if (a.rows() != a.cols()) throw ValidationError("expm: matrix not square");
  if (!is_finite(a)) throw ValidationError("expm: non-finite entries");
  if (a.rows() == 0) return a;

  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();

  if (norm1 <= kTheta3) return pade_eval(a, kPade3.data(), 3);
  if (norm1 <= kTheta5) return pade_eval(a, kPade5.data(), 5);
  if (norm1 <= kTheta7) return pade_eval(a, kPade7.data(), 7);
  if (norm1 <= kTheta9) return pade_eval(a, kPade9.data(), 9);

  int squarings = 0;
  Matrix scaled = a;
  if (norm1 > kTheta13) {
    squarings = static_cast<int>(std::ceil(std::log2(norm1 / kTheta13)));
    scaled = a * std::pow(2.0, -squarings);
  }
  Matrix result = pade_eval(scaled, kPade13.data(), 13);
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

}  // namespace zeno
