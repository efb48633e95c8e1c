#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "zeno/spectral.hpp"
#include "zeno/superop.hpp"

namespace zeno {

enum class NormKind { proxy, rank1_lower, trace_state };

const char* norm_kind_name(NormKind k);
NormKind norm_kind_from_name(const std::string& name);

struct ConvergenceRecord {
  long n = 0;
  double error = 0.0;
  NormKind norm_kind = NormKind::proxy;
};

/// Time-independent Zeno setup: a gapped quantum operation M, a generator L
/// and a time t. Construction certifies the gap, validates L and derives the
/// peripheral spectral projector P (contour method) together with the
/// grid-estimated admissible window for the absorbed generator tL.
class ZenoStaticScenario {
 public:
  ZenoStaticScenario(SuperOp m, SuperOp l, double t, double gap_min = 0.05);

  const SuperOp& m() const { return m_; }
  const SuperOp& l() const { return l_; }
  double t() const { return t_; }
  int dim() const { return m_.dim(); }
  const SpectralReport& report() const { return report_; }
  const SuperOp& projector() const { return projector_.proj; }

  /// Grid estimate of the window ε for M e^{τ·tL}, τ ∈ [0, ε]; a lower
  /// bound of the true window (64-point grid over [0, 1]).
  double epsilon() const { return epsilon_; }

 private:
  SuperOp m_;
  SuperOp l_;
  double t_;
  SpectralReport report_;
  RieszProjector projector_;
  double epsilon_;
};

/// (M e^{tL/n})ⁿ
SuperOp zeno_product(const ZenoStaticScenario& s, long n);

/// e^{t PLP} P
SuperOp zeno_limit_static(const ZenoStaticScenario& s);

/// Error of zeno_product(n) against zeno_limit_static, per n, in the
/// requested norm. rank1_lower uses seeded restarts so runs reproduce.
std::vector<ConvergenceRecord> convergence_curve(const ZenoStaticScenario& s,
                                                 const std::vector<long>& ns,
                                                 NormKind kind,
                                                 std::uint64_t seed = 0);

/// Chernoff √n inequality probe for a contraction C:
///   first  = rank-one lower estimate of ‖Cⁿ - e^{n(C-1)}‖
///   second = √n · (upper estimate of ‖C-1‖)
/// The pair must satisfy first ≤ second. C must be certified a contraction
/// (CP trace-non-increasing, or √d·σ_max ≤ 1 + 1e-9).
std::pair<double, double> chernoff_gap(const SuperOp& c, long n,
                                       std::uint64_t seed = 0);

/// (P_{1/n} M e^{tL/n} P_{1/n})ⁿ with P_{1/n} the contour projector of
/// M e^{tL/n}. Requires n ≥ 1/ε for the scenario's window estimate.
SuperOp projected_zeno_product(const ZenoStaticScenario& s, long n);

/// n (P_{1/n} M e^{L'/n} P_{1/n} - P_{1/n}) with the time absorbed into the
/// generator (L' = tL); converges to P L' P as n → ∞.
SuperOp central_quantity(const ZenoStaticScenario& s, long n);

/// The three equivalent Zeno generators and the max pairwise proxy distance
/// of e^{G} P across them (zero in exact arithmetic).
struct GeneratorVariants {
  SuperOp plp;            // P L P
  SuperOp pl;             // P L
  SuperOp p_shift;        // P(id + L) - id
  double max_pairwise_distance = 0.0;
};

GeneratorVariants generator_variants(const SuperOp& p, const SuperOp& l);

}  // namespace zeno
