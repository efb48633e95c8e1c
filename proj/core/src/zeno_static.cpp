#include "zeno/zeno_static.hpp"

#include <cmath>
#include <future>

#include "zeno/lindblad.hpp"

namespace zeno {

const char* norm_kind_name(NormKind k) {
  switch (k) {
    case NormKind::proxy: return "proxy";
    case NormKind::rank1_lower: return "rank1_lower";
    case NormKind::trace_state: return "trace_state";
  }
  return "proxy";
}

NormKind norm_kind_from_name(const std::string& name) {
  if (name == "proxy") return NormKind::proxy;
  if (name == "rank1" || name == "rank1_lower") return NormKind::rank1_lower;
  if (name == "trace_state") return NormKind::trace_state;
  throw ValidationError("unknown norm kind: " + name);
}

ZenoStaticScenario::ZenoStaticScenario(SuperOp m, SuperOp l, double t, double gap_min)
    : m_(std::move(m)),
      l_(std::move(l)),
      t_(t),
      report_(spectrum_report(m_, gap_min)),
      projector_{},
      epsilon_(0.0) {
  if (t_ < 0) throw ValidationError("ZenoStaticScenario: t must be >= 0");
  if (m_.dim() != l_.dim()) throw ValidationError("ZenoStaticScenario: dimension mismatch");
  if (!report_.gap_ok)
    throw ValidationError(
        "ZenoStaticScenario: M fails the spectral gap condition (delta = " +
        std::to_string(report_.delta) + ", gap_min = " + std::to_string(gap_min) + ")");
  if (!check_generator(l_, 1e-8))
    throw ValidationError("ZenoStaticScenario: L is not a valid generator at tol 1e-8");

  projector_ = riesz_contour(m_, ContourSpec::around_one(report_.delta));
  const SuperOp absorbed = t_ * l_;
  epsilon_ = (t_ == 0.0) ? 1.0 : epsilon_window(m_, absorbed, 1.0, 64);
}

SuperOp zeno_product(const ZenoStaticScenario& s, long n) {
  if (n < 1) throw ValidationError("zeno_product: n must be >= 1");
  const SuperOp factor = s.m() * expm_superop(s.l(), s.t() / static_cast<double>(n));
  return pow(factor, n);
}

SuperOp zeno_limit_static(const ZenoStaticScenario& s) {
  const SuperOp& p = s.projector();
  return expm_superop(p * s.l() * p, s.t()) * p;
}

std::vector<ConvergenceRecord> convergence_curve(const ZenoStaticScenario& s,
                                                 const std::vector<long>& ns,
                                                 NormKind kind, std::uint64_t seed) {
  if (ns.empty()) throw ValidationError("convergence_curve: empty sweep");
  if (kind == NormKind::trace_state)
    throw ValidationError("convergence_curve: trace_state applies to state sweeps only");

  for (long n : ns)
    if (n < 1) throw ValidationError("convergence_curve: sweep entries must be >= 1");

  // Entries are independent; evaluate them concurrently and merge in sweep
  // order. Seeds are per-entry, so the result matches a sequential run.
  const SuperOp limit = zeno_limit_static(s);
  std::vector<std::future<double>> tasks;
  tasks.reserve(ns.size());
  for (std::size_t i = 0; i < ns.size(); ++i) {
    tasks.push_back(std::async(std::launch::async, [&s, &limit, kind, seed, i, n = ns[i]] {
      const SuperOp diff = zeno_product(s, n) - limit;
      if (kind == NormKind::proxy) return proxy_norm(diff);
      return norm_1to1_estimate(diff, 4, 16, seed + i).lower;
    }));
  }

  std::vector<ConvergenceRecord> records;
  records.reserve(ns.size());
  for (std::size_t i = 0; i < ns.size(); ++i) records.push_back({ns[i], tasks[i].get(), kind});
  return records;
}

std::pair<double, double> chernoff_gap(const SuperOp& c, long n, std::uint64_t seed) {
  if (n < 1) throw ValidationError("chernoff_gap: n must be >= 1");
  if (contraction_bound(c) > 1.0 + 1e-9)
    throw ValidationError("chernoff_gap: input not certified as a contraction");

  const SuperOp id = SuperOp::identity(c.dim());
  const SuperOp generator = c - id;
  const SuperOp lhs = pow(c, n) - expm_superop(generator, static_cast<double>(n));
  const double lhs_lower = norm_1to1_estimate(lhs, 4, 16, seed).lower;
  const double rhs = std::sqrt(static_cast<double>(n)) * norm_1to1_upper(generator);
  return {lhs_lower, rhs};
}

namespace {

// P_{1/n} for the absorbed generator: contour projector of M e^{tL/n}.
SuperOp window_projector(const ZenoStaticScenario& s, long n) {
  if (n < 1) throw ValidationError("projected product: n must be >= 1");
  if (s.epsilon() <= 0.0)
    throw ValidationError("projected product: admissible window estimate is 0");
  if (static_cast<double>(n) < 1.0 / s.epsilon())
    throw ValidationError("projected product: n below 1/epsilon = " +
                          std::to_string(1.0 / s.epsilon()));
  const SuperOp m_t = s.m() * expm_superop(s.l(), s.t() / static_cast<double>(n));
  return riesz_contour(m_t, ContourSpec::around_one(s.report().delta)).proj;
}

}  // namespace

SuperOp projected_zeno_product(const ZenoStaticScenario& s, long n) {
  const SuperOp p = window_projector(s, n);
  const SuperOp factor = p * s.m() * expm_superop(s.l(), s.t() / static_cast<double>(n)) * p;
  return pow(factor, n);
}

SuperOp central_quantity(const ZenoStaticScenario& s, long n) {
  const SuperOp p = window_projector(s, n);
  const SuperOp c = p * s.m() * expm_superop(s.l(), s.t() / static_cast<double>(n)) * p;
  return static_cast<double>(n) * (c - p);
}

GeneratorVariants generator_variants(const SuperOp& p, const SuperOp& l) {
  if (p.dim() != l.dim()) throw ValidationError("generator_variants: dimension mismatch");
  if (proxy_norm(p * p - p) > 1e-8)
    throw ValidationError("generator_variants: P not idempotent within 1e-8");

  GeneratorVariants out;
  out.plp = p * l * p;
  out.pl = p * l;
  const SuperOp id = SuperOp::identity(p.dim());
  out.p_shift = p * (id + l) - id;

  const SuperOp e1 = expm_superop(out.plp, 1.0) * p;
  const SuperOp e2 = expm_superop(out.pl, 1.0) * p;
  const SuperOp e3 = expm_superop(out.p_shift, 1.0) * p;
  out.max_pairwise_distance =
      std::max({proxy_norm(e1 - e2), proxy_norm(e1 - e3), proxy_norm(e2 - e3)});
  return out;
}

}  // namespace zeno
