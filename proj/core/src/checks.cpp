#include <cmath>
#include <random>

#include "zeno/harness.hpp"
#include "zeno/random.hpp"
#include "zeno/spectral.hpp"

namespace zeno {

namespace {

std::string sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

// Every inequality probe pairs a lower estimate of the left side with an
// exact or upper-estimated right side, so a pass is implied by the theorem
// it checks and a failure is a genuine violation.

CheckReport check_chernoff() {
  CheckReport report;
  report.suite = "chernoff";
  constexpr int kChannels = 100;
  const std::vector<long> ns = {1, 2, 4, 8, 16, 32, 64};

  for (long n : ns) {
    double worst = -1e300;
    for (int idx = 0; idx < kChannels; ++idx) {
      std::mt19937_64 rng(9000 + idx);
      const int d = (idx % 2 == 0) ? 2 : 3;
      const SuperOp c = kraus_to_superop(random_channel_kraus(d, 2 + idx % 3, rng));
      const auto [lhs, rhs] = chernoff_gap(c, n, 7700 + idx);
      worst = std::max(worst, lhs - rhs);
    }
    report.lines.push_back({"sqrt-n bound, n=" + std::to_string(n),
                            worst <= 1e-9,
                            "max(lhs - rhs) = " + sci(worst) + " over 100 channels"});
  }
  return report;
}

CheckReport check_lemma4() {
  CheckReport report;
  report.suite = "lemma4";
  std::mt19937_64 rng(424242);
  const LindbladGenerator g0 = random_gkls(2, 1, 1.0, rng);
  const LindbladGenerator g1 = random_gkls(2, 1, 1.0, rng);
  std::vector<std::pair<double, LindbladGenerator>> kf;
  kf.emplace_back(0.0, g0);
  kf.emplace_back(1.0, g1);
  const GeneratorPath path(std::move(kf));

  int idx = 0;
  for (double delta : {0.1, 0.05, 0.025}) {
    double worst = -1e300;
    bool pass = true;
    for (double t : {0.0, 0.3, 0.6}) {
      for (double s : {0.0, 0.3, 0.6}) {
        const auto [lhs, rhs] = piecewise_constant_bound(path, t, s, delta, 5500 + idx++);
        worst = std::max(worst, lhs - rhs);
        pass = pass && (lhs <= rhs + 1e-8);
      }
    }
    report.lines.push_back({"piecewise-constant bound, delta=" + sci(delta), pass,
                            "max(lhs - rhs) = " + sci(worst) + " over the (t,s) grid"});
  }
  return report;
}

CheckReport check_projectors() {
  CheckReport report;
  report.suite = "projectors";
  constexpr int kSamples = 50;

  double worst_pairwise = 0.0, worst_defect = 0.0;
  bool all_ops = true;
  for (int idx = 0; idx < kSamples; ++idx) {
    std::mt19937_64 rng(31000 + idx);
    const int d = (idx % 2 == 0) ? 2 : 3;
    const SuperOp m = random_gapped_operation(d, 0.5, rng);
    const SpectralReport rep = spectrum_report(m, 0.05);

    const RieszProjector pc = riesz_contour(m, ContourSpec::around_one(rep.delta));
    const RieszProjector ps = riesz_schur(m, Complex(1.0, 0.0), 0.5 * (1.0 - rep.delta));
    const RieszProjector pp = power_limit_projector(m, 1e-12, 40);

    worst_pairwise = std::max({worst_pairwise, proxy_norm(pc.proj - ps.proj),
                               proxy_norm(pc.proj - pp.proj), proxy_norm(ps.proj - pp.proj)});
    worst_defect = std::max({worst_defect, pc.idempotency_defect, ps.idempotency_defect,
                             pp.idempotency_defect});
    for (const RieszProjector* p : {&pc, &ps, &pp}) {
      const MapClassification mc = classify_map(p->proj, 1e-7);
      all_ops = all_ops && mc.cp && mc.trace_nonincreasing;
    }
  }
  report.lines.push_back({"three-method agreement", worst_pairwise <= 1e-8,
                          "max pairwise distance = " + sci(worst_pairwise) + " over 50 samples"});
  report.lines.push_back({"idempotency", worst_defect <= 1e-10,
                          "max defect = " + sci(worst_defect)});
  report.lines.push_back({"projector is a quantum operation", all_ops,
                          "classify_map cp and trace-non-increasing at tol 1e-7"});
  return report;
}

CheckReport check_telescoping() {
  CheckReport report;
  report.suite = "telescoping";
  const ScenarioConfig cfg = builtin_scenario("timedep_drive");
  const SuperOp m = cfg.interception();
  const GeneratorPath& path = std::get<GeneratorPath>(cfg.generator);

  for (long mc : {2L, 4L, 8L}) {
    InterceptedConfig ic{m, path, 64 * mc, mc, 1e-10};
    const auto [dist, bound] = telescoping_check(ic, 8800 + mc);
    report.lines.push_back({"3L/m bound, m=" + std::to_string(mc), dist <= bound,
                            "dist_lower = " + sci(dist) + ", bound = " + sci(bound)});
  }
  return report;
}

}  // namespace

bool CheckReport::all_pass() const {
  for (const auto& line : lines)
    if (!line.pass) return false;
  return true;
}

std::vector<std::string> check_suite_names() {
  return {"chernoff", "lemma4", "projectors", "telescoping"};
}

CheckReport run_check_suite(const std::string& suite) {
  if (suite == "chernoff") return check_chernoff();
  if (suite == "lemma4") return check_lemma4();
  if (suite == "projectors") return check_projectors();
  if (suite == "telescoping") return check_telescoping();
  throw ValidationError("unknown check suite: " + suite);
}

}  // namespace zeno
