#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "zeno/harness.hpp"

namespace zeno {

using nlohmann::json;

namespace {

std::string format_double(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

}  // namespace

std::string emit_csv(const ExperimentResult& r) {
  std::string out = "n,error,norm_kind\n";
  for (const auto& rec : r.records) {
    out += std::to_string(rec.n);
    out += ',';
    out += format_double("%.17g", rec.error);
    out += ',';
    out += norm_kind_name(rec.norm_kind);
    out += '\n';
  }
  return out;
}

std::string emit_json(const ExperimentResult& r) {
  json records = json::array();
  for (const auto& rec : r.records)
    records.push_back(json{{"n", rec.n},
                           {"error", rec.error},
                           {"norm_kind", norm_kind_name(rec.norm_kind)}});
  // wall time stays out: emitted bytes must be identical across reruns
  json j{{"scenario", r.scenario},
         {"records", std::move(records)},
         {"stats", json{{"loglog_slope", r.loglog_slope}, {"final_error", r.final_error}}},
         {"metadata",
          json{{"seed", r.meta.seed},
               {"gap_min", r.meta.gap_min},
               {"limit_tol", r.meta.limit_tol}}}};
  return j.dump(2) + "\n";
}

std::vector<ConvergenceRecord> parse_records_csv(const std::string& text) {
  std::vector<ConvergenceRecord> records;
  std::size_t pos = 0;
  bool header = true;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    const std::string line = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (line.empty()) continue;
    if (header) {
      if (line != "n,error,norm_kind")
        throw ValidationError("csv: unexpected header '" + line + "'");
      header = false;
      continue;
    }
    const std::size_t c1 = line.find(',');
    const std::size_t c2 = line.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw ValidationError("csv: malformed row '" + line + "'");
    ConvergenceRecord rec;
    rec.n = std::stol(line.substr(0, c1));
    rec.error = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
    rec.norm_kind = norm_kind_from_name(line.substr(c2 + 1));
    records.push_back(rec);
  }
  if (header) throw ValidationError("csv: missing header");
  return records;
}

std::vector<ConvergenceRecord> parse_records_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("json parse error: ") + e.what());
  }
  std::vector<ConvergenceRecord> records;
  for (const json& rec : j.at("records"))
    records.push_back({rec.at("n").get<long>(), rec.at("error").get<double>(),
                       norm_kind_from_name(rec.at("norm_kind").get<std::string>())});
  return records;
}

namespace {

// Canvas geometry for the log-log scatter.
constexpr double kWidth = 640, kHeight = 480;
constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;

struct Scale {
  double lo = 0, hi = 1;
  double to_px(double v, double px_lo, double px_hi) const {
    const double f = (hi == lo) ? 0.5 : (v - lo) / (hi - lo);
    return px_lo + f * (px_hi - px_lo);
  }
};

}  // namespace

std::string emit_svg(const ExperimentResult& r) {
  std::vector<std::pair<double, double>> pts;  // (log10 n, log10 error)
  for (const auto& rec : r.records)
    if (rec.error > 0 && rec.n > 0)
      pts.emplace_back(std::log10(static_cast<double>(rec.n)), std::log10(rec.error));

  Scale xs, ys;
  if (!pts.empty()) {
    xs.lo = xs.hi = pts.front().first;
    ys.lo = ys.hi = pts.front().second;
    for (const auto& [x, y] : pts) {
      xs.lo = std::min(xs.lo, x);
      xs.hi = std::max(xs.hi, x);
      ys.lo = std::min(ys.lo, y);
      ys.hi = std::max(ys.hi, y);
    }
    const double xpad = 0.05 * (xs.hi - xs.lo + 1e-9);
    const double ypad = 0.05 * (ys.hi - ys.lo + 1e-9);
    xs.lo -= xpad; xs.hi += xpad;
    ys.lo -= ypad; ys.hi += ypad;
  }

  auto px = [&](double x) { return xs.to_px(x, kLeft, kWidth - kRight); };
  auto py = [&](double y) { return ys.to_px(y, kHeight - kBottom, kTop); };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
         "viewBox=\"0 0 640 480\">\n";
  svg += "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
  svg += "<text x=\"320\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"16\">" + r.scenario + "</text>\n";
  // axes
  svg += "<line x1=\"" + format_double("%.2f", kLeft) + "\" y1=\"" +
         format_double("%.2f", kHeight - kBottom) + "\" x2=\"" +
         format_double("%.2f", kWidth - kRight) + "\" y2=\"" +
         format_double("%.2f", kHeight - kBottom) + "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + format_double("%.2f", kLeft) + "\" y1=\"" +
         format_double("%.2f", kTop) + "\" x2=\"" + format_double("%.2f", kLeft) +
         "\" y2=\"" + format_double("%.2f", kHeight - kBottom) + "\" stroke=\"black\"/>\n";
  svg += "<text x=\"320\" y=\"470\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"12\">log10 n</text>\n";
  svg += "<text x=\"16\" y=\"240\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"12\" transform=\"rotate(-90 16 240)\">log10 error</text>\n";

  if (!pts.empty()) {
    // least-squares fit in log-log coordinates
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [x, y] : pts) {
      sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    const double n = static_cast<double>(pts.size());
    const double denom = n * sxx - sx * sx;
    if (denom != 0) {
      const double slope = (n * sxy - sx * sy) / denom;
      const double intercept = (sy - slope * sx) / n;
      const double x0 = xs.lo, x1 = xs.hi;
      svg += "<line x1=\"" + format_double("%.2f", px(x0)) + "\" y1=\"" +
             format_double("%.2f", py(intercept + slope * x0)) + "\" x2=\"" +
             format_double("%.2f", px(x1)) + "\" y2=\"" +
             format_double("%.2f", py(intercept + slope * x1)) +
             "\" stroke=\"steelblue\" stroke-dasharray=\"4 3\"/>\n";
      svg += "<text x=\"" + format_double("%.2f", kWidth - kRight - 8) +
             "\" y=\"" + format_double("%.2f", kTop + 16) +
             "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">"
             "log-log slope = " + format_double("%.3f", slope) + "</text>\n";
    }
    for (const auto& [x, y] : pts)
      svg += "<circle cx=\"" + format_double("%.2f", px(x)) + "\" cy=\"" +
             format_double("%.2f", py(y)) + "\" r=\"3.5\" fill=\"crimson\"/>\n";
  }
  svg += "</svg>\n";
  return svg;
}

void emit(const ExperimentResult& r, EmitFormat format, const std::filesystem::path& out) {
  std::string payload;
  switch (format) {
    case EmitFormat::csv: payload = emit_csv(r); break;
    case EmitFormat::json: payload = emit_json(r); break;
    case EmitFormat::svg: payload = emit_svg(r); break;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw ValidationError("emit: cannot open output file " + out.string());
  f << payload;
  if (!f) throw ValidationError("emit: write failed for " + out.string());
}

}  // namespace zeno
