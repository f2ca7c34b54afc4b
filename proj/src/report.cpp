#include "levy_gqmle/report.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "levy_gqmle/errors.hpp"
#include "levy_gqmle/file_io.hpp"
#include "levy_gqmle/json_io.hpp"
#include "levy_gqmle/stats.hpp"

namespace levy_gqmle {

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

struct BoxStats {
  double lo, q1, median, q3, hi;
};

BoxStats box_stats(const std::vector<double>& v) {
  if (v.empty()) return {0, 0, 0, 0, 0};
  BoxStats b;
  b.q1 = quantile(v, 0.25);
  b.median = quantile(v, 0.5);
  b.q3 = quantile(v, 0.75);
  const double iqr = b.q3 - b.q1;
  b.lo = b.q1;
  b.hi = b.q3;
  for (double x : v) {
    if (x >= b.q1 - 1.5 * iqr) b.lo = std::min(b.lo, x);
    if (x <= b.q3 + 1.5 * iqr) b.hi = std::max(b.hi, x);
  }
  return b;
}

}  // namespace

std::string table_csv(const std::vector<McSummary>& summaries) {
  std::ostringstream out;
  out << "Tn,n,h,case,mean_alpha,sd_alpha,mean_gamma,sd_gamma\n";
  for (const auto& s : summaries) {
    for (const auto& d : s.designs) {
      out << fmt("%g", d.design.horizon()) << ',' << d.design.n << ',' << fmt("%g", d.design.h)
          << ',' << to_string(s.noise_case) << ',' << fmt("%.6f", d.mean_alpha) << ','
          << fmt("%.6f", d.sd_alpha) << ',' << fmt("%.6f", d.mean_gamma) << ','
          << fmt("%.6f", d.sd_gamma) << '\n';
    }
  }
  return out.str();
}

std::string summary_json(const std::vector<McSummary>& summaries) {
  Json all = Json::array();
  for (const auto& s : summaries) all.push_back(to_json(s));
  return all.dump(2) + "\n";
}

std::string boxplot_svg(const std::vector<McSummary>& summaries) {
  struct Group {
    std::string label;
    std::string id;
    const std::vector<double>* alpha;
    const std::vector<double>* gamma;
    ThetaStar target;
  };
  std::vector<Group> groups;
  for (const auto& s : summaries) {
    for (const auto& d : s.designs) {
      const std::string c = to_string(s.noise_case);
      groups.push_back({"(" + c + ") n=" + std::to_string(d.design.n),
                        c + "-" + std::to_string(d.design.n), &d.alpha_hat, &d.gamma_hat,
                        s.theta_star});
    }
  }
  const double box_w = 60.0;
  const double left = 60.0;
  const double panel_h = 260.0;
  const double top = 30.0;
  const double width = left + box_w * static_cast<double>(groups.size()) + 20.0;
  const double height = 2.0 * (panel_h + top) + 40.0;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt("%.0f", width)
      << "\" height=\"" << fmt("%.0f", height) << "\" font-family=\"sans-serif\" font-size=\"10\">\n";
  for (int panel = 0; panel < 2; ++panel) {
    const char* name = panel == 0 ? "alpha" : "gamma";
    std::vector<BoxStats> stats;
    double lo = 1e300;
    double hi = -1e300;
    for (const auto& g : groups) {
      const auto& v = panel == 0 ? *g.alpha : *g.gamma;
      stats.push_back(box_stats(v));
      const double t = panel == 0 ? g.target.alpha : g.target.gamma;
      lo = std::min({lo, stats.back().lo, t});
      hi = std::max({hi, stats.back().hi, t});
    }
    if (!(hi > lo)) {
      lo -= 1.0;
      hi += 1.0;
    }
    const double y0 = top + panel * (panel_h + top + 20.0);
    auto y = [&](double v) { return y0 + panel_h * (hi - v) / (hi - lo); };
    svg << "<g class=\"panel\" id=\"panel-" << name << "\">\n";
    svg << "<text x=\"10\" y=\"" << fmt("%.2f", y0 - 10.0) << "\">" << name << "_hat</text>\n";
    svg << "<line x1=\"" << left - 5 << "\" y1=\"" << fmt("%.2f", y0) << "\" x2=\"" << left - 5
        << "\" y2=\"" << fmt("%.2f", y0 + panel_h) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"5\" y=\"" << fmt("%.2f", y(hi)) << "\">" << fmt("%.3f", hi) << "</text>\n";
    svg << "<text x=\"5\" y=\"" << fmt("%.2f", y(lo)) << "\">" << fmt("%.3f", lo) << "</text>\n";
    for (std::size_t i = 0; i < groups.size(); ++i) {
      const BoxStats& b = stats[i];
      const double cx = left + box_w * (static_cast<double>(i) + 0.5);
      const double x1 = cx - 0.3 * box_w;
      const double t = panel == 0 ? groups[i].target.alpha : groups[i].target.gamma;
      svg << "<g class=\"box\" id=\"box-" << name << "-" << groups[i].id << "\">\n";
      svg << "<line x1=\"" << fmt("%.2f", cx) << "\" y1=\"" << fmt("%.2f", y(b.hi)) << "\" x2=\""
          << fmt("%.2f", cx) << "\" y2=\"" << fmt("%.2f", y(b.lo)) << "\" stroke=\"black\"/>\n";
      svg << "<rect x=\"" << fmt("%.2f", x1) << "\" y=\"" << fmt("%.2f", y(b.q3))
          << "\" width=\"" << fmt("%.2f", 0.6 * box_w) << "\" height=\""
          << fmt("%.2f", y(b.q1) - y(b.q3)) << "\" fill=\"#dde6f2\" stroke=\"black\"/>\n";
      svg << "<line x1=\"" << fmt("%.2f", x1) << "\" y1=\"" << fmt("%.2f", y(b.median))
          << "\" x2=\"" << fmt("%.2f", x1 + 0.6 * box_w) << "\" y2=\"" << fmt("%.2f", y(b.median))
          << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
      svg << "<line x1=\"" << fmt("%.2f", cx - 0.45 * box_w) << "\" y1=\"" << fmt("%.2f", y(t))
          << "\" x2=\"" << fmt("%.2f", cx + 0.45 * box_w) << "\" y2=\"" << fmt("%.2f", y(t))
          << "\" stroke=\"red\" stroke-dasharray=\"3,3\"/>\n";
      svg << "<text x=\"" << fmt("%.2f", x1) << "\" y=\"" << fmt("%.2f", y0 + panel_h + 14.0)
          << "\">" << groups[i].label << "</text>\n";
      svg << "</g>\n";
    }
    svg << "</g>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::vector<std::string> emit_report(const std::vector<McSummary>& summaries,
                                     const std::string& out_dir,
                                     const std::vector<std::string>& formats) {
  const std::filesystem::path dir(out_dir);
  std::vector<std::string> written;
  for (const auto& f : formats) {
    std::filesystem::path target;
    std::string body;
    if (f == "csv") {
      target = dir / "table2.csv";
      body = table_csv(summaries);
    } else if (f == "json") {
      target = dir / "summary.json";
      body = summary_json(summaries);
    } else if (f == "svg") {
      target = dir / "boxplots.svg";
      body = boxplot_svg(summaries);
    } else {
      throw Error(ErrorKind::Usage, "unknown report format '" + f + "'");
    }
    write_file_atomic(target, body);
    written.push_back(target.string());
  }
  return written;
}

}  // namespace levy_gqmle
