#include "levy_gqmle/sde.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "levy_gqmle/errors.hpp"

namespace levy_gqmle {

void validate(const PathConfig& cfg) {
  if (cfg.n < 1) throw Error(ErrorKind::ParameterDomain, "path needs n >= 1");
  if (!(cfg.h > 0.0) || !std::isfinite(cfg.h)) {
    throw Error(ErrorKind::ParameterDomain, "path needs a finite step h > 0");
  }
  if (cfg.refine < 1) throw Error(ErrorKind::ParameterDomain, "refine must be >= 1");
  if (!std::isfinite(cfg.x0)) throw Error(ErrorKind::ParameterDomain, "x0 must be finite");
}

SamplePath simulate_euler(const TrueModel& model, const LevyLawSpec& noise,
                          const PathConfig& cfg, RandomStream& rng) {
  validate(cfg);
  validate(model);
  validate(noise);
  SamplePath path;
  path.h = cfg.h;
  path.values.resize(cfg.n + 1);
  const double dt = cfg.h / cfg.refine;
  double x = cfg.x0;
  path.values[0] = x;
  long step = 0;
  for (long j = 1; j <= cfg.n; ++j) {
    for (int k = 0; k < cfg.refine; ++k, ++step) {
      const double dz = sample_increment(noise, dt, rng);
      x += model.A(x) * dt + model.C(x) * dz;
      if (!std::isfinite(x) || std::abs(x) > kDivergenceThreshold) {
        std::ostringstream msg;
        msg << "Euler scheme diverged at sub-step " << step << " (observation " << j
            << "), state " << x;
        throw DivergenceError(msg.str(), step);
      }
    }
    path.values[j] = x;
  }
  return path;
}

SamplePath simulate_euler(const TrueModel& model, const LevyLawSpec& noise,
                          const PathConfig& cfg, std::uint64_t stream_id) {
  RandomStream rng = make_stream(cfg.seed, stream_id);
  return simulate_euler(model, noise, cfg, rng);
}

void write_path(const SamplePath& path, std::ostream& sink) {
  sink << "t,x\n";
  char buffer[64];
  for (long j = 0; j < path.values.size(); ++j) {
    const double t = static_cast<double>(j) * path.h;
    std::snprintf(buffer, sizeof buffer, "%.17g,%.17g\n", t, path.values[j]);
    sink << buffer;
  }
}

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_double(const std::string& cell, double& out) {
  const std::string t = trim(cell);
  if (t.empty()) return false;
  const char* begin = t.data();
  const char* end = begin + t.size();
  if (*begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

[[noreturn]] void grid_error(long line, const std::string& what) {
  std::ostringstream msg;
  msg << "path CSV line " << line << ": " << what;
  throw Error(ErrorKind::GridFormat, msg.str());
}

}  // namespace

SamplePath load_path(std::istream& source) {
  std::vector<double> times;
  std::vector<double> values;
  std::string line;
  long line_no = 0;
  while (std::getline(source, line)) {
    ++line_no;
    const std::string row = trim(line);
    if (row.empty()) continue;
    const auto comma = row.find(',');
    if (comma == std::string::npos || row.find(',', comma + 1) != std::string::npos) {
      grid_error(line_no, "expected exactly two columns");
    }
    const std::string first = row.substr(0, comma);
    const std::string second = row.substr(comma + 1);
    double t;
    double x;
    const bool ok_t = parse_double(first, t);
    const bool ok_x = parse_double(second, x);
    if (!ok_t || !ok_x) {
      if (times.empty() && values.empty() && trim(first) == "t" && trim(second) == "x") {
        continue;  // header
      }
      grid_error(line_no, "non-numeric cell");
    }
    times.push_back(t);
    values.push_back(x);
  }
  if (times.size() < 2) throw Error(ErrorKind::GridFormat, "path CSV needs at least two rows");
  const long n = static_cast<long>(times.size()) - 1;
  const double h = (times.back() - times.front()) / static_cast<double>(n);
  if (!(h > 0.0)) throw Error(ErrorKind::GridFormat, "time grid must be strictly increasing");
  for (long j = 1; j <= n; ++j) {
    const double d = times[j] - times[j - 1];
    if (std::abs(d - h) > 1e-9 * h) {
      std::ostringstream msg;
      msg << "non-equispaced grid: step " << d << " vs mean step " << h;
      grid_error(j + 1, msg.str());
    }
  }
  SamplePath path;
  path.h = h;
  path.values = Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<long>(values.size()));
  return path;
}

MomentRatioReport small_time_moment_check(const TrueModel& model, const LevyLawSpec& noise,
                                          const PathConfig& cfg, double p, long reps, double K,
                                          const std::vector<double>& starts) {
  validate(cfg);
  const double lower = std::max(1.0, blumenthal_getoor_index(noise));
  if (!(p > lower && p < 2.0)) {
    throw Error(ErrorKind::ParameterDomain, "moment exponent p must lie in (max(1, BG index), 2)");
  }
  if (reps < 1) throw Error(ErrorKind::ParameterDomain, "reps must be >= 1");
  MomentRatioReport report;
  report.p = p;
  report.K = K;
  report.h = cfg.h;
  report.starts = starts;
  auto moment = [&](double x0, double h, std::uint64_t stream) {
    RandomStream rng = make_stream(cfg.seed, stream);
    const double dt = h / cfg.refine;
    double acc = 0.0;
    for (long r = 0; r < reps; ++r) {
      double x = x0;
      for (int k = 0; k < cfg.refine; ++k) {
        x += model.A(x) * dt + model.C(x) * sample_increment(noise, dt, rng);
      }
      acc += std::pow(std::abs(x - x0), p);
    }
    return acc / static_cast<double>(reps);
  };
  for (std::size_t i = 0; i < starts.size(); ++i) {
    const double x = starts[i];
    const double weight = 1.0 + std::pow(std::abs(x), K);
    const double m_h = moment(x, cfg.h, 2 * i);
    const double m_half = moment(x, 0.5 * cfg.h, 2 * i + 1);
    report.moments_h.push_back(m_h);
    report.moments_half.push_back(m_half);
    report.ratio_h = std::max(report.ratio_h, m_h / (cfg.h * weight));
    report.ratio_half = std::max(report.ratio_half, m_half / (0.5 * cfg.h * weight));
  }
  report.change_factor = report.ratio_half > 0.0 ? report.ratio_h / report.ratio_half : 0.0;
  return report;
}

}  // namespace levy_gqmle
