#include <filesystem>
#include <sstream>
#include <string>

#include "doctest.h"
#include "levy_gqmle/file_io.hpp"
#include "levy_gqmle/report.hpp"

using namespace levy_gqmle;

namespace {

std::vector<McSummary> small_run() {
  std::vector<McSummary> out;
  for (NoiseCase c : {NoiseCase::I, NoiseCase::II}) {
    ExperimentDesign d;
    d.noise_case = c;
    d.designs = {{200, 0.05}, {400, 0.05}};
    d.replications = 12;
    d.seed = 4;
    out.push_back(run_mc(d));
  }
  return out;
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = text.find(needle); p != std::string::npos; p = text.find(needle, p + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("table CSV") {
  const auto runs = small_run();
  const std::string csv = table_csv(runs);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "Tn,n,h,case,mean_alpha,sd_alpha,mean_gamma,sd_gamma");
  int rows = 0;
  while (std::getline(in, line)) {
    if (!line.empty()) ++rows;
  }
  CHECK(rows == 4);
  CHECK(csv.find("10,200,0.05,i,") != std::string::npos);
  CHECK(csv.find("20,400,0.05,ii,") != std::string::npos);
}

TEST_CASE("SVG box plots have one box per case and design in each panel") {
  const std::string svg = boxplot_svg(small_run());
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(count(svg, "class=\"panel\"") == 2);
  CHECK(count(svg, "class=\"box\"") == 8);
  CHECK(svg.find("id=\"box-alpha-ii-400\"") != std::string::npos);
  CHECK(svg.find("id=\"box-gamma-i-200\"") != std::string::npos);
}

TEST_CASE("emit_report writes byte-identical files for the same seed") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "levy_gqmle_report_test";
  fs::remove_all(dir);
  const auto paths = emit_report(small_run(), dir.string());
  CHECK(paths.size() == 3);
  const std::string first_csv = read_file((dir / "table2.csv").string());
  const std::string first_json = read_file((dir / "summary.json").string());
  const std::string first_svg = read_file((dir / "boxplots.svg").string());
  emit_report(small_run(), dir.string());
  CHECK(read_file((dir / "table2.csv").string()) == first_csv);
  CHECK(read_file((dir / "summary.json").string()) == first_json);
  CHECK(read_file((dir / "boxplots.svg").string()) == first_svg);
  const auto only_csv = emit_report(small_run(), (dir / "csv").string(), {"csv"});
  CHECK(only_csv.size() == 1);
  CHECK_FALSE(fs::exists(dir / "csv" / "summary.json"));
  fs::remove_all(dir);
}
