#pragma once

#include <string>
#include <vector>

#include "levy_gqmle/experiment.hpp"

namespace levy_gqmle {

/// One row per (case, design): Tn,n,h,case,mean_alpha,sd_alpha,mean_gamma,sd_gamma.
std::string table_csv(const std::vector<McSummary>& summaries);

std::string summary_json(const std::vector<McSummary>& summaries);

/// Two panels (alpha_hat, gamma_hat), one box per (case, design) in each.
std::string boxplot_svg(const std::vector<McSummary>& summaries);

/// Writes table2.csv, summary.json and boxplots.svg (those named in `formats`,
/// drawn from {"csv", "json", "svg"}) into out_dir, atomically. Returns the paths.
std::vector<std::string> emit_report(const std::vector<McSummary>& summaries,
                                     const std::string& out_dir,
                                     const std::vector<std::string>& formats = {"csv", "json",
                                                                                "svg"});

}  // namespace levy_gqmle
