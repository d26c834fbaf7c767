#pragma once

#include <string>
#include <vector>

#include "halfplane/fields.hpp"
#include "halfplane/verify.hpp"

namespace halfplane {

/// CSV writers. Headers are part of the external file contract; floating
/// values print with 9 significant digits, rows end with '\n', UTF-8.

std::string format_double(double v);

void write_surface_csv(const std::string& path,
                       const std::vector<FieldSample>& rows);
void write_periphery_csv(const std::string& path,
                         const std::vector<FieldSample>& rows);
void write_grid_csv(const std::string& path,
                    const std::vector<FieldSample>& rows);

/// One report row per run; `run` labels the sweep entry ("-" for a single run).
struct ReportRow {
  std::string run;
  std::string case_label;
  double k0 = 0.0;
  double theta0_deg = 0.0;
  double gamma = 0.0;
  VerificationReport report;
};

void write_report_csv(const std::string& path,
                      const std::vector<ReportRow>& rows);

/// Plain-text gnuplot scripts referencing the CSVs by relative name:
/// surface settlement, periphery hoop stress, and the deformed shape with the
/// conventional 10x magnification of periphery displacements.
void write_plot_scripts(const std::string& dir);

}  // namespace halfplane
