#include "halfplane/csv.hpp"

#include <cstdio>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace halfplane {

namespace {

constexpr double kRadToDeg = 180.0 / std::numbers::pi;

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("csv: cannot open '" + path + "' for writing");
  return out;
}

void put_row(std::ofstream& out, const std::vector<double>& vals) {
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (i) out << ',';
    out << format_double(vals[i]);
  }
  out << '\n';
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

void write_surface_csv(const std::string& path,
                       const std::vector<FieldSample>& rows) {
  auto out = open_out(path);
  out << "theta_deg,x_m,u_m,v_m,sx_total_kpa,sy_total_kpa,txy_total_kpa\n";
  for (const auto& s : rows) {
    put_row(out, {s.annulus.theta * kRadToDeg, s.physical.real(),
                  s.displacement.u, s.displacement.v, s.total_rect.s_x,
                  s.total_rect.s_y, s.total_rect.t_xy});
  }
}

void write_periphery_csv(const std::string& path,
                         const std::vector<FieldSample>& rows) {
  auto out = open_out(path);
  out << "theta_deg,x_m,y_m,s_hoop_total_kpa,s_rad_total_kpa,t_rt_total_kpa,"
         "u_m,v_m\n";
  for (const auto& s : rows) {
    put_row(out, {s.annulus.theta * kRadToDeg, s.physical.real(),
                  s.physical.imag(), s.total_polar.s_theta,
                  s.total_polar.s_rho, s.total_polar.t_rho_theta,
                  s.displacement.u, s.displacement.v});
  }
}

void write_grid_csv(const std::string& path,
                    const std::vector<FieldSample>& rows) {
  auto out = open_out(path);
  out << "rho,theta_deg,x_m,y_m,sx_kpa,sy_kpa,txy_kpa,sx_total_kpa,"
         "sy_total_kpa,txy_total_kpa,u_m,v_m\n";
  for (const auto& s : rows) {
    put_row(out, {s.annulus.rho, s.annulus.theta * kRadToDeg,
                  s.physical.real(), s.physical.imag(), s.induced_rect.s_x,
                  s.induced_rect.s_y, s.induced_rect.t_xy, s.total_rect.s_x,
                  s.total_rect.s_y, s.total_rect.t_xy, s.displacement.u,
                  s.displacement.v});
  }
}

void write_report_csv(const std::string& path,
                      const std::vector<ReportRow>& rows) {
  auto out = open_out(path);
  out << "run,case,k0,theta0_deg,gamma_kn_m3,sigma_rho_norm,"
         "sigma_rhotheta_norm,surface_disp_residual_m,"
         "surface_traction_residual_kpa,equilibrium_residual,boundary_residual,"
         "iterations,converged\n";
  for (const auto& r : rows) {
    out << r.run << ',' << r.case_label << ',' << format_double(r.k0) << ','
        << format_double(r.theta0_deg) << ',' << format_double(r.gamma) << ','
        << format_double(r.report.sigma_rho_norm) << ','
        << format_double(r.report.sigma_rhotheta_norm) << ','
        << format_double(r.report.surface_disp_residual) << ','
        << format_double(r.report.surface_traction_residual) << ','
        << format_double(r.report.equilibrium_residual) << ','
        << format_double(r.report.boundary_residual) << ','
        << r.report.iterations << ',' << (r.report.converged ? "true" : "false")
        << '\n';
  }
}

void write_plot_scripts(const std::string& dir) {
  {
    auto out = open_out(dir + "/surface_settlement.gp");
    out << "set title 'Ground surface displacement'\n"
           "set xlabel 'x (m)'\n"
           "set ylabel 'displacement (m)'\n"
           "set grid\n"
           "set datafile separator ','\n"
           "plot 'surface.csv' using 2:4 skip 1 with lines title 'v', \\\n"
           "     'surface.csv' using 2:3 skip 1 with lines title 'u'\n";
  }
  {
    auto out = open_out(dir + "/periphery_hoop.gp");
    out << "set title 'Hoop stress along tunnel periphery'\n"
           "set xlabel 'theta (deg)'\n"
           "set ylabel 'hoop stress (kPa)'\n"
           "set grid\n"
           "set datafile separator ','\n"
           "plot 'periphery.csv' using 1:4 skip 1 with lines title 'sigma_theta*'\n";
  }
  {
    auto out = open_out(dir + "/deformed_shape.gp");
    out << "set title 'Deformed tunnel (10x) and ground surface (as is)'\n"
           "set xlabel 'x (m)'\n"
           "set ylabel 'y (m)'\n"
           "set size ratio -1\n"
           "set grid\n"
           "set datafile separator ','\n"
           "mag = 10.0\n"
           "plot 'periphery.csv' using 2:3 skip 1 with lines title 'periphery', \\\n"
           "     'periphery.csv' using ($2+mag*$7):($3+mag*$8) skip 1 with lines "
           "title 'deformed (10x)', \\\n"
           "     'surface.csv' using ($2+$3):($4) skip 1 with lines title "
           "'surface (as is)'\n";
  }
}

}  // namespace halfplane
