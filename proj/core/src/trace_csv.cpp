#include "ppac/trace_csv.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace ppac {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 40> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
  return {buf.data(), res.ptr};
}

std::string trace_csv_header(Eigen::Index order) {
  std::string h = "t,y,u,ystar,d,ddelta,e,rho,V,phi_norm";
  for (Eigen::Index i = 1; i <= 2 * order; ++i) h += ",theta_hat_" + std::to_string(i);
  for (Eigen::Index i = 1; i <= 2 * order; ++i) h += ",theta_star_" + std::to_string(i);
  return h;
}

void write_trace_csv(std::ostream& out, const Trace& trace) {
  out << trace_csv_header(trace.order) << '\n';
  for (const auto& row : trace.rows) {
    out << row.t;
    for (double v : {row.y, row.u, row.ystar, row.d, row.d_delta, row.e}) out << ',' << format_double(v);
    out << ',' << row.rho;
    out << ',' << format_double(row.V) << ',' << format_double(row.phi_norm);
    for (Eigen::Index i = 0; i < row.theta_hat.size(); ++i) out << ',' << format_double(row.theta_hat(i));
    for (Eigen::Index i = 0; i < row.theta_star.size(); ++i) out << ',' << format_double(row.theta_star(i));
    out << '\n';
  }
}

void write_analysis_csv(std::ostream& out, const AnalysisRows& rows) {
  out << "metric,value\n";
  for (const auto& [name, value] : rows) out << name << ',' << format_double(value) << '\n';
}

}  // namespace ppac
