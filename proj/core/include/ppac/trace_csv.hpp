#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "ppac/simulation.hpp"

namespace ppac {

// 17 significant digits, shortest exponent form; round-trips exactly.
[[nodiscard]] std::string format_double(double v);

// t,y,u,ystar,d,ddelta,e,rho,V,phi_norm,theta_hat_1..theta_hat_2n,theta_star_1..theta_star_2n
[[nodiscard]] std::string trace_csv_header(Eigen::Index order);
void write_trace_csv(std::ostream& out, const Trace& trace);

// metric,value rows emitted next to a trace.
using AnalysisRows = std::vector<std::pair<std::string, double>>;
void write_analysis_csv(std::ostream& out, const AnalysisRows& rows);

}  // namespace ppac
