#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ppac::cli {

enum ExitCode : int { kOk = 0, kInvariantFailure = 1, kConfigError = 2 };

// Named file contents, committed together or not at all.
using Artifacts = std::vector<std::pair<std::string, std::string>>;

// Writes every artifact into dir through temporary files renamed into place;
// on failure nothing new is left behind. Throws std::runtime_error.
void commit_artifacts(const std::filesystem::path& dir, const Artifacts& artifacts);

// Output directory when --out is absent: $PPAC_OUT_DIR, else ./ppac_out.
[[nodiscard]] std::filesystem::path default_out_dir();

// Each returns an ExitCode; diagnostics go to err, summaries to out.
int run_config(const std::filesystem::path& config, const std::filesystem::path& out_dir, std::ostream& out,
               std::ostream& err);
int run_figure(std::string_view id, const std::filesystem::path& out_dir, std::ostream& out, std::ostream& err);
int run_verify(std::string_view suite, std::ostream& out, std::ostream& err);
int run_remark2(std::span<const double> eps, const std::filesystem::path* out_dir, std::ostream& out,
                std::ostream& err);
int print_preset(std::string_view name, std::ostream& out, std::ostream& err);

// Full command line entry point.
int main_entry(int argc, char** argv);

}  // namespace ppac::cli
