#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "psisolve/errors.hpp"

namespace psisolve::cli {

/// Parse whitespace-separated floats from `path` ("-" reads `input`). With
/// `csv_col` set, or a `.csv` suffix, reads that 0-based CSV column and
/// skips a header row when its first cell is non-numeric.
std::vector<double> ingest_data(const std::string& path, std::istream& input,
                                std::optional<int> csv_col = {});

/// Full command dispatch; never calls exit(). Returns the process exit
/// status: 0 computed result (including violated verdicts), 1 input error,
/// 2 solver anomaly.
int run_cli(int argc, const char* const* argv, std::istream& in,
            std::ostream& out, std::ostream& err);

}  // namespace psisolve::cli
