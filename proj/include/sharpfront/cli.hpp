#pragma once

#include "sharpfront/config.hpp"
#include "sharpfront/error.hpp"

#include <filesystem>
#include <ostream>
#include <string>

namespace sharpfront {

/// Process exit status for an error code: 2 configuration / validation,
/// 3 numerical fault, 4 non-convergence or bracket failure.
int exit_code(ErrorCode code);

/// Runs one subcommand (simulate, threshold, bump, front, lemma22, sweep, check)
/// and writes its artifacts under <output_root>/<command>/. Returns the exit status.
int run_command(const std::string& command, const RunConfig& config,
                const std::filesystem::path& output_root, std::ostream& log, int jobs = 1);

/// Command-line entry point: `sharpfront <command> --config FILE [--set key=value]...`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sharpfront
