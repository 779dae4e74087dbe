#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qastab::cli {

/// Exit status: 0 success, 1 usage/parse/I-O error, 2 hypothesis violation
/// (divergence, overflow, f(0) != 0, divergent series, ...) or an experiment
/// with a non-converged or out-of-bound point.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace qastab::cli
