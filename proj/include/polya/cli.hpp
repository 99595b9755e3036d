#pragma once

// polya-lab front end. run() parses arguments, executes one subcommand,
// writes its artifacts and returns the exit status.

#include <iosfwd>
#include <string>
#include <vector>

namespace polya::cli {

enum Exit : int { kPass = 0, kViolation = 1, kInputError = 2, kNoConvergence = 3 };

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "x", "a:step:b" (inclusive), "log:a:b:n" (n points, geometric) or a
// comma-separated mix of these. Values must be positive and finite; the
// result is sorted with duplicates removed.
std::vector<double> parse_lambda_spec(const std::string& spec);

// Comma-separated numbers.
std::vector<double> parse_number_list(const std::string& s);

}  // namespace polya::cli
