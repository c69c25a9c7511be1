#pragma once

#include <iosfwd>

namespace hforge::cli {

enum Exit : int { kOk = 0, kNo = 1, kUnknown = 2, kInputError = 3 };

/// Runs one command line. JSON goes to `out` (or --out), a summary to `err`;
/// a space is read from `in` when --space is absent.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err, std::istream& in);

}  // namespace hforge::cli
