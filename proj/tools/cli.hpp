#pragma once

#include <iosfwd>

namespace boolmodel {

/// Entry point of the boolmodel tool. Results go to the --out path (written
/// atomically) or to `out` when none is given; diagnostics go to `err`.
/// Exit codes: 0 ok, 1 usage, 2 malformed input, 3 violated precondition,
/// 4 numerical failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace boolmodel
