#pragma once

#include <iosfwd>

namespace rfg::cli {

/// Exit codes: 0 ok, 1 a check failed, 2 usage or domain error,
/// 3 budget exceeded, range exhausted, or inconclusive.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace rfg::cli
