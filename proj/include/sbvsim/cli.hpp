#pragma once

namespace sbvsim::cli {

/// Entry point shared by the sbvsim binary and the tests.
/// Exit codes: 0 success, 1 usage error, 2 config/validation error,
/// 3 runtime/domain error.
int run(int argc, const char* const* argv);

} // namespace sbvsim::cli
