#pragma once

namespace qwalk::cli {

// Entry point behind the qwalk binary; returns the process exit code
// (0 success, 1 numeric failure, 2 usage error).
int run(int argc, const char* const* argv);

}  // namespace qwalk::cli
