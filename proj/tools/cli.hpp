#pragma once

#include <iosfwd>

namespace scf::cli {

// Entry point shared by the executable and the tests. Returns the process
// exit code: 0 success, 2 bad invocation/config/IO, 3 irreducible, 4
// verification failed.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace scf::cli
