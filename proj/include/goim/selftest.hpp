#pragma once

#include <iosfwd>

namespace goim {

// Runs the module invariant checks and prints one line per check.
// Returns the number of failed checks (0 = all passed). `fast` trims the
// statistical sample sizes so the run stays under a few seconds.
int run_selftest(bool fast, std::ostream& out);

}  // namespace goim
