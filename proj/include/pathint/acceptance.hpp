#pragma once

#include <iosfwd>

namespace pathint {

/// Run every acceptance criterion, print one pass/fail line per criterion,
/// and return the number of failures.
int run_acceptance(std::ostream& out);

}  // namespace pathint
