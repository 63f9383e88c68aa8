#pragma once

#include <iosfwd>

namespace octoslice::cli {

// Exit codes: 0 success or pass, 1 verification failure, 2 usage or parse error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace octoslice::cli
