#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace homsym::cli {

// Full command-line surface, callable in-process. args excludes the program
// name. Results go to out, diagnostics to err. Returns 0 on success or a
// passed verification, 1 on a failed verification, 2 on usage, parse, or
// I/O errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace homsym::cli
