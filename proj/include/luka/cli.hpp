#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace luka::cli {

/// Runs one command (arguments without the program name). Returns 0 when the
/// verdict holds or the object is valid/certified, 1 when it fails (the witness
/// is printed), 2 on usage or input errors.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace luka::cli
