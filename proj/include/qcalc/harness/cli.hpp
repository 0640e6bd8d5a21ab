#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qcalc::harness {

/// Exit codes: 0 all PASS, 1 some FAIL, 2 usage or constraint error,
/// 3 evaluation error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qcalc::harness
