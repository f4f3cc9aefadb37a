#ifndef CURV_CLI_HPP
#define CURV_CLI_HPP

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace curv {

struct CommandResult {
  int exit_code = 0;  // 0 success, 1 negative property verdict, 2 input error
  std::string human;
  nlohmann::json report;
};

/// Full command dispatch; argv excludes the program name. Never throws:
/// errors become exit code 2 with the message in `human`.
CommandResult run_command(const std::vector<std::string>& args);

/// The sign/index conventions every report carries.
nlohmann::json convention_block();

}  // namespace curv

#endif
