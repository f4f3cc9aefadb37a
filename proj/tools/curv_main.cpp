#include <cstdio>
#include <string>
#include <vector>

#include "curv/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);

  bool json_out = false;
  for (auto it = args.begin(); it != args.end();) {
    if (*it == "--json") {
      json_out = true;
      it = args.erase(it);
    } else {
      ++it;
    }
  }

  curv::CommandResult res = curv::run_command(args);
  if (json_out) {
    std::fputs(res.report.dump(2).c_str(), stdout);
    std::fputc('\n', stdout);
  } else {
    std::fputs(res.human.c_str(), stdout);
  }
  return res.exit_code;
}
