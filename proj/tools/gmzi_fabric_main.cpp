#include <cstdio>
#include <string>
#include <vector>

#include "gmzi/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  const gmzi::CommandResult result = gmzi::run_cli(args);
  if (!result.output.empty()) std::fputs(result.output.c_str(), stdout);
  if (!result.error.empty()) std::fputs(result.error.c_str(), stderr);
  return result.exit_code;
}
