#include <string>
#include <vector>

#include "digwin/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return digwin::run_cli(args);
}
