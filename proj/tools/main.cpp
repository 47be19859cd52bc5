#include <string>
#include <vector>

#include "mulab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return mulab::cli::run(args);
}
