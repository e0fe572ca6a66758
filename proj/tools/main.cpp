#include <vector>

#include "chromalex/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return chromalex::run_cli(args);
}
