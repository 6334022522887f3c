#include "d2ca/cli.hpp"

int main(int argc, char** argv) {
  return d2ca::cli::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
