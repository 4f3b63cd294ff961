#include <iostream>
#include <string>
#include <vector>

#include "stpulse/run_command.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return stpulse::run_command(args, std::cout, std::cerr);
}
