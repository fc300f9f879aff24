#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  const auto outcome = twistsig::cli::parse_and_dispatch(std::vector<std::string>(argv + 1, argv + argc));
  std::cout << outcome.out;
  std::cerr << outcome.err;
  return outcome.status;
}
