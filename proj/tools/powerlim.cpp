#include <iostream>

#include "powerlim/cli/commands.hpp"

int main(int argc, char** argv) {
  return powerlim::cli::run(argc, argv, std::cout, std::cerr);
}
