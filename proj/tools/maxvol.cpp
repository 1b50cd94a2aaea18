#include <iostream>

#include "maxvol/cli.hpp"

int main(int argc, char** argv) {
  try {
    return maxvol::cli::run(argc, argv, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "maxvol: internal error: " << e.what() << '\n';
    return maxvol::cli::kInternalError;
  }
}
