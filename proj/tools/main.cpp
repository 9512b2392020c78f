#include <cstdlib>
#include <iostream>
#include <unistd.h>

#include "cli_app.hpp"

int main(int argc, char** argv) {
  const bool color = ::isatty(STDOUT_FILENO) && std::getenv("NO_COLOR") == nullptr;
  std::vector<std::string> args(argv + 1, argv + argc);
  return pftmip::cli::run(args, std::cout, std::cerr, color);
}
