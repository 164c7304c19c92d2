#include <iostream>

#include "eigcount/cli.hpp"

int main(int argc, char** argv) {
  return eigcount::cli::dispatch({argv + 1, argv + argc}, std::cout, std::cerr);
}
