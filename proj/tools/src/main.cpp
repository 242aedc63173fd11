#include <iostream>
#include <string>
#include <vector>

#include "cpcp_cli/cli.hpp"

int main(int argc, char** argv) {
  return cpcp::cli::run(std::vector<std::string>(argv, argv + argc), std::cout,
                        std::cerr);
}
