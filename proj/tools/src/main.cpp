#include <iostream>

#include "cqsl/cli/app.hpp"

int main(int argc, char** argv) { return cqsl::cli::run_cli(argc, argv, std::cout, std::cerr); }
