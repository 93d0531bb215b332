// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "boolperc/cli.hpp"

int main(int argc, char** argv) { return boolperc::cli::run_cli(argc, argv, std::cout, std::cerr); }
