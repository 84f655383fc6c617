// SPDX-License-Identifier: Apache-2.0
#include <iostream>

#include "chebresize/cli.hpp"

int main(int argc, char** argv) { return chebresize::cli::run(argc, argv, std::cout, std::cerr); }
