#include <rcf/cli.hpp>

#include <iostream>

int main(int argc, char** argv) { return rcf::cli::run(argc, argv, std::cout, std::cerr); }
