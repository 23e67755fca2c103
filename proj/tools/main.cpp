#include <iostream>

#include "mmlp/cli.hpp"

int main(int argc, char** argv) { return mmlp::dispatch(argc, argv, std::cout, std::cerr); }
