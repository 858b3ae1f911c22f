#include <iostream>

#include "sdea/cli.hpp"

int main(int argc, char** argv)
{
    return sdea::cli::main(argc, argv, std::cout, std::cerr);
}
