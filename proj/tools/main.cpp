#include <iostream>
#include <string>
#include <vector>

#include "specbound/cli.hpp"

int main(int argc, char** argv)
{
    return specbound::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
