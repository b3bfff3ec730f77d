#include <iostream>

#include "pacomp/cli.hpp"

int main(int argc, char** argv)
{
    return pacomp::run_cli(argc, argv, std::cout, std::cerr);
}
