#include <iostream>
#include <string>
#include <vector>

#include "mincyc/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv, argv + argc);
    return mincyc::cli::run_cli(args, std::cout, std::cerr);
}
