#include <iostream>
#include <string>
#include <vector>

#include "anm/cli.hpp"

int main(int argc, char** argv)
{
    return anm::cli_main(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
