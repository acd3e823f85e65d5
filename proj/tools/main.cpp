#include <iostream>
#include <string>
#include <vector>

#include "eigenbound/cli.hpp"

int main(int argc, char** argv) {
    return eigenbound::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
