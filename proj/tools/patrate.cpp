#include <iostream>

#include <patrate/cli.hpp>

int main(int argc, char** argv) {
    return patrate::run_cli(argc, argv, std::cout, std::cerr);
}
