#include <splitroots/cli.hpp>

#include <iostream>

int main(int argc, char** argv) {
    return splitroots::cli::run(argc, argv, std::cout, std::cerr);
}
