#include "cli.hpp"

int main(int argc, char** argv) {
    return robust_pricing::cli::run(argc, argv, std::cout, std::cerr);
}
