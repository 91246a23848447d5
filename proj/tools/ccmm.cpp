#include "ccmm/cli.hpp"

int main(int argc, char** argv) { return ccmm::cli::run(std::vector<std::string>(argv + 1, argv + argc)); }
