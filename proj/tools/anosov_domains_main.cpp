#include <string>
#include <vector>

#include "anosov/cli.hpp"

int main(int argc, char** argv) { return anosov::cli::run(std::vector<std::string>(argv + 1, argv + argc)); }
