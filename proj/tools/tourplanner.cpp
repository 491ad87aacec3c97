#include "tourplanner/cli/run.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return tourplanner::cli::run(args);
}
