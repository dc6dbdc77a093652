#include "sbvsim/cli.hpp"

int main(int argc, char** argv) {
    return sbvsim::cli::run(argc, argv);
}
