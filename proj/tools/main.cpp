#include "twinet/cli.hpp"

int main(int argc, char** argv) {
    return twinet::cli::run(argc, argv);
}
