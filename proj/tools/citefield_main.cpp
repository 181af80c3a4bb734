#include "citefield/cli.hpp"

int main(int argc, char** argv) {
    return citefield::run_cli(argc, argv);
}
