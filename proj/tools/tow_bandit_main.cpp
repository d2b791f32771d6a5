#include "towbandit/cli.hpp"

int main(int argc, char** argv) {
    return towbandit::cli::run_main(argc, argv);
}
