#include "dose/cli.hpp"

int main(int argc, char** argv) {
    return dose::cli::dispatch(argc, argv);
}
