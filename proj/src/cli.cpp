#include "dose/cli.hpp"

#include <cstdio>

namespace dose::cli {

int dispatch(int, char**) {
    std::fprintf(stderr, "dose: not wired up yet\n");
    return 1;
}

}  // namespace dose::cli
