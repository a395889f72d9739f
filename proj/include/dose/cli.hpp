#pragma once

namespace dose::cli {

// Routes argv to one of: gen-dataset | encode | train | extract | eval.
// Returns 0 on success, 1 on usage errors, 2 on data errors.
int dispatch(int argc, char** argv);

}  // namespace dose::cli
