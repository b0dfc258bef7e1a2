#pragma once

#include <string>
#include <vector>

namespace uvarov::cli {

/// Exit codes: 0 success, 1 invalid input, 2 numerical failure.
int dispatch(int argc, const char* const* argv);

/// Worker threads for sweeps: UVAROV_MVOP_THREADS, 0 or unset meaning hardware concurrency.
unsigned sweep_threads();

}  // namespace uvarov::cli
