#pragma once

namespace qhofer {

/// Caps the OpenMP team size from QH_HOFER_THREADS when set to a positive
/// integer. Returns the resulting maximum team size.
int configure_threads_from_env();

int max_threads();

}  // namespace qhofer
