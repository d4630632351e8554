#pragma once

#include <cstddef>
#include <functional>

namespace disclab {

/// Upper bound on worker threads for internal loops. Initialised from the
/// DISCLAB_THREADS environment variable (0 or unset = hardware concurrency).
std::size_t thread_cap();
/// Overrides the cap for the rest of the process; 0 restores "auto".
void set_thread_cap(std::size_t threads);

/// Runs body(block) for block in [0, blocks) on up to thread_cap() threads.
///
/// Callers write per-block results into preallocated slots and combine them
/// in block order afterwards, so results never depend on the thread count.
void parallel_for_blocks(std::size_t blocks, const std::function<void(std::size_t)>& body);

} // namespace disclab
