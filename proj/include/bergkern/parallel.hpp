#pragma once

#include <cstddef>
#include <functional>

namespace bergkern {

// Worker count: the limit from set_thread_limit, else BERGKERN_THREADS when
// set to a positive integer, else the hardware concurrency (at least 1).
unsigned default_threads();

// Process-wide override for default_threads; 0 removes it.
void set_thread_limit(unsigned threads);

// Calls body(i) for i in [0, count) on up to `threads` workers. Exceptions
// thrown by body are rethrown on the calling thread (the first one wins).
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                  unsigned threads = default_threads());

} // namespace bergkern
