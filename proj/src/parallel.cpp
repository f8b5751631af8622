#include "bergkern/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace bergkern {

namespace {
std::atomic<unsigned> thread_limit{0};
}

void set_thread_limit(unsigned threads)
{
   thread_limit = threads;
}

unsigned default_threads()
{
   if (const unsigned limit = thread_limit.load())
      return limit;
   if (const char* env = std::getenv("BERGKERN_THREADS")) {
      try {
         const long v = std::stol(env);
         if (v > 0)
            return static_cast<unsigned>(v);
      } catch (const std::exception&) {
      }
   }
   return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body, unsigned threads)
{
   const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), count);
   if (workers <= 1) {
      for (std::size_t i = 0; i < count; ++i)
         body(i);
      return;
   }

   std::atomic<std::size_t> next{0};
   std::exception_ptr failure;
   std::mutex failure_mutex;
   auto work = [&] {
      for (std::size_t i = next++; i < count; i = next++) {
         try {
            body(i);
         } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure)
               failure = std::current_exception();
         }
      }
   };

   std::vector<std::jthread> pool;
   pool.reserve(workers - 1);
   for (std::size_t t = 0; t + 1 < workers; ++t)
      pool.emplace_back(work);
   work();
   pool.clear();
   if (failure)
      std::rethrow_exception(failure);
}

} // namespace bergkern
