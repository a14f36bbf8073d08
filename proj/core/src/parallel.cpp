#include "qsdome/parallel.hpp"

#include <atomic>

namespace qsdome {

namespace {
std::atomic<size_t> g_threads{1};
}

void set_thread_count(size_t n) { g_threads = n == 0 ? 1 : n; }
size_t thread_count() { return g_threads; }

}  // namespace qsdome
