#include "ifslab/parallel.hpp"

#include <atomic>

namespace ifslab {

namespace {

unsigned hardware_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

std::atomic<unsigned> g_threads{hardware_threads()};

}  // namespace

void set_thread_count(unsigned n) { g_threads.store(n == 0 ? hardware_threads() : n); }

unsigned thread_count() { return g_threads.load(); }

}  // namespace ifslab
