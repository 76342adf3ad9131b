#include "interprime/parallel.hpp"

namespace interprime {

namespace {
std::atomic<unsigned> g_threads{0};
}

void set_thread_count(unsigned threads) { g_threads.store(threads); }

unsigned thread_count()
{
    unsigned t = g_threads.load();
    if (t != 0) return t;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

}  // namespace interprime
