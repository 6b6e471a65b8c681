#include "mbasynth/parallel.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace mbasynth {

ThreadBackend::ThreadBackend(unsigned workers, std::uint64_t min_parallel)
    : workers_(workers != 0 ? workers : std::max(1u, std::thread::hardware_concurrency())),
      min_parallel_(min_parallel) {}

void ThreadBackend::run(std::uint64_t count, const RangeBody& body) {
    if (count == 0) return;
    if (workers_ == 1 || count < min_parallel_) {
        body(0, 0, count);
        return;
    }
    const std::uint64_t parts = std::min<std::uint64_t>(workers_, count);
    const std::uint64_t base = count / parts;
    const std::uint64_t extra = count % parts;

    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto guarded = [&](unsigned worker, std::uint64_t begin, std::uint64_t end) {
        try {
            body(worker, begin, end);
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    };

    std::vector<std::jthread> threads;
    threads.reserve(parts - 1);
    std::uint64_t begin = 0;
    std::uint64_t first_end = 0;
    for (std::uint64_t p = 0; p < parts; ++p) {
        const std::uint64_t end = begin + base + (p < extra ? 1 : 0);
        if (p == 0) {
            first_end = end;
        } else {
            threads.emplace_back(guarded, static_cast<unsigned>(p), begin, end);
        }
        begin = end;
    }
    guarded(0, 0, first_end);
    threads.clear();  // joins
    if (failure) std::rethrow_exception(failure);
}

}  // namespace mbasynth
