#include "kic/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace kic {

int resolve_jobs(int requested) {
    if (const char* env = std::getenv("KIC_JOBS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    if (requested > 0) return requested;
    unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

void parallel_chunks(std::uint64_t total, int jobs,
                     const std::function<void(int, std::uint64_t, std::uint64_t)>& fn) {
    jobs = resolve_jobs(jobs);
    if (total == 0) return;
    std::uint64_t workers = std::min<std::uint64_t>(static_cast<std::uint64_t>(jobs), total);
    if (workers <= 1) {
        fn(0, 0, total);
        return;
    }
    std::vector<std::thread> threads;
    threads.reserve(static_cast<size_t>(workers));
    std::uint64_t chunk = total / workers;
    std::uint64_t extra = total % workers;
    std::uint64_t begin = 0;
    for (std::uint64_t w = 0; w < workers; ++w) {
        std::uint64_t end = begin + chunk + (w < extra ? 1 : 0);
        threads.emplace_back(fn, static_cast<int>(w), begin, end);
        begin = end;
    }
    for (auto& t : threads) t.join();
}

}  // namespace kic
