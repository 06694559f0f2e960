#ifndef NCL_COMMON_HPP
#define NCL_COMMON_HPP

#include <atomic>
#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace ncl {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using cplx = std::complex<double>;

// Error taxonomy; the CLI maps these onto exit codes (usage 2, budget 3,
// everything else 1).
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct usage_error : error {
    using error::error;
};
struct budget_error : error {
    using error::error;
};
struct ambiguous_weight_error : error {
    using error::error;
};
struct reconstruction_error : error {
    using error::error;
};
struct base_mismatch_error : error {
    using error::error;
};
struct stabilization_error : error {
    using error::error;
};
struct nonminimal_model_error : error {
    using error::error;
};
struct cannot_split_error : error {
    using error::error;
};

// Global run configuration (CLI flags / env flow into one of these).
struct RunConfig {
    int cutoff = 6;                     // max place degree / prime bound exponent
    double tol_identity = 1e-9;         // numeric identity tolerance
    double tol_cluster = 1e-6;          // relative root-clustering tolerance
    u64 counting_budget = 100000000ULL; // point evaluations per call
    std::string cache_dir;              // empty = no cache
    std::string format = "json";        // json | csv
    int threads = 0;                    // 0 = hardware concurrency
};

inline int effective_threads(int requested) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (requested <= 0) return static_cast<int>(hw);
    return requested;
}

// Deterministic parallel map: the index range is cut into chunks of a fixed
// size and per-chunk results are combined in chunk order, so the result does
// not depend on the thread count.
template <class T>
std::vector<T> parallel_chunks(u64 n, int threads,
                               const std::function<T(u64, u64)>& chunk_fn,
                               u64 chunk_size = 1 << 14) {
    if (n == 0) return {};
    int tc = effective_threads(threads);
    u64 chunks = (n + chunk_size - 1) / chunk_size;
    u64 per = chunk_size;
    std::vector<T> results(chunks);
    std::vector<std::thread> pool;
    std::atomic<u64> next{0};
    auto worker = [&]() {
        for (;;) {
            u64 c = next.fetch_add(1);
            if (c >= chunks) break;
            u64 lo = c * per, hi = std::min(n, lo + per);
            if (lo < hi) results[c] = chunk_fn(lo, hi);
        }
    };
    for (int t = 1; t < tc; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    return results;
}

// Kahan compensated accumulator for real and complex sums.
template <class T>
struct Kahan {
    T sum{};
    T carry{};
    void add(T v) {
        T y = v - carry;
        T t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    T value() const { return sum; }
};

// FNV-1a, used for cache keys of canonical spec serializations.
inline u64 fnv1a(const std::string& s) {
    u64 h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

} // namespace ncl

#endif
