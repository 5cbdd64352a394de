#pragma once

#include "gpa/field.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace gpa {

// Explicit count if positive, else NUM_THREADS from the environment, else 1.
inline int thread_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("NUM_THREADS")) {
        int t = std::atoi(env);
        if (t > 0) return t;
    }
    return 1;
}

// Runs f(k) for k < count on `threads` workers; each worker installs `prime`
// as the F_p modulus.  The first exception is rethrown after joining.
template <class F>
void parallel_for(std::size_t count, int threads, std::uint64_t prime, F f) {
    if (threads <= 1 || count <= 1) {
        FpModulus guard(prime);
        for (std::size_t k = 0; k < count; ++k) f(k);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            FpModulus guard(prime);
            try {
                for (std::size_t k; (k = next++) < count;) f(k);
            } catch (...) {
                errors[w] = std::current_exception();
                next = count;
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace gpa
