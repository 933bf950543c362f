#include <fftw3.h>

#include <map>
#include <mutex>

#include "fpairs/common.hpp"

namespace fpairs::detail {

namespace {

struct PlanCache {
    std::mutex mu;
    // keyed by (N, sign); plans are created once per size with FFTW_ESTIMATE
    // on an internal buffer and re-executed on that buffer under the lock.
    struct Entry {
        fftw_plan plan = nullptr;
        fftw_complex* buf = nullptr;
        int n = 0;
    };
    std::map<std::pair<int, int>, Entry> entries;

    Entry& get(int n, int sign) {
        auto key = std::make_pair(n, sign);
        auto it = entries.find(key);
        if (it != entries.end()) return it->second;
        Entry e;
        e.n = n;
        e.buf = fftw_alloc_complex(n);
        e.plan = fftw_plan_dft_1d(n, e.buf, e.buf, sign, FFTW_ESTIMATE);
        return entries.emplace(key, e).first->second;
    }
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

} // namespace

// In-place DFT, sign = -1 forward (e^{-2 pi i mk/N}), +1 backward, unnormalized.
void dft(std::vector<cplx>& v, int sign) {
    auto& c = cache();
    std::lock_guard<std::mutex> lock(c.mu);
    auto& e = c.get(static_cast<int>(v.size()), sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD);
    auto* b = reinterpret_cast<cplx*>(e.buf);
    std::copy(v.begin(), v.end(), b);
    fftw_execute(e.plan);
    std::copy(b, b + e.n, v.begin());
}

} // namespace fpairs::detail
