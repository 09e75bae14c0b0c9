#include "iterfilt/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace iterfilt::fft {

namespace {

// FFTW planning is not thread-safe; executing an existing plan on new arrays
// is. Plans are created once per (size, sign) and kept for the process.
class PlanCache {
public:
    fftw_plan get(int n, int sign) {
        std::lock_guard lock(mutex_);
        auto key = std::make_pair(n, sign);
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;
        std::vector<Complex> in(static_cast<std::size_t>(n));
        std::vector<Complex> out(static_cast<std::size_t>(n));
        fftw_plan plan = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(in.data()),
                                          reinterpret_cast<fftw_complex*>(out.data()), sign,
                                          FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, plan);
        return plan;
    }

    ~PlanCache() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

private:
    std::mutex mutex_;
    std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache instance;
    return instance;
}

std::vector<Complex> transform(std::vector<Complex> in, int sign) {
    std::vector<Complex> out(in.size());
    if (in.empty()) return out;
    fftw_plan plan = cache().get(static_cast<int>(in.size()), sign);
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(in.data()), reinterpret_cast<fftw_complex*>(out.data()));
    return out;
}

}  // namespace

std::vector<Complex> forward(std::span<const double> x) {
    return transform(std::vector<Complex>(x.begin(), x.end()), FFTW_FORWARD);
}

std::vector<Complex> forward(std::span<const Complex> x) {
    return transform(std::vector<Complex>(x.begin(), x.end()), FFTW_FORWARD);
}

std::vector<double> inverse_real(std::span<const Complex> X) {
    auto y = transform(std::vector<Complex>(X.begin(), X.end()), FFTW_BACKWARD);
    const double scale = 1.0 / static_cast<double>(X.size());
    std::vector<double> out(y.size());
    for (std::size_t k = 0; k < y.size(); ++k) out[k] = y[k].real() * scale;
    return out;
}

}  // namespace iterfilt::fft
