#include "bcdi/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace bcdi::fft {
namespace {

enum class PlanKind { C2CForward, C2CInverse, Dct2, Dct3 };

using PlanKey = std::tuple<PlanKind, std::vector<std::size_t>>;

class PlanCache {
public:
    ~PlanCache() {
        for (auto& [key, plan] : plans_) {
            fftw_destroy_plan(plan);
        }
    }

    fftw_plan get(PlanKind kind, std::span<const std::size_t> dims) {
        PlanKey key{kind, std::vector<std::size_t>(dims.begin(), dims.end())};
        std::lock_guard lock(mutex_);
        if (auto it = plans_.find(key); it != plans_.end()) {
            return it->second;
        }
        fftw_plan plan = make(kind, dims);
        if (plan == nullptr) {
            throw NumericalFailure("FFTW failed to create a plan");
        }
        plans_.emplace(std::move(key), plan);
        return plan;
    }

private:
    static fftw_plan make(PlanKind kind, std::span<const std::size_t> dims) {
        std::vector<int> n(dims.begin(), dims.end());
        std::size_t total = 1;
        for (std::size_t d : dims) {
            total *= d;
        }
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        if (kind == PlanKind::C2CForward || kind == PlanKind::C2CInverse) {
            std::vector<fftw_complex> scratch(total);
            const int sign = kind == PlanKind::C2CForward ? FFTW_FORWARD : FFTW_BACKWARD;
            return fftw_plan_dft(static_cast<int>(n.size()), n.data(), scratch.data(), scratch.data(), sign, flags);
        }
        std::vector<double> scratch(total);
        const fftw_r2r_kind r2r = kind == PlanKind::Dct2 ? FFTW_REDFT10 : FFTW_REDFT01;
        std::vector<fftw_r2r_kind> kinds(n.size(), r2r);
        return fftw_plan_r2r(static_cast<int>(n.size()), n.data(), scratch.data(), scratch.data(), kinds.data(), flags);
    }

    std::mutex mutex_;
    std::map<PlanKey, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache instance;
    return instance;
}

std::size_t product(std::span<const std::size_t> dims) {
    std::size_t total = 1;
    for (std::size_t d : dims) {
        total *= d;
    }
    return total;
}

} // namespace

void c2c(std::span<complex> data, std::span<const std::size_t> dims, Direction direction) {
    require(!dims.empty() && dims.size() <= 3, "FFT rank must be 1, 2 or 3");
    for (std::size_t d : dims) {
        require(d > 0, "FFT axis length must be positive");
    }
    require(data.size() == product(dims), "FFT buffer does not match its shape");
    const PlanKind kind = direction == Direction::Forward ? PlanKind::C2CForward : PlanKind::C2CInverse;
    fftw_plan plan = cache().get(kind, dims);
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, ptr, ptr);
}

void dct2_unnormalized(std::span<double> data, std::size_t n) {
    require(n > 0 && data.size() == n * n, "DCT buffer must be a non-empty square image");
    const std::array<std::size_t, 2> dims{n, n};
    fftw_plan plan = cache().get(PlanKind::Dct2, dims);
    fftw_execute_r2r(plan, data.data(), data.data());
}

void dct3_unnormalized(std::span<double> data, std::size_t n) {
    require(n > 0 && data.size() == n * n, "DCT buffer must be a non-empty square image");
    const std::array<std::size_t, 2> dims{n, n};
    fftw_plan plan = cache().get(PlanKind::Dct3, dims);
    fftw_execute_r2r(plan, data.data(), data.data());
}

} // namespace bcdi::fft
