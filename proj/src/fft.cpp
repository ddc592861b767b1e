#include "szlab/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <unordered_map>

namespace szlab::fft {
namespace {

struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
    fftw_complex* in = nullptr;
    fftw_complex* out = nullptr;
};

std::mutex g_mutex;
std::unordered_map<int, PlanPair>& cache() {
    static std::unordered_map<int, PlanPair> c;
    return c;
}

PlanPair& plans_for(int n) {
    auto& c = cache();
    auto it = c.find(n);
    if (it != c.end()) return it->second;
    PlanPair p;
    p.in = fftw_alloc_complex(n);
    p.out = fftw_alloc_complex(n);
    p.fwd = fftw_plan_dft_1d(n, p.in, p.out, FFTW_FORWARD, FFTW_ESTIMATE);
    p.bwd = fftw_plan_dft_1d(n, p.in, p.out, FFTW_BACKWARD, FFTW_ESTIMATE);
    return c.emplace(n, p).first->second;
}

void run(const Complex* in, Complex* out, int n, bool forward_dir) {
    std::lock_guard<std::mutex> lock(g_mutex);
    PlanPair& p = plans_for(n);
    auto* src = reinterpret_cast<Complex*>(p.in);
    std::copy(in, in + n, src);
    fftw_execute(forward_dir ? p.fwd : p.bwd);
    auto* dst = reinterpret_cast<Complex*>(p.out);
    std::copy(dst, dst + n, out);
}

}  // namespace

void forward(const Complex* in, Complex* out, int n) { run(in, out, n, true); }
void backward(const Complex* in, Complex* out, int n) { run(in, out, n, false); }

CVector forward(const CVector& in) {
    CVector out(in.size());
    forward(in.data(), out.data(), static_cast<int>(in.size()));
    return out;
}

CVector backward(const CVector& in) {
    CVector out(in.size());
    backward(in.data(), out.data(), static_cast<int>(in.size()));
    return out;
}

}  // namespace szlab::fft
