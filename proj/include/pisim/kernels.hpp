#pragma once

#include <cstddef>

// Dense-arithmetic kernels used by the network code. A scalar reference
// implementation always exists; an AVX2/FMA variant is selected at runtime
// when the CPU supports it. Results of the variants agree up to floating
// point reassociation (see tests/test_kernels.cpp).

namespace pisim::kern {

struct Backend {
    const char* name;
    // y = W x + b, W row-major (rows x cols).
    void (*matvec)(const double* w, const double* x, const double* b, double* y,
                   std::size_t rows, std::size_t cols);
    // y += a * x
    void (*axpy)(double a, const double* x, double* y, std::size_t n);
    double (*dot)(const double* a, const double* b, std::size_t n);
    double (*sum_sq)(const double* x, std::size_t n);
    void (*scale)(double a, double* x, std::size_t n);
};

const Backend& scalar_backend();
bool avx2_available();
const Backend& avx2_backend();  // valid only if avx2_available()

// Active backend: AVX2 when available, scalar otherwise. Can be overridden
// with force_backend("scalar"|"avx2"|"auto") or the PISIM_KERNELS env var.
const Backend& active();
void force_backend(const char* name);

}  // namespace pisim::kern
