#include "pisim/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace pisim::kern {
namespace {

const Backend* select_default() {
    if (const char* env = std::getenv("PISIM_KERNELS")) {
        if (std::strcmp(env, "scalar") == 0) return &scalar_backend();
        if (std::strcmp(env, "avx2") == 0 && avx2_available()) return &avx2_backend();
    }
    return avx2_available() ? &avx2_backend() : &scalar_backend();
}

const Backend*& active_ptr() {
    static const Backend* p = select_default();
    return p;
}

}  // namespace

const Backend& active() { return *active_ptr(); }

void force_backend(const char* name) {
    if (std::strcmp(name, "scalar") == 0)
        active_ptr() = &scalar_backend();
    else if (std::strcmp(name, "avx2") == 0 && avx2_available())
        active_ptr() = &avx2_backend();
    else
        active_ptr() = select_default();
}

}  // namespace pisim::kern
