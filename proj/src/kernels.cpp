#include "dqml/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace dqml::kern {

#if defined(DQML_BUILD_AVX2)
const Kernels* avx2_table();  // defined in kernels_avx2.cpp
#endif

const Kernels* avx2() {
#if defined(DQML_BUILD_AVX2)
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
        return avx2_table();
#endif
    return nullptr;
}

namespace {

const Kernels& select() {
    if (const char* env = std::getenv("DQML_KERNELS")) {
        if (std::strcmp(env, "scalar") == 0)
            return scalar();
        if (std::strcmp(env, "avx2") == 0 && avx2())
            return *avx2();
    }
    if (const Kernels* k = avx2())
        return *k;
    return scalar();
}

}  // namespace

const Kernels& active() {
    static const Kernels& k = select();
    return k;
}

}  // namespace dqml::kern
