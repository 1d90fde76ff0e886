/*
   Copyright 2026 the raddiff authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/
#include "raddiff/kernels.hpp"

#include <cstdlib>
#include <cstring>

#include "raddiff/common.hpp"

namespace raddiff::kernels {

namespace avx2 {

bool available() {
#if defined(RADDIFF_BUILD_AVX2) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

#if !defined(RADDIFF_BUILD_AVX2)
// Stubs so the symbols exist on builds without the AVX2 translation unit.
// available() is false there, so these are never dispatched to.
double dot(std::size_t n, const double* x, const double* y) { return scalar::dot(n, x, y); }
void axpy(std::size_t n, double a, const double* x, double* y) { scalar::axpy(n, a, x, y); }
void axpby(std::size_t n, double a, const double* x, double b, const double* y, double* out) {
    scalar::axpby(n, a, x, b, y, out);
}
double absmax(std::size_t n, const double* x) { return scalar::absmax(n, x); }
#endif

}  // namespace avx2

namespace {

const Dispatch kScalarTable{scalar::dot, scalar::axpy, scalar::axpby, scalar::absmax, "scalar"};
const Dispatch kAvx2Table{avx2::dot, avx2::axpy, avx2::axpby, avx2::absmax, "avx2"};

const Dispatch* g_active = nullptr;

const Dispatch* select_default() {
    if (const char* env = std::getenv("RADDIFF_KERNELS")) {
        if (std::strcmp(env, "scalar") == 0) return &kScalarTable;
        if (std::strcmp(env, "avx2") == 0 && avx2::available()) return &kAvx2Table;
    }
    return avx2::available() ? &kAvx2Table : &kScalarTable;
}

}  // namespace

const Dispatch& active() {
    if (!g_active) g_active = select_default();
    return *g_active;
}

void force_backend(const char* name) {
    if (std::strcmp(name, "scalar") == 0) {
        g_active = &kScalarTable;
    } else if (std::strcmp(name, "avx2") == 0) {
        if (!avx2::available()) throw ConfigError("kernel backend 'avx2' not available on this CPU/build");
        g_active = &kAvx2Table;
    } else {
        throw ConfigError(std::string("unknown kernel backend '") + name + "' (scalar|avx2)");
    }
}

}  // namespace raddiff::kernels
