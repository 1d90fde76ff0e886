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

// AVX2+FMA kernel variants. This translation unit is the only one compiled
// with -mavx2 -mfma; callers must check avx2::available() before dispatching
// here. Field buffers are not guaranteed to be 32-byte aligned, so all
// loads/stores are unaligned.

#include "raddiff/kernels.hpp"

#include <cmath>
#include <immintrin.h>

namespace raddiff::kernels::avx2 {

double dot(std::size_t n, const double* x, const double* y) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    }
    __m256d acc = _mm256_add_pd(acc0, acc1);
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; i < n; ++i) s += x[i] * y[i];
    return s;
}

void axpy(std::size_t n, double a, const double* x, double* y) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vy = _mm256_loadu_pd(y + i);
        vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
        _mm256_storeu_pd(y + i, vy);
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

void axpby(std::size_t n, double a, const double* x, double b, const double* y, double* out) {
    const __m256d va = _mm256_set1_pd(a);
    const __m256d vb = _mm256_set1_pd(b);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d t = _mm256_mul_pd(vb, _mm256_loadu_pd(y + i));
        t = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), t);
        _mm256_storeu_pd(out + i, t);
    }
    for (; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

double absmax(std::size_t n, const double* x) {
    const __m256d signmask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    __m256d vmax = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        vmax = _mm256_max_pd(vmax, _mm256_and_pd(signmask, _mm256_loadu_pd(x + i)));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, vmax);
    double m = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
    for (; i < n; ++i) m = std::max(m, std::fabs(x[i]));
    return m;
}

}  // namespace raddiff::kernels::avx2
