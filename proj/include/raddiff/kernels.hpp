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
#pragma once

#include <cstddef>

// Data-parallel inner loops used by the field containers and steppers.
// Each kernel exists as a scalar reference implementation and, on x86-64
// builds, an AVX2+FMA variant. The active set is chosen once at runtime;
// the scalar path is the semantics oracle and the variants are
// equivalence-tested against it (see tests/test_kernels.cpp).

namespace raddiff::kernels {

namespace scalar {
double dot(std::size_t n, const double* x, const double* y);
void axpy(std::size_t n, double a, const double* x, double* y);
void axpby(std::size_t n, double a, const double* x, double b, const double* y, double* out);
double absmax(std::size_t n, const double* x);
}  // namespace scalar

namespace avx2 {
bool available();  // compiled in AND supported by this CPU
double dot(std::size_t n, const double* x, const double* y);
void axpy(std::size_t n, double a, const double* x, double* y);
void axpby(std::size_t n, double a, const double* x, double b, const double* y, double* out);
double absmax(std::size_t n, const double* x);
}  // namespace avx2

struct Dispatch {
    double (*dot)(std::size_t, const double*, const double*);
    void (*axpy)(std::size_t, double, const double*, double*);
    void (*axpby)(std::size_t, double, const double*, double, const double*, double*);
    double (*absmax)(std::size_t, const double*);
    const char* name;
};

/// Active kernel set. Selected on first use: AVX2 when the CPU supports it
/// (overridable with RADDIFF_KERNELS=scalar|avx2), scalar otherwise.
const Dispatch& active();

/// Force a backend by name ("scalar" or "avx2"); throws ConfigError on an
/// unknown or unavailable backend. Intended for tests and benchmarking.
void force_backend(const char* name);

inline double dot(std::size_t n, const double* x, const double* y) { return active().dot(n, x, y); }
inline void axpy(std::size_t n, double a, const double* x, double* y) { active().axpy(n, a, x, y); }
inline void axpby(std::size_t n, double a, const double* x, double b, const double* y, double* out) {
    active().axpby(n, a, x, b, y, out);
}
inline double absmax(std::size_t n, const double* x) { return active().absmax(n, x); }

}  // namespace raddiff::kernels
