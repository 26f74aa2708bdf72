#pragma once

namespace qosc::parallel {

// Execution policy for the grid kernels.  Every kernel has a serial reference
// implementation and an OpenMP one; results are bitwise identical because the
// parallel variants keep per-row partials and combine them in a fixed order.
enum class Exec { serial, openmp };

// Worker cap: QOSC_THREADS if set (clamped to >= 1), hardware count otherwise.
int max_threads();

// Policy used when a kernel is called without an explicit one.
// QOSC_THREADS=1 selects the serial path.
Exec default_exec();

}  // namespace qosc::parallel

namespace qosc {
using parallel::default_exec;
using parallel::Exec;
using parallel::max_threads;
}  // namespace qosc
