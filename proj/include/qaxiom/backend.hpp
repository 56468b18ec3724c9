#pragma once

namespace qaxiom {

/// Which implementation of a data-parallel kernel to run. Both produce the
/// same numbers: the OpenMP kernels reduce over fixed chunks in a fixed
/// order, so results do not depend on the thread count.
enum class Backend { serial, openmp };

/// openmp when the library was built with OpenMP and more than one thread
/// is available, serial otherwise.
Backend default_backend();

}  // namespace qaxiom
