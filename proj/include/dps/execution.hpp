#pragma once

namespace dps {

// Worker count for the OpenMP kernels. 0 leaves the choice to the OpenMP
// runtime (OMP_NUM_THREADS or the hardware default).
struct Execution {
  int workers = 0;
};

}  // namespace dps
