#pragma once

namespace impactum {

// Worker cap used by the compute kernels. Resolution order: programmatic
// override, IMPACTUM_THREADS environment variable, OpenMP default, 1.
int thread_cap();

// Test/CLI hook; pass 0 to clear the override.
void set_thread_cap(int n);

// requested <= 0 means "use thread_cap()".
int resolve_threads(int requested);

} // namespace impactum
