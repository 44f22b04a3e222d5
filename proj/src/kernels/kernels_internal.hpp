#pragma once

#include "jointmix/kernels.hpp"

namespace jointmix::kernels::detail {

#if defined(JOINTMIX_HAVE_AVX2)
const KernelTable* avx2_kernels() noexcept;
#endif
#if defined(JOINTMIX_HAVE_NEON)
const KernelTable* neon_kernels() noexcept;
#endif

}  // namespace jointmix::kernels::detail
