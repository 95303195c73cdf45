#pragma once

#include "swnoon/kernels.hpp"

namespace swnoon::kernels::detail {

const KernelTable& scalar_table();

#if defined(SWNOON_HAVE_AVX2_TU)
const KernelTable& avx2_table();
#endif

}  // namespace swnoon::kernels::detail
