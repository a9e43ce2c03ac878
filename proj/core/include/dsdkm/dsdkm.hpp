#ifndef DSDKM_DSDKM_HPP
#define DSDKM_DSDKM_HPP

#include "dsdkm/dataset.hpp"
#include "dsdkm/evaluate.hpp"
#include "dsdkm/io.hpp"
#include "dsdkm/kmeans.hpp"
#include "dsdkm/metrics.hpp"
#include "dsdkm/normalize.hpp"
#include "dsdkm/sweep.hpp"

namespace dsdkm {

inline constexpr const char* version = "0.1.0";

} // namespace dsdkm

#endif
