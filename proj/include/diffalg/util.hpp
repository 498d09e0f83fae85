#pragma once

#include <random>

#include "diffalg/ring.hpp"

namespace diffalg {

/// Small random ring element: a sparse polynomial of bounded degree in at
/// most two generators, optionally divided by localization denominators.
/// Deterministic for a fixed generator state.
RingElem random_elem(std::mt19937_64& rng, const RingPtr& r,
                     uint32_t max_deg = 3);

}  // namespace diffalg
