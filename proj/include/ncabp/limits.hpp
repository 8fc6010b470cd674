#pragma once

#include <cstdint>

namespace ncabp {

// Process-wide resource caps. Operations that would materialize more than
// max_terms polynomial terms, enumerate more than max_span_elements subspace
// points, or build a matrix with a side above max_matrix_side throw
// resource_error instead of grinding.
struct limits {
    std::uint64_t max_terms = 10'000'000;
    std::uint64_t max_span_elements = std::uint64_t(1) << 24;
    std::uint64_t max_matrix_side = 4096;
};

limits& budget();

}  // namespace ncabp
