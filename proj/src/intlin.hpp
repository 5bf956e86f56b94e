#pragma once

#include <cstdint>
#include <optional>
#include <vector>

// Tiny exact linear algebra over Z (rational elimination with overflow
// guards).  Only used for stabilizer-lattice computations, where matrices
// are k x r with k <= 4 and small entries.

namespace epka::detail {

using IntMatrix = std::vector<std::vector<std::int64_t>>;  // row-major

int rank_over_q(const IntMatrix& mat);

// Basis of the rational kernel, scaled to integer vectors.
std::vector<std::vector<std::int64_t>> kernel_basis(const IntMatrix& mat);

}  // namespace epka::detail
