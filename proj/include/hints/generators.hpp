#pragma once

#include "hints/instance.hpp"

namespace hints {

// Concentric-squares scenario: tree R > A > {B, C, D}, margins on B and C,
// data pulling C (and B when the grid is large enough) into interior rings
// that no single binary expansion can reach from the all-R start. Fully
// deterministic in (width, height).
Instance nested_squares_instance(int width, int height);

// Random instance: random tree over `labels` labels, data in [-5, 5],
// occasional margins, stars and contrast entries. Deterministic in the seed
// across platforms.
Instance random_instance(int width, int height, int labels, uint64_t seed);

}  // namespace hints
