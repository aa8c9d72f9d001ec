#include "spinlab/algebra.hpp"

namespace spinlab {

// Cayley-Dickson doubling of the quaternions with (a, b)(c, d) = (ac - conj(d) b, da + b conj(c)),
// basis e0..e3 = (1, i, j, k; 0) and e4..e7 = (0; 1, i, j, k).
const std::array<std::array<std::int8_t, 8>, 8> kOctonionTable = {{
    {{1, 2, 3, 4, 5, 6, 7, 8}},
    {{2, -1, 4, -3, 6, -5, -8, 7}},
    {{3, -4, -1, 2, 7, 8, -5, -6}},
    {{4, 3, -2, -1, 8, -7, 6, -5}},
    {{5, -6, -7, -8, -1, 2, 3, 4}},
    {{6, 5, -8, 7, -2, -1, -4, 3}},
    {{7, 8, 5, -6, -3, 4, -1, -2}},
    {{8, -7, 6, 5, -4, -3, 2, -1}},
}};

}  // namespace spinlab
