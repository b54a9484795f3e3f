#include "hqnn/rng.hpp"

#include <numeric>

namespace hqnn {

std::vector<int> seeded_permutation(std::size_t n, std::uint64_t seed) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Rng rng(seed);
    shuffle(perm, rng);
    return perm;
}

} // namespace hqnn
