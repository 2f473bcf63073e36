#include "scl/rng.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace scl {

IndexSet sample_indices(SplitMix64& rng, Index p, Index k) {
    if (k < 0 || k > p) throw std::invalid_argument("sample_indices: need 0 <= k <= p");
    std::vector<Index> pool(p);
    std::iota(pool.begin(), pool.end(), Index{0});
    for (Index i = 0; i < k; ++i) {
        Index j = i + static_cast<Index>(rng.below(static_cast<std::uint64_t>(p - i)));
        std::swap(pool[i], pool[j]);
    }
    IndexSet out(pool.begin(), pool.begin() + k);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace scl
