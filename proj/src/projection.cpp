#include "scl/projection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace scl {

ProjectionResult project_sparse(const Vector& v, Index s) {
    const Index p = v.size();
    if (s < 0 || s > p) throw std::invalid_argument("project_sparse: need 0 <= s <= p");

    ProjectionResult res;
    if (s == p) {
        res.vector = v;
        res.kept.resize(p);
        std::iota(res.kept.begin(), res.kept.end(), Index{0});
        return res;
    }
    res.vector = Vector::Zero(p);
    if (s == 0) return res;

    // Order by magnitude descending, index ascending at equal magnitude; the
    // first s entries under this order are the kept set.
    std::vector<Index> idx(p);
    std::iota(idx.begin(), idx.end(), Index{0});
    auto before = [&](Index a, Index b) {
        const double ma = std::abs(v[a]);
        const double mb = std::abs(v[b]);
        return ma > mb || (ma == mb && a < b);
    };
    std::nth_element(idx.begin(), idx.begin() + (s - 1), idx.end(), before);

    res.kept.assign(idx.begin(), idx.begin() + s);
    std::sort(res.kept.begin(), res.kept.end());
    for (Index i : res.kept) res.vector[i] = v[i];

    // idx[s-1] is the s-th entry in the order; the best dropped entry is the
    // order-minimum of the remainder.
    const double kept_min = std::abs(v[idx[s - 1]]);
    const double dropped_max = std::abs(v[*std::min_element(idx.begin() + s, idx.end(), before)]);
    res.tie_broken = kept_min != 0.0 && kept_min == dropped_max;
    return res;
}

Iterate project_pair(const Vector& stacked, Index p1, const SparsityBudget& budget) {
    const Index p2 = stacked.size() - p1;
    if (p1 < 0 || p2 < 0) throw std::invalid_argument("project_pair: bad split point");
    ProjectionResult r1 = project_sparse(stacked.head(p1), budget.s1);
    ProjectionResult r2 = project_sparse(stacked.tail(p2), budget.s2);
    return Iterate(std::move(r1.vector), std::move(r2.vector));
}

}  // namespace scl
