#ifndef SCMAUDIT_FSUM_HPP
#define SCMAUDIT_FSUM_HPP

#include <cmath>
#include <span>
#include <utility>
#include <vector>

namespace scmaudit {

/// Correctly rounded sum of doubles (Shewchuk partials, same scheme as
/// Python's math.fsum). The result does not depend on the order of the
/// inputs, and exact_sum(-xs) == -exact_sum(xs), which the statistical
/// invariants (shuffle independence, antisymmetry) rely on.
inline double exact_sum(std::span<const double> values) {
    std::vector<double> partials;
    for (double x : values) {
        std::size_t used = 0;
        for (double y : partials) {
            if (std::fabs(x) < std::fabs(y)) std::swap(x, y);
            const double hi = x + y;
            const double lo = y - (hi - x);
            if (lo != 0.0) partials[used++] = lo;
            x = hi;
        }
        partials.resize(used);
        partials.push_back(x);
    }

    double hi = 0.0;
    auto n = partials.size();
    if (n > 0) {
        hi = partials[--n];
        double lo = 0.0;
        while (n > 0) {
            const double x = hi;
            const double y = partials[--n];
            hi = x + y;
            const double yr = hi - x;
            lo = y - yr;
            if (lo != 0.0) break;
        }
        // half-even rounding across the remaining partials
        if (n > 0 && ((lo < 0.0 && partials[n - 1] < 0.0) ||
                      (lo > 0.0 && partials[n - 1] > 0.0))) {
            const double y = lo * 2.0;
            const double x = hi + y;
            if (y == x - hi) hi = x;
        }
    }
    return hi;
}

}  // namespace scmaudit

#endif  // SCMAUDIT_FSUM_HPP
