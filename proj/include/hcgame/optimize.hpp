#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hcgame {

struct ScalarMaximum {
    double x = 0;
    double value = 0;
    int iterations = 0;
};

struct GridGoldenOptions {
    int grid_points = 4096;
    /// Stop once the bracket is at most this wide...
    double abs_tol = 1e-12;
    /// ...and also at most this fraction of |x|, so maximizers near zero keep
    /// their relative precision.
    double rel_tol = 1e-9;
    int max_iterations = 5000;
};

/// Maximizes f on [lo, hi]: evaluate an evenly spaced grid (endpoints
/// included), then run golden-section search on the two cells around the best
/// grid point. The grid protects against multiple local maxima, the golden
/// search only needs unimodality inside one cell pair.
template <class F>
ScalarMaximum grid_golden_maximize(F&& f, double lo, double hi, const GridGoldenOptions& opt = {}) {
    if (!(hi > lo) || opt.grid_points < 3) {
        throw std::invalid_argument("grid_golden_maximize needs lo < hi and at least 3 grid points");
    }
    const int n = opt.grid_points;
    const double step = (hi - lo) / (n - 1);
    auto grid_x = [&](int k) { return k == n - 1 ? hi : lo + step * k; };

    int best_k = 0;
    double best_v = f(grid_x(0));
    for (int k = 1; k < n; k++) {
        const double v = f(grid_x(k));
        if (v > best_v) {
            best_v = v;
            best_k = k;
        }
    }

    double a = grid_x(std::max(best_k - 1, 0));
    double b = grid_x(std::min(best_k + 1, n - 1));
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    int it = 0;
    for (; it < opt.max_iterations; it++) {
        const double width = b - a;
        const double scale = std::max(std::abs(a), std::abs(b));
        if (width <= opt.abs_tol && width <= opt.rel_tol * scale) {
            break;
        }
        if (!(c > a && d < b && c < d)) {
            break;  // bracket exhausted in floating point
        }
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }

    const double x = 0.5 * (a + b);
    const double v = f(x);
    ScalarMaximum out{x, v, it};
    if (best_v > v) {
        out.x = grid_x(best_k);
        out.value = best_v;
    }
    return out;
}

}  // namespace hcgame
