#include "coulomb/quadrature.hpp"

#include "coulomb/errors.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace coulomb {

namespace {

struct Panel {
    double a, b;
    double fa, fm, fb;
    double simpson;  // single-panel Simpson value
    double value;    // two-panel refinement + Richardson correction
    double error;    // |S2 - S1| / 15
    double fl, fr;   // integrand at the two quarter points
};

// std heap functions keep the worst panel at front
bool better(const Panel& x, const Panel& y) { return x.error < y.error; }

} // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                                    double tol) {
    if (!(lo < hi)) throw ParameterError("integrate_adaptive: need lo < hi");
    if (!(tol > 0.0)) throw ParameterError("integrate_adaptive: tol must be positive");

    std::uint64_t evals = 0;
    auto eval = [&](double x) {
        const double y = f(x);
        ++evals;
        if (!std::isfinite(y))
            throw NonFinite("integrate_adaptive: integrand non-finite at x=" + std::to_string(x));
        return y;
    };

    auto make_panel = [&](double a, double b, double fa, double fm, double fb) {
        Panel p{a, b, fa, fm, fb, 0.0, 0.0, 0.0, 0.0, 0.0};
        const double h = b - a;
        p.simpson = h / 6.0 * (fa + 4.0 * fm + fb);
        const double m = 0.5 * (a + b);
        p.fl = eval(0.5 * (a + m));
        p.fr = eval(0.5 * (m + b));
        const double left = (m - a) / 6.0 * (fa + 4.0 * p.fl + fm);
        const double right = (b - m) / 6.0 * (fm + 4.0 * p.fr + fb);
        const double s2 = left + right;
        p.error = std::abs(s2 - p.simpson) / 15.0;
        p.value = s2 + (s2 - p.simpson) / 15.0;
        if (!std::isfinite(p.value) || !std::isfinite(p.error))
            throw NonFinite("integrate_adaptive: panel arithmetic overflowed near x=" +
                            std::to_string(a));
        return p;
    };

    // a flat initial partition avoids missing narrow peaks by symmetry
    constexpr int kInitialPanels = 16;
    constexpr std::uint64_t kMaxEvaluations = 4'000'000;

    std::vector<Panel> panels;
    panels.reserve(1024);
    {
        std::vector<double> grid(kInitialPanels + 1), fgrid(kInitialPanels + 1);
        for (int i = 0; i <= kInitialPanels; ++i) {
            grid[i] = lo + (hi - lo) * static_cast<double>(i) / kInitialPanels;
            fgrid[i] = eval(grid[i]);
        }
        for (int i = 0; i < kInitialPanels; ++i) {
            const double m = 0.5 * (grid[i] + grid[i + 1]);
            panels.push_back(make_panel(grid[i], grid[i + 1], fgrid[i], eval(m), fgrid[i + 1]));
        }
    }
    std::make_heap(panels.begin(), panels.end(), better);

    double total_value = 0.0, total_error = 0.0;
    for (const Panel& p : panels) {
        total_value += p.value;
        total_error += p.error;
    }

    auto target = [&] { return tol * std::max(std::abs(total_value), 1e-305); };
    std::uint64_t splits = 0;
    while (total_error > target()) {
        if (evals >= kMaxEvaluations)
            throw MaxDepthExceeded("integrate_adaptive: refinement budget exhausted (error " +
                                   std::to_string(total_error) + ")");
        std::pop_heap(panels.begin(), panels.end(), better);
        Panel worst = panels.back();
        panels.pop_back();

        const double m = 0.5 * (worst.a + worst.b);
        if (m <= worst.a || m >= worst.b)
            throw MaxDepthExceeded("integrate_adaptive: panel width at machine resolution");
        Panel left = make_panel(worst.a, m, worst.fa, worst.fl, worst.fm);
        Panel right = make_panel(m, worst.b, worst.fm, worst.fr, worst.fb);

        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        panels.push_back(left);
        std::push_heap(panels.begin(), panels.end(), better);
        panels.push_back(right);
        std::push_heap(panels.begin(), panels.end(), better);

        // refresh the running sums now and then; incremental updates drift
        if (++splits % 4096 == 0) {
            total_value = total_error = 0.0;
            for (const Panel& p : panels) {
                total_value += p.value;
                total_error += p.error;
            }
        }
    }

    total_value = total_error = 0.0;
    for (const Panel& p : panels) {
        total_value += p.value;
        total_error += p.error;
    }
    return QuadratureResult{total_value, total_error, evals};
}

double truncate_upper(const std::function<double(double)>& f, double start, double peak_scale) {
    const double floor = 1e-300 * std::max(peak_scale, 1e-300);
    double t = std::max(start, 1e-8);
    for (int i = 0; i < 2100; ++i) {
        if (std::abs(f(t)) < floor) return t;
        t *= 2.0;
        if (!std::isfinite(t)) break;
    }
    throw NumericError("truncate_upper: integrand does not decay below cutoff");
}

} // namespace coulomb
