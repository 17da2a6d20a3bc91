#include "cfilt/nelder_mead.hpp"

#include "cfilt/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace cfilt {

namespace {

void project(std::vector<double>& x) {
    for (double& v : x) v = std::clamp(v, 0.0, 1.0);
}

}  // namespace

SimplexResult minimize_in_unit_box(const Objective& f, std::vector<double> start, const SimplexOptions& opts) {
    if (opts.max_evals < 1) throw SpecError("simplex search needs at least one evaluation");
    const std::size_t n = start.size();
    project(start);

    SimplexResult r;
    auto eval = [&](const std::vector<double>& x) {
        const double v = f(x);
        ++r.evaluations;
        const double prev = r.best_history.empty() ? v : r.best_history.back();
        r.best_history.push_back(std::min(prev, v));
        return v;
    };
    auto budget_left = [&] { return r.evaluations < opts.max_evals; };

    std::vector<std::vector<double>> pts{start};
    std::vector<double> vals{eval(start)};

    // Axis-aligned start simplex; step away from the nearer face.
    for (std::size_t i = 0; i < n && budget_left(); ++i) {
        auto p = start;
        p[i] += p[i] + opts.initial_step <= 1.0 ? opts.initial_step : -opts.initial_step;
        project(p);
        vals.push_back(eval(p));
        pts.push_back(std::move(p));
    }

    std::vector<std::size_t> order(pts.size());
    auto sort_simplex = [&] {
        order.resize(pts.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return vals[a] < vals[b]; });
        std::vector<std::vector<double>> p2;
        std::vector<double> v2;
        for (auto k : order) {
            p2.push_back(std::move(pts[k]));
            v2.push_back(vals[k]);
        }
        pts.swap(p2);
        vals.swap(v2);
    };

    if (pts.size() == n + 1 && n > 0) {
        while (budget_left()) {
            sort_simplex();

            double size = 0.0;
            for (std::size_t k = 1; k <= n; ++k)
                for (std::size_t i = 0; i < n; ++i) size = std::max(size, std::abs(pts[k][i] - pts[0][i]));
            if (std::abs(vals[n] - vals[0]) <= opts.f_tol * (1.0 + std::abs(vals[0])) && size <= opts.x_tol) {
                r.converged = true;
                break;
            }

            std::vector<double> centroid(n, 0.0);
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t i = 0; i < n; ++i) centroid[i] += pts[k][i] / static_cast<double>(n);

            auto along = [&](double t) {
                std::vector<double> p(n);
                for (std::size_t i = 0; i < n; ++i) p[i] = centroid[i] + t * (pts[n][i] - centroid[i]);
                project(p);
                return p;
            };

            auto xr = along(-1.0);
            const double fr = eval(xr);
            if (fr < vals[0]) {
                if (!budget_left()) {
                    pts[n] = std::move(xr);
                    vals[n] = fr;
                    break;
                }
                auto xe = along(-2.0);
                const double fe = eval(xe);
                if (fe < fr) {
                    pts[n] = std::move(xe);
                    vals[n] = fe;
                } else {
                    pts[n] = std::move(xr);
                    vals[n] = fr;
                }
                continue;
            }
            if (fr < vals[n - 1]) {
                pts[n] = std::move(xr);
                vals[n] = fr;
                continue;
            }
            if (!budget_left()) break;

            const bool outside = fr < vals[n];
            auto xc = along(outside ? -0.5 : 0.5);
            const double fc = eval(xc);
            if (fc < (outside ? fr : vals[n])) {
                pts[n] = std::move(xc);
                vals[n] = fc;
                continue;
            }

            // Shrink toward the best vertex.
            for (std::size_t k = 1; k <= n && budget_left(); ++k) {
                for (std::size_t i = 0; i < n; ++i) pts[k][i] = pts[0][i] + 0.5 * (pts[k][i] - pts[0][i]);
                vals[k] = eval(pts[k]);
            }
        }
    } else if (n == 0) {
        r.converged = true;
    }

    sort_simplex();
    r.x = pts.front();
    r.value = vals.front();
    return r;
}

std::vector<double> halton_point(std::uint64_t index, int dims, std::uint64_t seed) {
    static constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};
    if (dims < 0 || dims > static_cast<int>(std::size(kPrimes)))
        throw SpecError("halton_point supports up to 16 dimensions");

    // mt19937_64 output is fixed by the standard; distributions are not.
    std::mt19937_64 rng(seed);
    std::vector<double> x(dims);
    for (int d = 0; d < dims; ++d) {
        const double shift = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        double value = 0.0;
        double inv = 1.0 / kPrimes[d];
        double scale = inv;
        for (std::uint64_t i = index + 1; i > 0; i /= kPrimes[d]) {
            value += static_cast<double>(i % kPrimes[d]) * scale;
            scale *= inv;
        }
        x[d] = std::fmod(value + shift, 1.0);
    }
    return x;
}

}  // namespace cfilt
