#include "pll/sweep.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "pll/separatrix.hpp"

namespace pll {

std::vector<double> log_space(double lo, double hi, int count) {
    if (count < 2) throw std::invalid_argument("log_space: count must be >= 2");
    if (!(lo > 0.0) || !(hi > lo))
        throw std::invalid_argument("log_space: need 0 < lo < hi");
    std::vector<double> v(static_cast<std::size_t>(count));
    const double la = std::log10(lo);
    const double lb = std::log10(hi);
    for (int i = 0; i < count; ++i)
        v[static_cast<std::size_t>(i)] =
            std::pow(10.0, la + (lb - la) * i / (count - 1));
    v.front() = lo;
    v.back() = hi;
    return v;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    if (spec.x_values.empty() || spec.tau2_set.empty())
        throw std::invalid_argument("run_sweep: empty grid");
    if (!spec.analytic && !spec.numeric)
        throw std::invalid_argument("run_sweep: no method selected");

    struct Point {
        double x;
        double tau2;
    };
    std::vector<Point> grid;
    for (double tau2 : spec.tau2_set)
        for (double x : spec.x_values) grid.push_back({x, tau2});

    const int methods = (spec.analytic ? 1 : 0) + (spec.numeric ? 1 : 0);
    std::vector<SweepRow> rows(grid.size() * static_cast<std::size_t>(methods));

    auto fill_point = [&](std::size_t gi) {
        const Point pt = grid[gi];
        std::size_t ri = gi * static_cast<std::size_t>(methods);
        auto emit = [&](LockInMethod method) {
            SweepRow& row = rows[ri++];
            row.k0_over_tau1 = pt.x;
            row.tau2 = pt.tau2;
            row.k = spec.slope_k;
            row.method = method;
            row.err_estimate = std::numeric_limits<double>::quiet_NaN();
            try {
                const LoopParameters p(spec.tau1, pt.tau2, pt.x * spec.tau1,
                                       spec.slope_k);
                const LockInResult r = (method == LockInMethod::Analytic)
                                           ? lock_in_analytic(p)
                                           : lock_in_numeric(p);
                row.omega_l = r.omega_l;
                row.case_tag = r.case_tag;
                if (method == LockInMethod::Numeric)
                    row.err_estimate = r.diagnostics.at("err_estimate");
            } catch (const std::exception& e) {
                row.omega_l = std::numeric_limits<double>::quiet_NaN();
                row.error = e.what();
            }
        };
        if (spec.analytic) emit(LockInMethod::Analytic);
        if (spec.numeric) emit(LockInMethod::Numeric);
    };

    const int jobs = std::max(1, spec.jobs);
    if (jobs == 1) {
        for (std::size_t i = 0; i < grid.size(); ++i) fill_point(i);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i = next.fetch_add(1); i < grid.size();
                 i = next.fetch_add(1))
                fill_point(i);
        };
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return rows;
}

} // namespace pll
