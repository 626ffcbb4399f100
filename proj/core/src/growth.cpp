#include "rieszsum/growth.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "rieszsum/errors.hpp"

namespace rieszsum::growth {

namespace {

double nan_value() { return std::numeric_limits<double>::quiet_NaN(); }

int thread_count() {
    if (const char* env = std::getenv("RIESZSUM_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1 && v <= 256) return int(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return int(std::clamp<unsigned>(hw ? hw : 1, 1, 8));
}

}  // namespace

double theory_exponent(const identities::RieszCase& c) {
    using identities::CaseKind;
    switch (c.kind) {
        case CaseKind::T3_3: {
            int r1 = c.field_ctx.r1;
            if (c.rho > 0.5 * r1)
                return 2.0 * c.rho + 0.5 -
                       (2.0 * c.rho + 1.0) / (2.0 * (r1 + 1));
            return nan_value();  // identity valid, bound unproven
        }
        case CaseKind::T5_3:
            if (c.rho > 1.0) return (5.0 * c.rho + 1.0) / 3.0;
            return nan_value();
        default:
            throw std::domain_error(
                "error-term study covers the cosine-weighted cases only");
    }
}

double error_term(const identities::RieszCase& c, double x) {
    using identities::CaseKind;
    if (c.kind != CaseKind::T3_3 && c.kind != CaseKind::T5_3)
        throw std::domain_error(
            "error-term study covers the cosine-weighted cases only");
    return identities::lhs_riesz(c, x) - identities::rhs_main(c, x);
}

namespace {

void validate_grid(const std::vector<double>& x_grid) {
    if (x_grid.size() < 8)
        throw DegenerateGrid("grid needs at least 8 points");
    for (std::size_t i = 1; i < x_grid.size(); ++i)
        if (!(x_grid[i] > x_grid[i - 1]))
            throw DegenerateGrid("grid must be strictly increasing");
}

}  // namespace

ExponentFit fit_exponent(const identities::RieszCase& c,
                         const std::vector<double>& x_grid) {
    validate_grid(x_grid);

    std::vector<double> errors(x_grid.size(), 0.0);

    int nthreads = std::min<int>(thread_count(), int(x_grid.size()));
    if (nthreads <= 1) {
        for (std::size_t i = 0; i < x_grid.size(); ++i)
            errors[i] = error_term(c, x_grid[i]);
    } else {
        std::exception_ptr first_error;
        std::mutex err_mutex;
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= x_grid.size()) return;
                try {
                    errors[i] = error_term(c, x_grid[i]);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(err_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        };
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
        if (first_error) std::rethrow_exception(first_error);
    }

    return fit_error_sequence(x_grid, errors, theory_exponent(c));
}

ExponentFit fit_error_sequence(const std::vector<double>& x_grid,
                               const std::vector<double>& errors,
                               double theory_slope) {
    validate_grid(x_grid);
    if (errors.size() != x_grid.size())
        throw DegenerateGrid("error sequence length must match the grid");

    ExponentFit fit;
    fit.grid = x_grid;
    fit.errors = errors;

    // Mask zero crossings before the log-log fit. Sampled errors rarely land
    // on zero exactly; a point sits near a crossing when its magnitude drops
    // far below both neighbours, and log|e| there reflects crossing phase, not
    // growth. Dropping those points is what keeps the slope reproducible
    // between grids.
    std::size_t n = fit.errors.size();
    double emax = 0.0;
    for (double e : fit.errors) emax = std::max(emax, std::abs(e));
    std::size_t vanished = 0;
    std::vector<bool> masked(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        double ae = std::abs(fit.errors[i]);
        if (ae == 0.0 || ae < 1e-12 * emax) {
            masked[i] = true;
            ++vanished;
        }
    }
    if (vanished * 2 > n)
        throw DegenerateGrid("more than half the error values vanish");
    for (std::size_t i = 0; i < n; ++i) {
        double nb = 0.0;
        if (i > 0) nb = std::max(nb, std::abs(fit.errors[i - 1]));
        if (i + 1 < n) nb = std::max(nb, std::abs(fit.errors[i + 1]));
        if (std::abs(fit.errors[i]) < 0.2 * nb) masked[i] = true;
    }
    auto accumulate = [&](bool crossing_mask, std::size_t& used, double& sx,
                          double& sy, double& sxx, double& sxy) {
        used = 0;
        sx = sy = sxx = sxy = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double ae = std::abs(fit.errors[i]);
            if (ae == 0.0 || ae < 1e-12 * emax) continue;
            if (crossing_mask && masked[i]) continue;
            double lx = std::log(fit.grid[i]), ly = std::log(ae);
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
            ++used;
        }
    };
    std::size_t used;
    double sx, sy, sxx, sxy;
    accumulate(true, used, sx, sy, sxx, sxy);
    // Heavily oscillatory data can leave too few survivors for a line; fall
    // back to masking exact zeros only rather than fitting two points.
    if (used < 4) accumulate(false, used, sx, sy, sxx, sxy);
    double denom = double(used) * sxx - sx * sx;
    fit.fitted_slope = (double(used) * sxy - sx * sy) / denom;

    fit.theory_slope = theory_slope;
    if (std::isnan(fit.theory_slope)) {
        fit.normalized_sup = nan_value();
    } else {
        double sup = 0.0;
        for (std::size_t i = 0; i < fit.errors.size(); ++i)
            sup = std::max(sup, std::abs(fit.errors[i]) /
                                    std::pow(fit.grid[i], fit.theory_slope + 0.1));
        fit.normalized_sup = sup;
    }
    return fit;
}

std::vector<double> default_error_grid() {
    std::vector<double> g;
    double last = 0.0;
    for (int k = 0; k < 24; ++k) {
        double raw = 20.0 * std::pow(10.0, double(k) / 23.0);
        double x = std::floor(raw) + 0.5;
        if (x <= last) x = last + 1.0;  // keep strictly increasing
        g.push_back(x);
        last = x;
    }
    return g;
}

bool normalized_sup_nonincreasing(const ExponentFit& fit) {
    if (std::isnan(fit.theory_slope) || fit.grid.size() < 4) return false;
    std::size_t half = fit.grid.size() / 2;
    double burn_in_sup = 0.0;
    for (std::size_t i = 0; i < half; ++i)
        burn_in_sup =
            std::max(burn_in_sup, std::abs(fit.errors[i]) /
                                      std::pow(fit.grid[i], fit.theory_slope + 0.1));
    for (std::size_t i = half; i < fit.grid.size(); ++i) {
        double v = std::abs(fit.errors[i]) /
                   std::pow(fit.grid[i], fit.theory_slope + 0.1);
        if (v > burn_in_sup) return false;
    }
    return std::isfinite(burn_in_sup) && burn_in_sup > 0.0;
}

}  // namespace rieszsum::growth
