#include "rieszsum/meijer.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "rieszsum/errors.hpp"
#include "rieszsum/specfun.hpp"

namespace rieszsum::meijer {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

double c_max_for(int m, double rho) { return (rho - 0.5 * m - 0.5) / (2.0 * m); }

void validate_spec(const MeijerKernelSpec& spec) {
    if (spec.m < 2) throw DegenerateGrid("kernel spec: m >= 2 required");
    // c_max > -1/2 needs rho > 1/2 - m/2; below that no contour both decays
    // past t^{-3/2} and stays right of the s = -1/2 pole.
    if (!(spec.rho > 0.5 - 0.5 * spec.m))
        throw DegenerateGrid("kernel spec: rho > 1/2 - m/2 required");
    if (!(spec.step > 0.0) || !(spec.tail_cutoff > 0.0))
        throw DegenerateGrid("kernel spec: positive step and tail cutoff required");
    double c = spec.contour_abscissa;
    if (!(c > -0.5) || c > c_max_for(spec.m, spec.rho) + 1e-15)
        throw DegenerateGrid(
            "kernel spec: abscissa outside (-1/2, c_max]; integrand would not "
            "decay past t^{-3/2} or the contour crosses the s = -1/2 pole");
}

// Shared quadrature grid for one (m, rho, c, h, T).
struct Grid {
    MeijerKernelSpec spec;
    std::vector<std::complex<double>> w;  // F(c + i t_k) * taper(t_k), k >= 0
    double tail_est = 0.0;                // residual t-integral bound past T
    double peak = 0.0;                    // max |F| on the grid
    mutable std::shared_mutex value_mutex;
    mutable std::unordered_map<long long, KernelValue> values;
};

std::complex<double> integrand_log(const MeijerKernelSpec& spec,
                                   std::complex<double> s) {
    using specfun::log_gamma;
    return double(spec.m) * log_gamma(0.5 + s) - log_gamma(spec.rho + 1.0 - s) -
           double(spec.m - 1) * log_gamma(-s);
}

std::shared_ptr<Grid> build_grid(MeijerKernelSpec spec) {
    double e = envelope_exponent(spec);
    for (int attempt = 0;; ++attempt) {
        auto g = std::make_shared<Grid>();
        g->spec = spec;
        std::size_t n = std::size_t(spec.tail_cutoff / spec.step) + 1;
        g->w.resize(n);
        double taper_start = 0.6 * spec.tail_cutoff;
        double taper_len = 0.4 * spec.tail_cutoff;
        double env_coeff = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            double t = k * spec.step;
            std::complex<double> s(spec.contour_abscissa, t);
            std::complex<double> f = std::exp(integrand_log(spec, s));
            double af = std::abs(f);
            g->peak = std::max(g->peak, af);
            if (t >= taper_start && k + 10 * n / 100 >= n)
                env_coeff = std::max(env_coeff, af / std::pow(t, e));
            double taper = 1.0;
            if (t > taper_start) {
                double u = (t - taper_start) / taper_len;
                double cs = std::cos(0.5 * kPi * u);
                taper = cs * cs;
            }
            g->w[k] = f * taper;
        }
        // Oscillatory tail past T: envelope C t^e with phase running as
        // 2m t log t, so stationary-phase averaging gains roughly m log T,
        // and the cos^2 taper spreads the cutoff over a 0.4 T window, which
        // buys another 1/(0.4 T m log T) from a second integration by parts.
        double freq = spec.m * std::log(spec.tail_cutoff);
        g->tail_est = env_coeff * std::pow(spec.tail_cutoff, e) / freq /
                      (1.0 + 0.4 * spec.tail_cutoff * freq);
        if (g->tail_est < 1e-8 || attempt >= 3) {
            if (g->tail_est >= 1e-6)
                throw NonConvergence(
                    "g_kernel: tail estimate stalled above tolerance while "
                    "extending the quadrature window",
                    0.0, g->tail_est, long(spec.tail_cutoff));
            return g;
        }
        spec.tail_cutoff *= 1.6;
    }
}

struct GridKey {
    int m;
    double rho, c, h, T;
    bool operator==(const GridKey&) const = default;
};

struct GridKeyHash {
    std::size_t operator()(const GridKey& k) const {
        std::hash<double> hd;
        std::size_t s = std::hash<int>()(k.m);
        for (double v : {k.rho, k.c, k.h, k.T}) s = s * 1000003u ^ hd(v);
        return s;
    }
};

std::shared_mutex grid_mutex;
std::unordered_map<GridKey, std::shared_ptr<Grid>, GridKeyHash> grids;

std::shared_ptr<Grid> get_grid(const MeijerKernelSpec& spec) {
    GridKey key{spec.m, spec.rho, spec.contour_abscissa, spec.step,
                spec.tail_cutoff};
    {
        std::shared_lock lk(grid_mutex);
        auto it = grids.find(key);
        if (it != grids.end()) return it->second;
    }
    auto g = build_grid(spec);  // may race; idempotent insert below
    std::unique_lock lk(grid_mutex);
    auto [it, inserted] = grids.try_emplace(key, g);
    return it->second;
}

double saddle_amplitude(const MeijerKernelSpec& spec, double y) {
    double ex = (2.0 * spec.rho + 1.0 - spec.m) / (4.0 * spec.m);
    return std::pow(y, ex) / std::sqrt(kPi * spec.m);
}

KernelValue evaluate_on_grid(const Grid& g, double y) {
    const MeijerKernelSpec& spec = g.spec;
    double lny = std::log(y);
    std::complex<double> z = std::exp(std::complex<double>(0.0, spec.step * lny));
    std::complex<double> p(1.0, 0.0);
    std::complex<double> acc(0.0, 0.0);   // k >= 1, full grid
    std::complex<double> acc2(0.0, 0.0);  // even k >= 2, the 2h subgrid
    for (std::size_t k = 1; k < g.w.size(); ++k) {
        p *= z;
        if ((k & 511u) == 0u) p /= std::abs(p);
        std::complex<double> term = g.w[k] * p;
        acc += term;
        if ((k & 1u) == 0u) acc2 += term;
    }
    double yc = std::pow(y, spec.contour_abscissa);
    double f0 = g.w[0].real();
    double v_h = yc * spec.step / (2.0 * kPi) * (f0 + 2.0 * acc.real());
    double v_2h = yc * spec.step / kPi * (f0 + 2.0 * acc2.real());

    KernelValue out;
    out.method = KernelMethod::mellin_barnes;
    out.value = v_h;
    // Alias error at step h is smaller than the h-vs-2h delta by a factor
    // exp(-pi d / h), d = c + 1/2; a quarter of the delta is a safe bound.
    out.est_abs_error = yc * g.tail_est / (2.0 * kPi) +
                        0.25 * std::abs(v_h - v_2h) +
                        1e-14 * std::abs(v_h);
    return out;
}

}  // namespace

double envelope_exponent(const MeijerKernelSpec& spec) {
    return 2.0 * spec.m * spec.contour_abscissa - spec.rho - 1.0 + 0.5 * spec.m;
}

MeijerKernelSpec default_kernel_spec(int m, double rho) {
    if (m < 2) throw DegenerateGrid("default_kernel_spec: m >= 2 required");
    if (!(rho > 0.5 - 0.5 * m))
        throw DegenerateGrid("default_kernel_spec: rho > 1/2 - m/2 required");
    MeijerKernelSpec spec;
    spec.m = m;
    spec.rho = rho;
    double cmax = c_max_for(m, rho);
    double margin = (rho - 0.5 * m - 1.0) / (2.0 * m) - 0.25;
    // The margin formula lies left of the s = -1/2 pole for small rho;
    // fall back to the midpoint of the admissible window there.
    spec.contour_abscissa = (margin > -0.5) ? margin : 0.5 * (-0.5 + cmax);
    // The s = -1/2 pole sits on the analyticity-strip edge at distance
    // d = c + 1/2, and the measured trapezoid alias decays like
    // exp(-pi d / h); eight samples per strip width holds it near 1e-11.
    double d = spec.contour_abscissa + 0.5;
    spec.step = std::min(0.05, 0.125 * d);
    spec.tail_cutoff = (m == 2) ? 3000.0 : 1000.0;
    return spec;
}

KernelValue g_kernel(const MeijerKernelSpec& spec, double y) {
    if (!(y > 0.0)) throw std::domain_error("g_kernel: y > 0 required");
    validate_spec(spec);
    auto grid = get_grid(spec);

    long long key = llround(std::log(y) * 68719476736.0);  // 2^36 quantization
    {
        std::shared_lock lk(grid->value_mutex);
        auto it = grid->values.find(key);
        if (it != grid->values.end()) return it->second;
    }
    KernelValue v = evaluate_on_grid(*grid, y);
    {
        std::unique_lock lk(grid->value_mutex);
        grid->values.emplace(key, v);  // idempotent on race
    }
    return v;
}

double g_kernel_bessel_m2(double rho, double y) {
    if (rho != 0.0)
        throw std::domain_error("g_kernel_bessel_m2: only rho = 0 is matched");
    if (!(y > 0.0)) throw std::domain_error("g_kernel_bessel_m2: y > 0 required");
    double r = std::pow(y, -0.25);
    return r * specfun::voronoi_kernel_I(1.0, 4.0 * r);
}

namespace {

// Gauss-Legendre 10-point nodes/weights on [-1, 1].
constexpr double kGlx[5] = {0.1488743389816312, 0.4333953941292472,
                            0.6794095682990244, 0.8650633666889845,
                            0.9739065285171717};
constexpr double kGlw[5] = {0.2955242247147529, 0.2692667193099963,
                            0.2190863625159820, 0.1494513491505806,
                            0.0666713443086881};

template <class F>
double gl10(F&& f, double a, double b) {
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < 5; ++i) {
        s += kGlw[i] * (f(mid + half * kGlx[i]) + f(mid - half * kGlx[i]));
    }
    return s * half;
}

// Iterated averaging of the partial sums of an alternating panel sequence.
double average_panels(const std::vector<double>& panel) {
    std::vector<double> s(panel.size());
    double run = 0.0;
    for (std::size_t i = 0; i < panel.size(); ++i) {
        run += panel[i];
        s[i] = run;
    }
    while (s.size() > 1) {
        for (std::size_t i = 0; i + 1 < s.size(); ++i) s[i] = 0.5 * (s[i] + s[i + 1]);
        s.pop_back();
    }
    return s[0];
}

}  // namespace

double iterated_kernel_probe(int m, double rho, double x) {
    if (m != 2) throw std::domain_error("iterated_kernel_probe: m = 2 only");
    if (!(x > 0.0)) throw std::domain_error("iterated_kernel_probe: x > 0 required");
    if (rho < 0.0) throw std::domain_error("iterated_kernel_probe: rho >= 0 required");
    double nu = rho + 0.5;
    double pref = std::sqrt(2.0 / kPi);
    double u0 = std::max(1.0, std::sqrt(x));

    // u in [u0, inf): cos(u) oscillates, J(x/u) is smooth. Integrate between
    // consecutive zeros of cos and average the alternating panel sums.
    auto fu = [&](double u) {
        return pref * std::pow(u, rho - 0.5) * std::cos(u) *
               specfun::bessel_J(nu, x / u);
    };
    double first_zero = (std::floor(u0 / kPi - 0.5) + 1.5) * kPi;
    std::vector<double> panels;
    panels.push_back(gl10(fu, u0, first_zero));
    const int n_panels = 48;
    for (int k = 0; k < n_panels; ++k)
        panels.push_back(gl10(fu, first_zero + k * kPi, first_zero + (k + 1) * kPi));
    double upper = panels[0];
    {
        std::vector<double> tail(panels.begin() + 1, panels.end());
        upper += average_panels(tail);
    }

    // u in (0, u0]: substitute v = x/u; the Bessel factor now oscillates and
    // the amplitude decays like v^{-rho-2}, absolutely convergent.
    auto fv = [&](double v) {
        return pref * std::pow(x / v, rho - 0.5) * std::cos(x / v) *
               specfun::bessel_J(nu, v) * x / (v * v);
    };
    double v0 = x / u0;
    double vstart = v0 + kPi;
    std::vector<double> vpanels;
    vpanels.push_back(gl10(fv, v0, vstart));
    for (int k = 0; k < n_panels; ++k)
        vpanels.push_back(gl10(fv, vstart + k * kPi, vstart + (k + 1) * kPi));
    double lower = vpanels[0];
    {
        std::vector<double> tail(vpanels.begin() + 1, vpanels.end());
        lower += average_panels(tail);
    }

    double total = upper + lower;
    // Internal consistency: redo the averaging with the last 8 panels
    // dropped; disagreement flags a failed regularization.
    std::vector<double> short_u(panels.begin() + 1, panels.end() - 8);
    std::vector<double> short_v(vpanels.begin() + 1, vpanels.end() - 8);
    double total_short =
        panels[0] + vpanels[0] + average_panels(short_u) + average_panels(short_v);
    double drift = std::abs(total - total_short);
    if (drift > 1e-2 * (1.0 + std::abs(total)))
        throw LowAccuracy("iterated_kernel_probe: averaging did not settle", drift);
    return total;
}

void clear_kernel_cache() {
    std::unique_lock lk(grid_mutex);
    grids.clear();
}

}  // namespace rieszsum::meijer
