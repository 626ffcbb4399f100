// Microbenchmarks for the hot paths: kernel quadrature (cold grid build vs
// cached lookup vs Bessel closed form), exact left sides, sieved coefficient
// tables, Laurent-data setup, and a small end-to-end verification.

#include <benchmark/benchmark.h>

#include "rieszsum/arith.hpp"
#include "rieszsum/growth.hpp"
#include "rieszsum/identities.hpp"
#include "rieszsum/lfunc.hpp"
#include "rieszsum/meijer.hpp"

namespace {

using namespace rieszsum;

identities::RieszCase cosine_case_t3_3(double rho) {
    identities::RieszCase c;
    c.kind = identities::CaseKind::T3_3;
    c.field_ctx = lfunc::quadratic_field_context(5);
    c.theta_h = 1;
    c.theta_q = 3;
    c.rho = rho;
    return c;
}

void BM_kernel_quadrature_cold(benchmark::State& state) {
    auto spec = meijer::default_kernel_spec(2, 0.0);
    for (auto _ : state) {
        meijer::clear_kernel_cache();
        benchmark::DoNotOptimize(meijer::g_kernel(spec, 1.0).value);
    }
}
BENCHMARK(BM_kernel_quadrature_cold)->Unit(benchmark::kMillisecond);

void BM_kernel_cached(benchmark::State& state) {
    auto spec = meijer::default_kernel_spec(2, 0.0);
    double ys[8];
    for (int i = 0; i < 8; ++i) {
        ys[i] = 0.5 * double(i + 1);
        meijer::g_kernel(spec, ys[i]);
    }
    int i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(meijer::g_kernel(spec, ys[i & 7]).value);
        ++i;
    }
}
BENCHMARK(BM_kernel_cached);

void BM_kernel_bessel_closed_form(benchmark::State& state) {
    double y = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(meijer::g_kernel_bessel_m2(0.0, y));
        y = y < 100.0 ? y * 1.1 : 0.1;
    }
}
BENCHMARK(BM_kernel_bessel_closed_form);

void BM_lhs_riesz_t3_3(benchmark::State& state) {
    identities::RieszCase c = cosine_case_t3_3(1.5);
    double x = double(state.range(0)) + 0.5;
    for (auto _ : state)
        benchmark::DoNotOptimize(identities::lhs_riesz(c, x));
}
BENCHMARK(BM_lhs_riesz_t3_3)->Arg(50)->Arg(200);

void BM_error_term_t3_3(benchmark::State& state) {
    identities::RieszCase c = cosine_case_t3_3(1.5);
    for (auto _ : state)
        benchmark::DoNotOptimize(growth::error_term(c, 200.5));
}
BENCHMARK(BM_error_term_t3_3);

void BM_verify_voronoi(benchmark::State& state) {
    identities::RieszCase c;
    c.kind = identities::CaseKind::Voronoi;
    identities::TruncationPolicy trunc{1, state.range(0), 0.0, false};
    for (auto _ : state)
        benchmark::DoNotOptimize(
            identities::verify(c, 10.5, trunc, 1e-3).residual);
}
BENCHMARK(BM_verify_voronoi)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_script_D_table(benchmark::State& state) {
    long n = state.range(0);
    for (auto _ : state)
        benchmark::DoNotOptimize(arith::script_D_table(5, n).back());
}
BENCHMARK(BM_script_D_table)->Arg(10000)->Arg(100000);

void BM_big_D_K_table(benchmark::State& state) {
    auto ctx = arith::real_quadratic_field(5, 1.0, 0.0);
    long n = state.range(0);
    for (auto _ : state)
        benchmark::DoNotOptimize(arith::big_D_K_table(ctx, n).back());
}
BENCHMARK(BM_big_D_K_table)->Arg(10000)->Arg(100000);

void BM_quadratic_field_context(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(lfunc::quadratic_field_context(5).gamma_0);
}
BENCHMARK(BM_quadratic_field_context)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
