// Command-line driver: verify identities at a point, scan over x, probe the
// Mellin-Barnes kernel, fit error-term exponents, and dump coefficient
// tables. Every floating-point value in JSON output is rendered as a decimal
// string with 17 significant digits, so repeated runs with an identical
// configuration produce byte-identical output.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "rieszsum/arith.hpp"
#include "rieszsum/characters.hpp"
#include "rieszsum/errors.hpp"
#include "rieszsum/growth.hpp"
#include "rieszsum/identities.hpp"
#include "rieszsum/lfunc.hpp"
#include "rieszsum/meijer.hpp"

namespace {

namespace arith = rieszsum::arith;
namespace chars = rieszsum::chars;
namespace identities = rieszsum::identities;
namespace growth = rieszsum::growth;
namespace lfunc = rieszsum::lfunc;
namespace meijer = rieszsum::meijer;

using identities::CaseKind;

// Bad flags, bad combinations, and hypothesis violations caught before any
// computation starts. Mapped to exit code 1.
struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

std::string num17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

bool flag_present(const std::vector<std::string>& args, const std::string& flag) {
    for (const std::string& a : args)
        if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
    return false;
}

// Splices "--config <path>" out of the argument list and appends the file's
// key=value pairs as flags, skipping keys whose flag already appears on the
// command line. Explicit flags therefore win on conflict.
std::vector<std::string> merge_config(std::vector<std::string> args) {
    std::string path;
    bool found = false;
    std::vector<std::string> rest;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a == "--config" || a.rfind("--config=", 0) == 0) {
            if (found) throw UsageError("--config given more than once");
            found = true;
            if (a == "--config") {
                if (i + 1 >= args.size())
                    throw UsageError("--config needs a file path");
                path = args[++i];
            } else {
                path = a.substr(std::string("--config=").size());
            }
            continue;
        }
        rest.push_back(a);
    }
    if (!found) return rest;

    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file: " + path);
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw UsageError("config line " + std::to_string(lineno) +
                             " is not key=value: " + t);
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key.empty())
            throw UsageError("config line " + std::to_string(lineno) +
                             " has an empty key");
        if (key == "config")
            throw UsageError("config files cannot nest another config file");
        if (!flag_present(rest, "--" + key)) {
            rest.push_back("--" + key);
            if (!value.empty()) rest.push_back(value);
        }
    }
    return rest;
}

// ---------------------------------------------------------------------------

struct Options {
    std::string command;
    std::string case_token;
    std::string field = "Q";
    long disc = 0;
    long q = 0;
    long h = 0;
    double rho = 0.0;
    double x = 0.0;
    double x_min = 0.0;
    double x_max = 0.0;
    long points = 0;
    long max_m = 0;
    long max_n = 0;
    double tol = 1e-3;
    int m = 2;
    double y = 0.0;
    std::string format = "json";
    std::string out_path;

    bool has_case = false, has_disc = false, has_q = false, has_h = false;
    bool has_x = false, has_x_min = false, has_x_max = false, has_points = false;
    bool has_max_m = false, has_max_n = false, has_y = false, has_format = false;
};

CaseKind parse_case(const std::string& token) {
    static const std::pair<const char*, CaseKind> table[] = {
        {"voronoi", CaseKind::Voronoi},   {"ramanujan", CaseKind::Ramanujan},
        {"t3_1", CaseKind::T3_1},         {"t3_2", CaseKind::T3_2},
        {"t3_3", CaseKind::T3_3},         {"t5_1", CaseKind::T5_1},
        {"t5_2", CaseKind::T5_2},         {"t5_3", CaseKind::T5_3},
        {"corollary", CaseKind::Corollary},
    };
    for (const auto& [name, kind] : table)
        if (token == name) return kind;
    throw UsageError(
        "case must be one of "
        "voronoi|ramanujan|t3_1|t3_2|t3_3|t5_1|t5_2|t5_3|corollary");
}

arith::FieldContext parse_field(const std::string& field) {
    if (field == "Q") return arith::rational_field();
    const std::string prefix = "Qsqrt:";
    if (field.rfind(prefix, 0) != 0)
        throw UsageError("field must be Q or Qsqrt:<d>");
    long d = 0;
    try {
        std::size_t used = 0;
        d = std::stol(field.substr(prefix.size()), &used);
        if (used != field.size() - prefix.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw UsageError("field must be Q or Qsqrt:<d> with integer d");
    }
    if (d < 2) throw UsageError("field radicand must be an integer >= 2");
    for (long p = 2; p * p <= d; ++p)
        if (d % (p * p) == 0)
            throw UsageError("field radicand must be squarefree");
    // Radicand to discriminant of Q(sqrt(d)): d when d = 1 mod 4, else 4d.
    long D = (d % 4 == 1) ? d : 4 * d;
    return lfunc::quadratic_field_context(D);
}

bool needs_theta(CaseKind k) {
    return k == CaseKind::T3_3 || k == CaseKind::T5_3 ||
           k == CaseKind::Corollary || k == CaseKind::Ramanujan;
}

bool needs_disc(CaseKind k) {
    return k == CaseKind::T5_1 || k == CaseKind::T5_2 ||
           k == CaseKind::T5_3 || k == CaseKind::Corollary;
}

bool needs_chi(CaseKind k) {
    return k == CaseKind::T3_1 || k == CaseKind::T5_1;
}

identities::RieszCase build_case(const Options& opt, CaseKind kind) {
    identities::RieszCase c;
    c.kind = kind;
    c.rho = opt.rho;
    if (kind == CaseKind::T3_1 || kind == CaseKind::T3_2 ||
        kind == CaseKind::T3_3)
        c.field_ctx = parse_field(opt.field);
    if (needs_disc(kind)) {
        if (!opt.has_disc)
            throw UsageError(opt.case_token + " requires --disc");
        c.disc = opt.disc;
    }
    if (needs_theta(kind)) {
        if (!opt.has_q || !opt.has_h)
            throw UsageError(opt.case_token + " requires --q and --h");
        c.theta_h = opt.h;
        c.theta_q = opt.q;
    }
    if (needs_chi(kind)) {
        if (!opt.has_q)
            throw UsageError(opt.case_token +
                             " requires --q (quadratic character modulus)");
        if (opt.q < 3)
            throw UsageError("character modulus q must be an odd prime >= 3");
        // The engine verifies real characters only; mod a prime that is the
        // quadratic character, index (q-1)/2 on the primitive-root ladder.
        c.chi = chars::DirichletCharacter(opt.q, int((opt.q - 1) / 2));
    }
    identities::validate_case(c);
    return c;
}

identities::TruncationPolicy build_truncation(const Options& opt, CaseKind kind) {
    identities::TruncationPolicy trunc = identities::default_truncation(kind);
    if (opt.has_max_m) {
        if (opt.max_m < 1) throw UsageError("truncation caps must be positive");
        trunc.max_outer = opt.max_m;
    }
    if (opt.has_max_n) {
        if (opt.max_n < 1) throw UsageError("truncation caps must be positive");
        trunc.max_inner = opt.max_n;
    }
    return trunc;
}

// Output sink: --out writes a file, otherwise stdout.
class Sink {
  public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw UsageError("cannot open output file: " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

std::string report_csv(const identities::VerificationReport& rep) {
    std::string s = "lhs,rhs_main,residual,tail_estimate,converged,w_factor,d_sign_flag\n";
    s += num17(rep.lhs) + "," + num17(rep.rhs_main) + "," + num17(rep.residual) +
         "," + num17(rep.tail_estimate) + "," +
         (rep.converged ? "true" : "false") + "," + num17(rep.w_factor) + "," +
         (rep.d_sign_flag ? "true" : "false") + "\n";
    return s;
}

// One validated case plus truncation, reusable across evaluation points so
// scans do not rebuild the field context (Laurent data) per row.
struct Runner {
    CaseKind kind = CaseKind::Voronoi;
    identities::RieszCase c;
    identities::TruncationPolicy trunc;
    double tol = 1e-3;

    identities::VerificationReport at(double x) const {
        if (kind == CaseKind::Corollary)
            return identities::corollary_rd(c.disc, c.theta_h, c.theta_q,
                                            c.rho, x, trunc, tol);
        return identities::verify(c, x, trunc, tol);
    }
};

Runner make_runner(const Options& opt) {
    Runner r;
    r.kind = parse_case(opt.case_token);
    r.c = build_case(opt, r.kind);
    r.trunc = build_truncation(opt, r.kind);
    r.tol = opt.tol;
    return r;
}

int run_verify(const Options& opt) {
    if (!opt.has_case) throw UsageError("verify requires --case");
    if (!opt.has_x)
        throw UsageError("verify requires --x (use scan for an x range)");
    if (opt.has_x_min || opt.has_x_max || opt.has_points)
        throw UsageError("verify takes --x; --x-min/--x-max/--points belong to scan or fit");
    Runner runner = make_runner(opt);
    identities::VerificationReport rep = runner.at(opt.x);
    Sink sink(opt.out_path);
    if (opt.format == "json")
        sink.stream() << identities::report_to_json(rep) << "\n";
    else
        sink.stream() << report_csv(rep);
    return rep.converged ? 0 : 2;
}

int run_scan(const Options& opt) {
    if (!opt.has_case) throw UsageError("scan requires --case");
    if (opt.has_x)
        throw UsageError("scan takes --x-min/--x-max/--points, not --x");
    if (!opt.has_x_min || !opt.has_x_max || !opt.has_points)
        throw UsageError("scan requires --x-min, --x-max and --points");
    if (!(opt.x_min > 0.0) || !(opt.x_max > opt.x_min))
        throw UsageError("scan range requires 0 < x-min < x-max");
    if (opt.points < 2) throw UsageError("scan requires --points >= 2");
    // Streaming one row per x is the point of scan; there is no JSON form.
    if (opt.has_format && opt.format != "csv")
        throw UsageError("scan streams csv rows; json is not available");

    Runner runner = make_runner(opt);
    Sink sink(opt.out_path);
    std::ostream& out = sink.stream();
    out << "x,lhs,rhs_main,residual,tail_estimate,converged\n" << std::flush;
    bool all_converged = true;
    for (long i = 0; i < opt.points; ++i) {
        double x = opt.x_min + (opt.x_max - opt.x_min) * double(i) /
                                   double(opt.points - 1);
        identities::VerificationReport rep = runner.at(x);
        out << num17(x) << "," << num17(rep.lhs) << "," << num17(rep.rhs_main)
            << "," << num17(rep.residual) << "," << num17(rep.tail_estimate)
            << "," << (rep.converged ? "true" : "false") << "\n"
            << std::flush;
        all_converged = all_converged && rep.converged;
    }
    return all_converged ? 0 : 2;
}

int run_gfun(const Options& opt) {
    if (!opt.has_y) throw UsageError("gfun requires --y");
    meijer::MeijerKernelSpec spec = meijer::default_kernel_spec(opt.m, opt.rho);
    meijer::KernelValue kv = meijer::g_kernel(spec, opt.y);
    const char* method = kv.method == meijer::KernelMethod::mellin_barnes
                             ? "mellin_barnes"
                             : "bessel_closed_form";
    Sink sink(opt.out_path);
    if (opt.format == "json") {
        sink.stream() << "{\"value\": \"" << num17(kv.value)
                      << "\", \"est_abs_error\": \"" << num17(kv.est_abs_error)
                      << "\", \"method\": \"" << method << "\"}\n";
    } else {
        sink.stream() << "value,est_abs_error,method\n"
                      << num17(kv.value) << "," << num17(kv.est_abs_error)
                      << "," << method << "\n";
    }
    return 0;
}

int run_fit(const Options& opt) {
    if (!opt.has_case) throw UsageError("fit requires --case");
    if (opt.has_x) throw UsageError("fit takes --x-min/--x-max/--points or the default grid, not --x");
    CaseKind kind = parse_case(opt.case_token);
    identities::RieszCase c = build_case(opt, kind);

    std::vector<double> grid;
    if (opt.has_x_min || opt.has_x_max || opt.has_points) {
        if (!opt.has_x_min || !opt.has_x_max || !opt.has_points)
            throw UsageError("fit needs all of --x-min, --x-max, --points (or none for the default grid)");
        if (!(opt.x_min > 0.0) || !(opt.x_max > opt.x_min))
            throw UsageError("fit range requires 0 < x-min < x-max");
        if (opt.points < 8) throw UsageError("grid needs at least 8 points");
        double ratio = opt.x_max / opt.x_min;
        for (long i = 0; i < opt.points; ++i)
            grid.push_back(opt.x_min *
                           std::pow(ratio, double(i) / double(opt.points - 1)));
    } else {
        grid = growth::default_error_grid();
    }

    growth::ExponentFit fit = growth::fit_exponent(c, grid);
    Sink sink(opt.out_path);
    if (opt.format == "json") {
        sink.stream() << "{\"fitted_slope\": \"" << num17(fit.fitted_slope)
                      << "\", \"theory_slope\": \"" << num17(fit.theory_slope)
                      << "\", \"normalized_sup\": \"" << num17(fit.normalized_sup)
                      << "\"}\n";
    } else {
        std::ostream& out = sink.stream();
        out << "x,error,normalized\n";
        for (std::size_t i = 0; i < fit.grid.size(); ++i) {
            double norm = std::abs(fit.errors[i]) /
                          std::pow(fit.grid[i], fit.theory_slope + 0.1);
            out << num17(fit.grid[i]) << "," << num17(fit.errors[i]) << ","
                << num17(norm) << "\n";
        }
    }
    return 0;
}

int run_table(const Options& opt) {
    if (!opt.has_case) throw UsageError("table requires --case");
    if (!opt.has_max_n || opt.max_n < 1)
        throw UsageError("table requires --max-n >= 1");
    CaseKind kind = parse_case(opt.case_token);
    long N = opt.max_n;

    // (n, value) rows of the coefficient family behind the case's left side.
    std::vector<std::pair<long, double>> rows;
    rows.reserve(std::size_t(N));
    switch (kind) {
        case CaseKind::Voronoi: {
            auto t = arith::big_D_K_table(arith::rational_field(), N);
            for (long n = 1; n <= N; ++n) rows.emplace_back(n, double(t[std::size_t(n)]));
            break;
        }
        case CaseKind::T3_2:
        case CaseKind::T3_3: {
            auto ctx = parse_field(opt.field);
            auto t = arith::big_D_K_table(ctx, N);
            for (long n = 1; n <= N; ++n) rows.emplace_back(n, double(t[std::size_t(n)]));
            break;
        }
        case CaseKind::T5_2:
        case CaseKind::T5_3:
        case CaseKind::Corollary: {
            if (!opt.has_disc)
                throw UsageError(opt.case_token + " requires --disc");
            auto t = arith::script_D_table(opt.disc, N);
            for (long n = 1; n <= N; ++n) rows.emplace_back(n, double(t[std::size_t(n)]));
            break;
        }
        case CaseKind::T3_1: {
            identities::RieszCase c = build_case(opt, kind);
            for (long n = 1; n <= N; ++n)
                rows.emplace_back(n,
                                  arith::big_D_K_chi(c.field_ctx, *c.chi, n).real());
            break;
        }
        case CaseKind::T5_1: {
            identities::RieszCase c = build_case(opt, kind);
            for (long n = 1; n <= N; ++n)
                rows.emplace_back(n, arith::script_D_chi(c.disc, *c.chi, n).real());
            break;
        }
        case CaseKind::Ramanujan:
            throw UsageError(
                "the cosine sum weights [x/n] by cos(2 pi n h/q); it has no "
                "integer coefficient table");
    }

    Sink sink(opt.out_path);
    std::ostream& out = sink.stream();
    if (opt.format == "json") {
        out << "{\"case\": \"" << identities::case_name(kind)
            << "\", \"values\": [";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i) out << ", ";
            out << "[" << rows[i].first << ", \"" << num17(rows[i].second)
                << "\"]";
        }
        out << "]}\n";
    } else {
        out << "n,value\n";
        for (const auto& [n, v] : rows) out << n << "," << num17(v) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    Options opt;
    CLI::App app{
        "Numerical verification of two-parameter Riesz-sum identities for "
        "divisor sums: exact left sides against closed-form main terms and "
        "Bessel/Meijer kernel series."};
    app.name("rieszsum");
    // Flags are long-form only; the default -h short flag would shadow --h.
    app.set_help_flag("--help", "print usage");

    app.add_option("command", opt.command,
                   "verify | scan | gfun | fit | table")
        ->required();
    auto* o_case = app.add_option("--case", opt.case_token,
                                  "voronoi|ramanujan|t3_1|t3_2|t3_3|t5_1|t5_2|t5_3|corollary");
    app.add_option("--field", opt.field, "Q or Qsqrt:<d> (t3 cases)");
    auto* o_disc = app.add_option("--disc", opt.disc,
                                  "fundamental discriminant D (t5 cases, corollary)");
    auto* o_q = app.add_option("--q", opt.q, "prime modulus of theta = h/q or of the character");
    auto* o_h = app.add_option("--h", opt.h, "numerator of theta = h/q, 0 < h < q");
    app.add_option("--rho", opt.rho, "Riesz weight exponent (default 0)");
    auto* o_x = app.add_option("--x", opt.x, "evaluation point");
    auto* o_xmin = app.add_option("--x-min", opt.x_min, "scan/fit grid start");
    auto* o_xmax = app.add_option("--x-max", opt.x_max, "scan/fit grid end");
    auto* o_points = app.add_option("--points", opt.points, "scan/fit grid size");
    auto* o_maxm = app.add_option("--max-m", opt.max_m, "outer series cap");
    auto* o_maxn = app.add_option("--max-n", opt.max_n,
                                  "inner series cap / table length");
    app.add_option("--tol", opt.tol, "convergence tolerance (default 1e-3)");
    app.add_option("--m", opt.m, "kernel order r1 + 1 (gfun, default 2)");
    auto* o_y = app.add_option("--y", opt.y, "kernel argument (gfun)");
    auto* o_format = app.add_option("--format", opt.format, "json or csv (default json)");
    app.add_option("--out", opt.out_path, "write output to a file instead of stdout");
    app.footer(
        "A --config <file> of key=value lines (keys are flag names without\n"
        "dashes) supplies defaults; explicit flags win on conflict.\n"
        "Exit codes: 0 converged/success, 1 usage or hypothesis violation,\n"
        "2 truncated series failed to converge. RIESZSUM_THREADS caps the\n"
        "worker count for grid evaluation.");

    std::vector<std::string> raw(argv + 1, argv + argc);
    std::vector<std::string> args;
    try {
        args = merge_config(std::move(raw));
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::vector<const char*> cargv;
    cargv.push_back("rieszsum");
    for (const std::string& a : args) cargv.push_back(a.c_str());
    try {
        app.parse(int(cargv.size()), cargv.data());
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    opt.has_case = o_case->count() > 0;
    opt.has_disc = o_disc->count() > 0;
    opt.has_q = o_q->count() > 0;
    opt.has_h = o_h->count() > 0;
    opt.has_x = o_x->count() > 0;
    opt.has_x_min = o_xmin->count() > 0;
    opt.has_x_max = o_xmax->count() > 0;
    opt.has_points = o_points->count() > 0;
    opt.has_max_m = o_maxm->count() > 0;
    opt.has_max_n = o_maxn->count() > 0;
    opt.has_y = o_y->count() > 0;
    opt.has_format = o_format->count() > 0;

    try {
        if (opt.format != "json" && opt.format != "csv")
            throw UsageError("format must be json or csv");
        if (!(opt.tol > 0.0)) throw UsageError("tol must be positive");
        // The running example of a hypothesis rejection: a composite modulus.
        if (opt.has_q && (opt.q < 2 || !arith::is_prime(opt.q)))
            throw UsageError("q must be prime");
        if (opt.has_h && (opt.h <= 0 || (opt.has_q && opt.h >= opt.q)))
            throw UsageError("h must satisfy 0 < h < q");

        if (opt.command == "verify") return run_verify(opt);
        if (opt.command == "scan") return run_scan(opt);
        if (opt.command == "gfun") return run_gfun(opt);
        if (opt.command == "fit") return run_fit(opt);
        if (opt.command == "table") return run_table(opt);
        throw UsageError("unknown command: " + opt.command +
                         " (expected verify, scan, gfun, fit or table)");
    } catch (const rieszsum::NonConvergence& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
