#include "nuderiv/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

#include "nuderiv/airy_quad.hpp"
#include "nuderiv/detail/airy_complex.hpp"
#include "nuderiv/errors.hpp"
#include "nuderiv/lg_map.hpp"
#include "nuderiv/product_series.hpp"
#include "nuderiv/specfun.hpp"

namespace nuderiv::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::optional<double> rel_gap(std::optional<double> m, std::optional<double> o) {
    if (!m || !o) return std::nullopt;
    return std::abs(*m / *o - 1.0);
}

std::optional<double> env_gap(std::optional<double> m, std::optional<double> o, double env) {
    if (!m || !o) return std::nullopt;
    return std::abs(*m - *o) / env;
}

std::optional<double> worst(std::optional<double> a, std::optional<double> b) {
    if (!a) return b;
    if (!b) return a;
    // a nan gap must survive the max
    if (std::isnan(*a) || std::isnan(*b)) return kNaN;
    return std::max(*a, *b);
}

}  // namespace

double deriv_envelope(double nu, double z, double jh, double yh, bool for_j) {
    if (z < nu) return std::abs(for_j ? jh : yh);
    return std::hypot(jh, yh);
}

double parse_number(const std::string& item) {
    double d;
    auto [p, ec] = std::from_chars(item.data(), item.data() + item.size(), d);
    if (item.empty() || ec != std::errc() || p != item.data() + item.size())
        throw DomainError("cannot parse number '" + item + "'");
    return d;
}

std::vector<double> parse_range(const std::string& text) {
    const auto a = text.find(':');
    const auto b = a == std::string::npos ? a : text.find(':', a + 1);
    if (b == std::string::npos) throw DomainError("range must look like start:stop:count");
    const double lo = parse_number(text.substr(0, a));
    const double hi = parse_number(text.substr(a + 1, b - a - 1));
    const double count = parse_number(text.substr(b + 1));
    if (count != std::floor(count) || count < 1 || count > 1e6) throw DomainError("range count must be an integer in [1, 1e6]");
    if (!std::isfinite(lo) || !std::isfinite(hi)) throw DomainError("range ends must be finite");
    const long n = static_cast<long>(count);
    std::vector<double> v(n);
    for (long i = 0; i < n; ++i) v[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return v;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        if (item.find(':') != std::string::npos) {
            auto r = parse_range(item);
            v.insert(v.end(), r.begin(), r.end());
            continue;
        }
        v.push_back(parse_number(item));
    }
    return v;
}

std::vector<SweepRow> sweep_rows(const std::vector<double>& nus, const std::vector<double>& xs, bool series, bool uniform,
                                 bool oracle, const DerivOptions& opts) {
    std::vector<SweepRow> rows;
    rows.reserve(nus.size() * xs.size());
    // A method that does not apply at a point leaves its columns empty.
    auto attempt = [&](Method m, double nu, double z, std::optional<double>& j, std::optional<double>& y) {
        try {
            const DerivPair p = order_derivs(nu, z, m, opts);
            j = p.jhat.value;
            y = p.yhat.value;
        } catch (const DomainError&) {
        } catch (const ToleranceNotMet&) {
        } catch (const PathFailure&) {
        }
    };
    for (double nu : nus) {
        for (double x : xs) {
            SweepRow r;
            r.nu = nu;
            r.x = x;
            r.z = nu * x;
            if (series) attempt(Method::series, nu, r.z, r.jhat_series, r.yhat_series);
            if (uniform) attempt(Method::uniform, nu, r.z, r.jhat_uniform, r.yhat_uniform);
            if (oracle) attempt(Method::oracle, nu, r.z, r.jhat_oracle, r.yhat_oracle);
            r.rel_gap_uniform = worst(rel_gap(r.jhat_uniform, r.jhat_oracle), rel_gap(r.yhat_uniform, r.yhat_oracle));
            r.rel_gap_series = worst(rel_gap(r.jhat_series, r.jhat_oracle), rel_gap(r.yhat_series, r.yhat_oracle));
            if (r.jhat_oracle && r.yhat_oracle) {
                const double ej = deriv_envelope(nu, r.z, *r.jhat_oracle, *r.yhat_oracle, true);
                const double ey = deriv_envelope(nu, r.z, *r.jhat_oracle, *r.yhat_oracle, false);
                r.env_gap_uniform =
                    worst(env_gap(r.jhat_uniform, r.jhat_oracle, ej), env_gap(r.yhat_uniform, r.yhat_oracle, ey));
                r.env_gap_series =
                    worst(env_gap(r.jhat_series, r.jhat_oracle, ej), env_gap(r.yhat_series, r.yhat_oracle, ey));
            }
            rows.push_back(r);
        }
    }
    return rows;
}

std::string format_csv_double(std::optional<double> v) {
    if (!v || std::isnan(*v)) return "nan";
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, *v, std::chars_format::scientific, 16);
    return std::string(buf, p);
}

std::string csv_header() {
    return "nu,x,z,jhat_series,jhat_uniform,jhat_oracle,yhat_series,yhat_uniform,yhat_oracle,"
           "rel_gap_uniform,rel_gap_series,env_gap_uniform,env_gap_series";
}

std::string csv_line(const SweepRow& r) {
    const std::optional<double> cols[] = {r.nu,          r.x,          r.z,
                                          r.jhat_series, r.jhat_uniform, r.jhat_oracle,
                                          r.yhat_series, r.yhat_uniform, r.yhat_oracle,
                                          r.rel_gap_uniform, r.rel_gap_series, r.env_gap_uniform,
                                          r.env_gap_series};
    std::string s;
    for (size_t i = 0; i < std::size(cols); ++i) {
        if (i) s += ',';
        s += format_csv_double(cols[i]);
    }
    return s;
}

SweepRow parse_csv_line(const std::string& line) {
    std::vector<std::optional<double>> v;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item == "nan") {
            v.push_back(std::nullopt);
            continue;
        }
        double d;
        auto [p, ec] = std::from_chars(item.data(), item.data() + item.size(), d);
        if (ec != std::errc() || p != item.data() + item.size()) throw DomainError("bad CSV field '" + item + "'");
        v.push_back(d);
    }
    if (v.size() != 13) throw DomainError("CSV row must have 13 fields");
    SweepRow r;
    r.nu = v[0].value_or(kNaN);
    r.x = v[1].value_or(kNaN);
    r.z = v[2].value_or(kNaN);
    r.jhat_series = v[3];
    r.jhat_uniform = v[4];
    r.jhat_oracle = v[5];
    r.yhat_series = v[6];
    r.yhat_uniform = v[7];
    r.yhat_oracle = v[8];
    r.rel_gap_uniform = v[9];
    r.rel_gap_series = v[10];
    r.env_gap_uniform = v[11];
    r.env_gap_series = v[12];
    return r;
}

std::vector<Table1Entry> table1(double nu, double tol) {
    // Reference relative gaps at nu = 50.
    struct Ref {
        int l;
        double x, eta;
    };
    static const Ref ref[] = {
        {1, 0.1, 1.6240e-04},  {2, 0.1, 3.1202e-03},  {3, 0.1, 3.1466e-03},  {1, 0.5, 3.4440e-04},
        {2, 0.5, 6.9778e-03},  {3, 0.5, 7.2109e-03},  {1, 0.75, 2.1710e-04}, {2, 0.75, 1.0326e-02},
        {3, 0.75, 1.1859e-02}, {1, 0.99, 1.7825e-08}, {2, 0.99, 2.0756e-02}, {3, 0.99, 1.8467e-02},
        {4, 1.0, 2.6086e-04},  {4, 5.0, 6.2709e-07},  {4, 10.0, 1.1871e-07},
    };
    std::vector<Table1Entry> out;
    for (const Ref& r : ref) {
        const double f = f_integral(r.l, nu, r.x, tol).value;
        const double g = g_closed(r.l, nu, r.x);
        out.push_back({r.l, r.x, nu == 50.0 ? r.eta : kNaN, std::abs(f / g - 1.0)});
    }
    return out;
}

double g_derivative_residual(int i, int j, int k, double nu, double z) {
    const double lam = std::pow(nu, 2.0 / 3.0);
    // step matched to the local scale of the Airy functions, one Richardson level
    const double h = 1e-3 / (lam * std::max(1.0, std::sqrt(lam * std::abs(z))));
    auto d = [&](double step) {
        return (g_k(i, j, k, nu, z + step).value.real() - g_k(i, j, k, nu, z - step).value.real()) / (2.0 * step);
    };
    const double deriv = (4.0 * d(0.5 * h) - d(h)) / 3.0;
    const detail::AiryReal a = detail::airy_real(lam * z);
    const double want = std::pow(z, k) * (i == 1 ? a.ai : a.bi) * (j == 1 ? a.ai : a.bi);
    const AiryEnvelope& env = AiryEnvelope::standard();
    const double m = env.modulus(lam * z), e = env.weight(lam * z);
    const double scale = std::pow(std::abs(z), k) * (i == 1 ? m / e : m * e) * (j == 1 ? m / e : m * e);
    return std::abs(deriv - want) / scale;
}

namespace {

struct Suite {
    std::string name;
    double limit;
    double worst = 0.0;
    void see(double r) {
        if (std::isnan(r) || r > worst) worst = std::isnan(r) ? HUGE_VAL : r;
    }
};

}  // namespace

std::vector<SuiteResult> selftest(double perturb_c) {
    std::vector<SuiteResult> out;
    std::mt19937_64 rng(20240611);
    auto uni = [&](double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); };
    auto done = [&](Suite& s) { out.push_back({s.name, s.worst <= s.limit, s.worst, s.limit}); };

    {
        Suite s{"bessel wronskian", 1e-12};
        for (int i = 0; i < 100; ++i) {
            const double nu = uni(0.0, 100.0), x = uni(0.01, 500.0);
            const BesselSequence q = bessel_jy_seq(nu, x, 1);
            const auto& a = q.entries[0];
            const auto& b = q.entries[1];
            const double w = b.j * a.y - a.j * b.y;
            const double scale = std::abs(a.j * b.y) + std::abs(b.j * a.y) + 2.0 / (std::numbers::pi * x);
            s.see(std::abs(w - 2.0 / (std::numbers::pi * x)) / scale);
        }
        done(s);
    }
    {
        Suite s{"airy wronskian", 1e-12};
        for (int i = 0; i < 50; ++i) {
            const AiryEval a = airy(uni(-30.0, 30.0));
            const double w = a.ai.real() * *a.bip - a.aip.real() * *a.bi;
            s.see(std::abs(w * std::numbers::pi - 1.0));
        }
        done(s);
    }
    {
        Suite s{"zeta round trip", 1e-10};
        for (int i = 0; i < 50; ++i) {
            const double x = std::exp(uni(std::log(1e-3), std::log(50.0)));
            s.see(std::abs(x_of_zeta(zeta_of_x(x).zeta) - x) / x);
        }
        done(s);
    }
    {
        Suite s{"zeta window seam", 1e-10};
        for (double x : {0.799, 0.801, 1.199, 1.201}) {
            const double a = detail::zeta_closed_form(x).zeta, b = detail::zeta_near_turning_point(x).zeta;
            s.see(std::abs(a - b) / std::abs(a));
        }
        done(s);
    }
    {
        // Both branches of E and M must meet at c.
        Suite s{"airy weight continuity", 1e-10};
        const AiryEnvelope env(AiryEnvelope::standard().c() + perturb_c);
        const double c = env.c();
        const detail::AiryReal a = detail::airy_real(c);
        s.see(std::abs(std::sqrt(a.bi / a.ai) - 1.0));
        s.see(std::abs(std::sqrt(2.0 * a.ai * a.bi) / std::hypot(a.ai, a.bi) - 1.0));
        s.see(std::abs(env.weight(std::nextafter(c, 1.0)) - env.weight(c)));
        done(s);
    }
    {
        Suite s{"product sum identity", 1e-8};
        for (double x : {0.05, 0.5, 1.0, 5.0, 20.0}) s.see(product_sum_residual(x));
        done(s);
    }
    {
        Suite s{"G antiderivatives", 1e-6};
        for (int n = 0, tested = 0; tested < 24; ++n) {
            const int i = 1 + (n & 1), j = 1 + ((n >> 1) & 1), k = (n >> 2) % 3;
            const double nu = uni(8.0, 200.0), z = uni(-3.0, 3.0);
            // Ai^2 ~ e^{-(4/3)u^{3/2}} leaves double range beyond u ~ 75
            const double u = std::pow(nu, 2.0 / 3.0) * z;
            if (u > 0.0 && 4.0 / 3.0 * u * std::sqrt(u) > 650.0) continue;
            ++tested;
            s.see(g_derivative_residual(i, j, k, nu, z));
        }
        done(s);
    }
    {
        Suite s{"series vs oracle", 1e-5};
        for (int i = 0; i < 10; ++i) {
            const double nu = uni(0.1, 20.0), z = uni(0.5, 50.0);
            const DerivPair p = order_derivs(nu, z, Method::series);
            const DerivPair o = oracle_fd(nu, z);
            s.see(std::abs(p.jhat.value - o.jhat.value) / deriv_envelope(nu, z, o.jhat.value, o.yhat.value, true));
            s.see(std::abs(p.yhat.value - o.yhat.value) / deriv_envelope(nu, z, o.jhat.value, o.yhat.value, false));
        }
        done(s);
    }
    {
        Suite s{"nu=100 illustration", 1e-3};
        for (double z : {50.0, 500.0}) {
            const DerivPair u = order_derivs(100.0, z, Method::uniform);
            const DerivPair o = oracle_fd(100.0, z);
            s.see(std::abs(u.jhat.value / o.jhat.value - 1.0));
            s.see(std::abs(u.yhat.value / o.yhat.value - 1.0));
        }
        done(s);
    }
    return out;
}

namespace {

std::optional<double> env_tolerance(std::ostream& err) {
    const char* s = std::getenv("NUDERIV_TOL");
    if (!s || !*s) return std::nullopt;
    char* end = nullptr;
    const double v = std::strtod(s, &end);
    if (end == s || *end != '\0' || !(v > 0.0) || !std::isfinite(v)) {
        err << "NUDERIV_TOL must be a positive number, got '" << s << "'\n";
        throw DomainError("bad NUDERIV_TOL");
    }
    return v;
}

void print_result(std::ostream& out, const char* name, const DerivResult& r) {
    out << name << "  " << fmt("%.9e", r.value) << "  method=" << to_string(r.method)
        << "  est_rel_err=" << fmt("%.3e", r.est_rel_err) << '\n';
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Order derivatives of the Bessel functions J and Y"};
    app.require_subcommand(1);

    double tol_flag = 0.0;
    auto* tol_opt = app.add_option("--tol", tol_flag, "Series tolerance (default 1e-10, or NUDERIV_TOL)");

    // eval
    auto* ev = app.add_subcommand("eval", "Evaluate dJ/dnu and dY/dnu at one point");
    double nu = 0.0, z = 0.0, x = 0.0;
    std::string method = "auto";
    bool scaled = false;
    ev->add_option("--nu", nu, "Order")->required();
    auto* z_opt = ev->add_option("--z", z, "Bessel argument");
    auto* x_opt = ev->add_option("--x", x, "Scaled argument, z = nu*x (needs --scaled)");
    ev->add_flag("--scaled", scaled, "Interpret --x as z/nu");
    z_opt->excludes(x_opt);
    ev->add_option("--method", method, "auto, series, uniform or oracle");
    ev->add_option("--tol", tol_flag, "Series tolerance");

    auto* il = app.add_subcommand("illustrate", "The nu = 100 comparisons at z = 50 and z = 500");

    auto* t1 = app.add_subcommand("table1", "Relative gaps between Airy-product quadratures and their closed forms");
    double t1_nu = 50.0;
    std::string t1_csv;
    t1->add_option("--nu", t1_nu, "Order (reference values exist for 50)");
    t1->add_option("--csv", t1_csv, "Also write the table as CSV to this path");

    auto* sw = app.add_subcommand("sweep", "Grid sweep written as CSV");
    std::string sw_nu, sw_x, sw_methods = "series,uniform,oracle", sw_out;
    sw->add_option("--nu", sw_nu, "Orders: list and/or start:stop:count")->required();
    sw->add_option("--x", sw_x, "Scaled arguments x = z/nu: list and/or start:stop:count")->required();
    sw->add_option("--methods", sw_methods, "Comma-separated subset of series,uniform,oracle");
    sw->add_option("--out", sw_out, "Output path ('-' for stdout)")->required();

    auto* st = app.add_subcommand("selftest", "Run the invariant suites");
    double perturb = 0.0;
    st->add_option("--perturb-c", perturb, "Shift the Airy crossing point (fault injection)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : bad_input;
    }

    try {
        DerivOptions opts;
        if (auto t = env_tolerance(err)) opts.tol = *t;
        if (tol_opt->count() || (ev->parsed() && ev->get_option("--tol")->count())) {
            if (!(tol_flag > 0.0)) throw DomainError("--tol must be positive");
            opts.tol = tol_flag;
        }

        if (ev->parsed()) {
            if (x_opt->count() && !scaled) throw DomainError("--x needs --scaled (use --z for the Bessel argument)");
            if (scaled && !x_opt->count()) throw DomainError("--scaled needs --x");
            if (!x_opt->count() && !z_opt->count()) throw DomainError("one of --z or --x --scaled is required");
            const auto m = parse_method(method);
            if (!m) throw DomainError("unknown method '" + method + "'");
            const double zz = x_opt->count() ? nu * x : z;
            if (!(nu > 0.0)) throw DomainError("--nu must be positive");
            const DerivPair p = order_derivs(nu, zz, *m, opts);
            out << "nu    " << fmt("%.9e", nu) << "\nz     " << fmt("%.9e", zz) << '\n';
            print_result(out, "jhat", p.jhat);
            print_result(out, "yhat", p.yhat);
            return ok;
        }

        if (il->parsed()) {
            out << "  nu      z   quantity        uniform           oracle       rel_gap\n";
            for (double zz : {50.0, 500.0}) {
                const DerivPair u = order_derivs(100.0, zz, Method::uniform, opts);
                const DerivPair o = oracle_fd(100.0, zz);
                auto row = [&](const char* q, double a, double b) {
                    out << fmt("%4.0f", 100.0) << fmt(" %6.0f", zz) << "   " << q << fmt("  %16.6e", a)
                        << fmt(" %16.6e", b) << fmt("  %.3e", std::abs(a / b - 1.0)) << '\n';
                };
                row("dJ/dnu  ", u.jhat.value, o.jhat.value);
                row("dY/dnu  ", u.yhat.value, o.yhat.value);
            }
            return ok;
        }

        if (t1->parsed()) {
            const auto rows = table1(t1_nu);
            out << "eta_l(" << t1_nu << ", x) = |f_l / g_l - 1|\n";
            out << "   l      x        computed       reference\n";
            for (const auto& r : rows)
                out << fmt("%4.0f", r.l) << fmt(" %6.2f", r.x) << fmt("  %14.4e", r.eta)
                    << (std::isnan(r.reference) ? std::string("               -") : fmt("  %14.4e", r.reference)) << '\n';
            if (!t1_csv.empty()) {
                std::ofstream f(t1_csv);
                if (!f) throw DomainError("cannot write " + t1_csv);
                f << "l,x,eta,reference\n";
                for (const auto& r : rows)
                    f << r.l << ',' << format_csv_double(r.x) << ',' << format_csv_double(r.eta) << ','
                      << format_csv_double(r.reference) << '\n';
                if (!f) throw DomainError("cannot write " + t1_csv);
            }
            return ok;
        }

        if (sw->parsed()) {
            bool s = false, u = false, o = false;
            for (const auto& m : CLI::detail::split(sw_methods, ',')) {
                if (m == "series") s = true;
                else if (m == "uniform") u = true;
                else if (m == "oracle") o = true;
                else if (!m.empty()) throw DomainError("unknown method '" + m + "' in --methods");
            }
            if (!s && !u && !o) throw DomainError("--methods is empty");
            const auto nus = parse_list(sw_nu);
            const auto xs = parse_list(sw_x);
            if (nus.empty() || xs.empty()) throw DomainError("empty grid");
            if (nus.size() * xs.size() > 1'000'000) throw DomainError("grid larger than 1e6 points");
            for (double v : nus)
                if (!(v > 0.0)) throw DomainError("orders must be positive");
            for (double v : xs)
                if (!(v > 0.0)) throw DomainError("scaled arguments must be positive");
            std::ofstream file;
            std::ostream* dst = &out;
            if (sw_out != "-") {
                file.open(sw_out);
                if (!file) throw DomainError("cannot write " + sw_out);
                dst = &file;
            }
            const auto rows = sweep_rows(nus, xs, s, u, o, opts);
            *dst << csv_header() << '\n';
            for (const auto& r : rows) *dst << csv_line(r) << '\n';
            dst->flush();
            if (!*dst) throw DomainError("cannot write " + sw_out);
            return ok;
        }

        if (st->parsed()) {
            bool all = true;
            for (const auto& r : selftest(perturb)) {
                out << (r.pass ? "PASS  " : "FAIL  ") << r.name << "  worst=" << fmt("%.3e", r.worst)
                    << "  limit=" << fmt("%.1e", r.limit) << '\n';
                all = all && r.pass;
            }
            return all ? ok : selftest_failed;
        }
    } catch (const ToleranceNotMet& e) {
        err << "error: " << e.what() << " (best estimate " << fmt("%.9e", e.best_estimate) << ", achieved error "
            << fmt("%.3e", e.achieved_error) << ")\n";
        return tolerance;
    } catch (const PathFailure& e) {
        err << "error: " << e.what() << '\n';
        return tolerance;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return bad_input;
    }
    return bad_input;
}

}  // namespace nuderiv::cli
