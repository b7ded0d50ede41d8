// Acceptance suite: one PASS/FAIL line per criterion.
//
//   lmmroot_acceptance            run everything
//   lmmroot_acceptance --criterion N

#include "harness/commands.hpp"
#include "lmmroot/lmmroot.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace lmmroot;

namespace {

constexpr unsigned long long kSeed = 20180101;

struct Outcome {
    bool pass;
    std::string detail;
};

double max_abs(const std::vector<double>& v) {
    double m = 0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

/// Normwise relative difference between two coefficient sets.
double coeff_diff(const LmmCoefficients<double>& x, const LmmCoefficients<double>& y) {
    double diff = 0;
    for (std::size_t k = 0; k < x.s; ++k) {
        diff = std::max({diff, std::abs(x.a[k] - y.a[k]), std::abs(x.b[k] - y.b[k])});
    }
    const double scale = std::max({1.0, max_abs(y.a), max_abs(y.b)});
    return diff / scale;
}

double residual_size(const LmmCoefficients<double>& c) {
    const auto r = order_residuals(c, static_cast<int>(2 * c.s - 1));
    // Each residual sums terms of size |q|^m |a| + |q|^(m-1) |b|; scale by that.
    double worst = 0;
    for (std::size_t m = 0; m < r.size(); ++m) {
        double scale = m == 0 ? 1.0 : 0.0;
        for (std::size_t k = 0; k < c.s; ++k) {
            const double q = std::abs(c.ratio(k));
            scale += std::pow(q, static_cast<double>(m)) * std::abs(c.a[k]) +
                     (m == 0 ? 0.0 : std::pow(q, static_cast<double>(m) - 1) * std::abs(c.b[k]));
        }
        worst = std::max(worst, std::abs(r[m]) / std::max(1.0, scale));
    }
    return worst;
}

Outcome criterion1() {
    const auto rows = harness::compute_rates(5, 4);
    int compared = 0;
    std::vector<std::string> bad;
    for (const auto& r : rows) {
        if (!r.published) continue;
        ++compared;
        if (!r.matches) {
            const char* t = r.table == harness::RateTableKind::full              ? "full"
                            : r.table == harness::RateTableKind::derivative_free ? "derivative-free"
                                                                                 : "adams-bashforth";
            bad.push_back(std::string(t) + " s=" + std::to_string(r.s) + " d=" + std::to_string(r.d) + " got " +
                          r.rounded + " expected " + *r.published);
        }
    }
    std::string detail = std::to_string(compared - static_cast<int>(bad.size())) + "/" + std::to_string(compared) +
                         " cells match";
    for (const auto& b : bad) detail += "; " + b;
    return {bad.empty(), detail};
}

Outcome criterion2() {
    std::mt19937_64 rng(kSeed);
    std::uniform_real_distribution<double> U(-10.0, 10.0);
    double worst_coeff = 0, worst_resid = 0;
    int n2 = 0, n3 = 0;
    while (n2 < 1000) {
        const double q = U(rng);
        if (std::abs(q - 1) < 0.1) continue;
        const auto closed = lmm_coefficients_s2(q);
        const auto solved = solve_lmm_coefficients(std::vector<double>{q}, SigmaMask::full(2));
        worst_coeff = std::max(worst_coeff, coeff_diff(closed, solved));
        worst_resid = std::max(worst_resid, residual_size(closed));
        ++n2;
    }
    while (n3 < 1000) {
        const double q0 = U(rng), q1 = U(rng);
        if (std::abs(q0 - 1) < 0.1 || std::abs(q1 - 1) < 0.1 || std::abs(q0 - q1) < 0.1) continue;
        const auto closed = lmm_coefficients_s3(q0, q1);
        const auto solved = solve_lmm_coefficients(std::vector<double>{q0, q1}, SigmaMask::full(3));
        worst_coeff = std::max(worst_coeff, coeff_diff(closed, solved));
        worst_resid = std::max(worst_resid, residual_size(closed));
        ++n3;
    }
    char buf[200];
    std::snprintf(buf, sizeof buf, "%d s=2 and %d s=3 ratio sets, max coefficient diff %.2e, max order residual %.2e",
                  n2, n3, worst_coeff, worst_resid);
    return {worst_coeff <= 1e-12 && worst_resid <= 1e-12, buf};
}

Outcome criterion3() {
    std::mt19937_64 rng(kSeed + 3);
    std::uniform_real_distribution<double> X(-5.0, 5.0);
    std::uniform_real_distribution<double> F(-1.0, 1.0);
    std::uniform_real_distribution<double> D(0.2, 5.0);
    double worst = 0;
    int checked = 0;
    while (checked < 1000) {
        const std::size_t s = 2 + static_cast<std::size_t>(checked % 3);  // 2, 3, 4
        std::vector<IterationRecord<double>> w;
        bool ok = true;
        for (std::size_t k = 0; k < s; ++k) {
            const double fk = F(rng);
            if (std::abs(fk) < 0.05) ok = false;
            for (const auto& r : w) {
                if (std::abs(*r.fx - fk) < 0.05) ok = false;
            }
            const double slope = (rng() & 1) ? D(rng) : -D(rng);
            w.push_back({X(rng), fk, slope, k});
        }
        if (!ok) continue;
        const std::span<const IterationRecord<double>> win(w);
        const auto q = step_ratios(win);
        LmmCoefficients<double> c;
        if (s == 2) {
            c = lmm_coefficients_s2(q[0]);
        } else if (s == 3) {
            c = lmm_coefficients_s3(q[0], q[1]);
        } else {
            c = solve_lmm_coefficients(q, SigmaMask::full(s));
        }
        const double lmm = lmm_step(c, win);
        const double herm = hermite_step(win, std::vector<bool>(s, true));
        double scale = std::abs(herm);
        for (const auto& r : w) scale = std::max(scale, std::abs(r.x));
        worst = std::max(worst, std::abs(lmm - herm) / std::max(1.0, scale));
        ++checked;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "%d node sets (s=2,3,4), max relative diff %.2e", checked, worst);
    return {worst <= 1e-12, buf};
}

Outcome criterion4() {
    const auto res = harness::run_bench(300, 250);
    std::ostringstream d;
    d << "totals " << res.totals[0] << "/" << res.totals[1] << "/" << res.totals[2] << " vs " << res.published_totals[0]
      << "/" << res.published_totals[1] << "/" << res.published_totals[2] << "; rows within 1: "
      << (res.rows_within_one ? "yes" : "no") << "; rate rows ok: " << res.rate_rows_ok << "/11";
    if (!res.all_converged) d << "; some runs did not converge";
    const bool pass = res.all_converged && res.rows_within_one && res.totals_within_five && res.rate_rows_ok >= 9;
    return {pass, d.str()};
}

Outcome criterion5() {
    const auto res = harness::run_pathology();
    std::string d = "tanh and cube-root Gaussian transcripts";
    for (const auto& f : res.failed_checks) d += "; " + f;
    if (res.failed_checks.empty()) d += " behave as expected";
    return {res.failed_checks.empty(), d};
}

Outcome criterion6() {
    const double delta = 2 * std::numeric_limits<double>::epsilon();
    const auto res = harness::run_robust(delta, kSeed, 500);
    std::ostringstream d;
    d << "total iterations " << res.total_iterations << " (limit 60), evaluations " << res.total_evaluations
      << ", rows within 2: " << (res.rows_within_two ? "yes" : "no") << ", random sweep " << res.sweep.converged
      << "/" << res.sweep.count << " converged, " << res.sweep.satisfied_criterion << " met the bracket criterion";
    const bool pass = res.all_converged && res.rows_within_two && res.total_iterations <= 60 &&
                      res.total_evaluations == 2L * res.total_iterations && res.sweep.count == 500 &&
                      res.sweep.converged == 500 && res.sweep.satisfied_criterion == 500;
    return {pass, d.str()};
}

Outcome criterion7() {
    int checked = 0, mismatched = 0;
    double first_bad = std::nan(""), last_bad = std::nan("");
    for (int i = 0; i < 10000; ++i) {
        const double q = -10.0 + 20.0 * (i + 0.5) / 10000.0;
        if (std::abs(q - 1) < 1e-9 || q == 0 || q == 3) continue;
        const auto rep = parasitic_analysis_s2(q);
        const bool expected = q < 0 || q > 3;
        ++checked;
        if (rep.stable != expected) {
            ++mismatched;
            if (std::isnan(first_bad)) first_bad = q;
            last_bad = q;
        }
    }
    char buf[200];
    if (mismatched == 0) {
        std::snprintf(buf, sizeof buf, "%d grid points, stable region is q<0 or q>3", checked);
    } else {
        std::snprintf(buf, sizeof buf, "%d grid points, %d disagree (|a0|<1 also for q in [%.4f, %.4f])", checked,
                      mismatched, first_bad, last_bad);
    }
    return {mismatched == 0, buf};
}

Outcome criterion8() {
    double worst = 0;
    std::string d;
    for (double p : {1.62, 2.0, 2.41, 2.73, 2.91}) {
        IterateHistory<double> h;
        double e = 0.05;
        while (e > 1e-250 && h.size() < 60) {
            h.push(e, std::nullopt, std::nullopt);
            e = 0.7 * std::pow(e, p);
        }
        const auto est = estimate_rate(h, 0.0);
        worst = std::max(worst, std::abs(est.limit - p));
        char buf[48];
        std::snprintf(buf, sizeof buf, "%s%.6f", d.empty() ? "" : " ", est.limit);
        d += buf;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "; max error %.2e", worst);
    return {worst <= 1e-4, "estimates " + d + buf};
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::function<Outcome()>> criteria = {criterion1, criterion2, criterion3, criterion4,
                                                           criterion5, criterion6, criterion7, criterion8};
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else {
            std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
            return 2;
        }
    }
    if (only < 0 || only > static_cast<int>(criteria.size())) {
        std::fprintf(stderr, "criterion must be 1..%zu\n", criteria.size());
        return 2;
    }
    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (only != 0 && static_cast<int>(i) + 1 != only) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i]();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("criterion %zu: %s %s (%.2f s)\n", i + 1, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
        std::fflush(stdout);
        all = all && o.pass;
    }
    return all ? 0 : 1;
}
