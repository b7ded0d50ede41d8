#include "harness/commands.hpp"

#include "lmmroot/rate_theory.hpp"
#include "lmmroot/robust.hpp"
#include "lmmroot/stop.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>

namespace lmmroot::harness {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

const char* table_name(RateTableKind kind) {
    switch (kind) {
        case RateTableKind::full: return "full";
        case RateTableKind::derivative_free: return "derivative_free";
        case RateTableKind::adams_bashforth: return "adams_bashforth";
    }
    return "unknown";
}

int decimals_of(const std::string& s) {
    const auto dot = s.find('.');
    return dot == std::string::npos ? 0 : static_cast<int>(s.size() - dot - 1);
}

std::string fmt(double x, int digits = 17) { return format_scalar(x, digits); }

/// Shortest decimal that round-trips, for inputs such as starts and brackets.
std::string fmt_short(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string fmt_rate(const std::optional<double>& p) { return p ? round_half_away(*p, 3) : "n/a"; }

}  // namespace

void RunConfig::validate() const {
    if (command == Command::bench) {
        if (digits < 50) throw Error(Errc::invalid_argument, "--digits must be at least 50 for bench");
        if (eta < 1 || static_cast<unsigned>(eta) >= digits) {
            throw Error(Errc::invalid_argument, "--eta must lie in [1, digits)");
        }
    }
    if (s_max < 1 || s_max > 12) throw Error(Errc::invalid_argument, "--smax must lie in [1, 12]");
    if (d_max < 1 || d_max > 8) throw Error(Errc::invalid_argument, "--dmax must lie in [1, 8]");
    if (delta && !(*delta > 0 && *delta < 1)) throw Error(Errc::invalid_argument, "--delta must lie in (0, 1)");
    if (random_polynomials < 0) throw Error(Errc::invalid_argument, "--random must be non-negative");
}

// rates

std::vector<RateRow> compute_rates(int s_max, int d_max) {
    std::vector<RateRow> rows;
    auto add = [&](RateTableKind kind, const RateCell& cell, const std::map<std::pair<int, int>, std::string>& published) {
        RateRow r{kind, cell.s, cell.d, cell.value, "n/a", std::nullopt, true};
        if (auto it = published.find({cell.s, cell.d}); it != published.end()) r.published = it->second;
        if (cell.value) r.rounded = round_half_away(*cell.value, r.published ? decimals_of(*r.published) : 2);
        if (r.published) r.matches = r.rounded == *r.published;
        rows.push_back(std::move(r));
    };
    for (const auto& c : rate_table(RateFamily::derivative_free, s_max)) {
        add(RateTableKind::derivative_free, c, published_rates_derivative_free());
    }
    for (const auto& c : rate_table(RateFamily::adams_bashforth, s_max)) {
        add(RateTableKind::adams_bashforth, c, published_rates_adams_bashforth());
    }
    for (const auto& c : rate_table(RateFamily::full, s_max, 1, d_max)) {
        add(RateTableKind::full, c, published_rates_full());
    }
    return rows;
}

CommandOutput cmd_rates(const RunConfig& config) {
    config.validate();
    CommandOutput out;
    const auto rows = compute_rates(config.s_max, config.d_max);

    std::vector<Table> tables;
    for (auto kind : {RateTableKind::derivative_free, RateTableKind::adams_bashforth, RateTableKind::full}) {
        Table t;
        t.title = std::string("Predicted convergence order: ") + table_name(kind);
        t.headers = {"table", "s", "d", "predicted", "rounded", "published", "match"};
        for (const auto& r : rows) {
            if (r.table != kind) continue;
            t.add_row({table_name(kind), std::to_string(r.s), std::to_string(r.d),
                       r.value ? fmt(*r.value, 12) : "n/a", r.rounded, r.published.value_or(""),
                       r.published ? (r.matches ? "yes" : "no") : ""});
            if (!r.matches) {
                out.diagnostics.push_back(std::string("mismatch ") + table_name(kind) + " s=" + std::to_string(r.s) +
                                          " d=" + std::to_string(r.d) + ": computed " + r.rounded + " (" +
                                          fmt(*r.value, 8) + "), published " + *r.published);
            }
        }
        tables.push_back(std::move(t));
    }
    if (config.format == OutputFormat::csv) {
        Table merged = tables.front();
        merged.title.clear();
        for (std::size_t i = 1; i < tables.size(); ++i) {
            merged.rows.insert(merged.rows.end(), tables[i].rows.begin(), tables[i].rows.end());
        }
        out.text = render_csv(merged);
    } else {
        out.text = render(tables, OutputFormat::markdown);
    }
    out.exit_code = out.diagnostics.empty() ? kExitOk : kExitMismatch;
    return out;
}

// bench

const MethodRun& BenchRow::run(const std::string& method) const {
    for (const auto& r : runs) {
        if (r.method == method) return r;
    }
    throw Error(Errc::invalid_argument, "no run for method " + method);
}

BenchResult run_bench(unsigned digits, int eta) {
    PrecisionScope scope(digits);
    using T = Extended;
    const auto stop = StopCriterion<T>::absolute_increment(decimal_tolerance<T>(eta));
    const T noise_floor = decimal_tolerance<T>(static_cast<int>(digits) - 10);
    const std::vector<std::pair<std::string, SolverSpec<T>>> specs = {
        {"newton", SolverSpec<T>::newton(stop)},
        {"s2", SolverSpec<T>::full_lmm(2, stop)},
        {"s3", SolverSpec<T>::full_lmm(3, stop)},
    };

    BenchResult result;
    for (const CorpusEntry* entry : benchmark_entries()) {
        const Problem<T> problem = entry->problem<T>();
        BenchRow row{entry, {}};
        for (std::size_t m = 0; m < specs.size(); ++m) {
            const auto report = run(problem, specs[m].second, problem.default_start);
            MethodRun mr;
            mr.method = specs[m].first;
            mr.status = report.status;
            mr.iterations = report.iterations();
            mr.final_x = format_scalar(report.final_x, 20);
            try {
                const auto est = estimate_rate(report.history, *problem.known_root, noise_floor);
                mr.rate = static_cast<double>(est.limit);
                mr.rate_settled = est.settled;
            } catch (const Error&) {
                // too few iterates for an estimate
            }
            if (!report.converged()) result.all_converged = false;
            result.totals[m] += mr.iterations;
            const int published = entry->published_iters.at(mr.method);
            result.published_totals[m] += published;
            if (std::abs(mr.iterations - published) > 1) result.rows_within_one = false;
            row.runs.push_back(std::move(mr));
        }
        auto near = [](const std::optional<double>& p, double ref) { return p && std::abs(*p - ref) <= 0.05 + 1e-12; };
        const bool p2_ok = near(row.run("s2").rate, entry->published_rates.at("s2"));
        const bool p3_ok = entry->id == "x^3-x-1" || near(row.run("s3").rate, entry->published_rates.at("s3"));
        if (p2_ok && p3_ok) ++result.rate_rows_ok;
        result.rows.push_back(std::move(row));
    }
    for (int m = 0; m < 3; ++m) {
        if (std::abs(result.totals[m] - result.published_totals[m]) > 5) result.totals_within_five = false;
    }
    return result;
}

CommandOutput cmd_bench(const RunConfig& config) {
    config.validate();
    CommandOutput out;
    const BenchResult res = run_bench(config.digits, config.eta);

    Table t;
    t.title = "Open solvers at " + std::to_string(config.digits) + " digits, eta = " + std::to_string(config.eta);
    t.headers = {"function", "root", "x0", "its_newton", "its_s2", "its_s3", "p2", "p3",
                 "published_its_newton", "published_its_s2", "published_its_s3", "published_p2", "published_p3", "status"};
    for (const auto& row : res.rows) {
        const auto& e = *row.entry;
        std::string status = "ok";
        for (const auto& r : row.runs) {
            if (r.status != SolveStatus::converged) status = r.method + ":" + std::string(to_string(r.status));
        }
        t.add_row({e.id, e.published_root_display, fmt_short(e.start), std::to_string(row.run("newton").iterations),
                   std::to_string(row.run("s2").iterations), std::to_string(row.run("s3").iterations),
                   fmt_rate(row.run("s2").rate), fmt_rate(row.run("s3").rate),
                   std::to_string(e.published_iters.at("newton")), std::to_string(e.published_iters.at("s2")),
                   std::to_string(e.published_iters.at("s3")), round_half_away(e.published_rates.at("s2"), 2),
                   round_half_away(e.published_rates.at("s3"), 2), status});
        for (const auto& r : row.runs) {
            const int published = e.published_iters.at(r.method);
            if (r.status != SolveStatus::converged) {
                out.diagnostics.push_back(e.id + " " + r.method + ": " + std::string(to_string(r.status)));
            } else if (std::abs(r.iterations - published) > 1) {
                out.diagnostics.push_back(e.id + " " + r.method + ": " + std::to_string(r.iterations) +
                                          " iterations, published " + std::to_string(published));
            }
        }
    }
    t.add_row({"TOTAL", "", "", std::to_string(res.totals[0]), std::to_string(res.totals[1]),
               std::to_string(res.totals[2]), "", "", std::to_string(res.published_totals[0]),
               std::to_string(res.published_totals[1]), std::to_string(res.published_totals[2]), "", "", ""});
    if (!res.totals_within_five) {
        out.diagnostics.push_back("totals " + std::to_string(res.totals[0]) + "/" + std::to_string(res.totals[1]) + "/" +
                                  std::to_string(res.totals[2]) + " differ from " + std::to_string(res.published_totals[0]) +
                                  "/" + std::to_string(res.published_totals[1]) + "/" + std::to_string(res.published_totals[2]) +
                                  " by more than 5");
    }
    if (res.rate_rows_ok < 9) {
        out.diagnostics.push_back("estimated rates agree on " + std::to_string(res.rate_rows_ok) + " of 11 rows");
    }
    out.text = render(t, config.format);
    if (!res.all_converged) {
        out.exit_code = kExitSolverFailure;
    } else if (!res.rows_within_one || !res.totals_within_five || res.rate_rows_ok < 9) {
        out.exit_code = kExitMismatch;
    }
    return out;
}

// pathology

const TranscriptRun& PathologyCase::run(const std::string& method) const {
    for (const auto& r : runs) {
        if (r.method == method) return r;
    }
    throw Error(Errc::invalid_argument, "no run for method " + method);
}

std::string format_transcript(double x) {
    if (std::isnan(x)) return "NaN";
    if (std::isinf(x)) return x > 0 ? "Inf" : "-Inf";
    if (x == 0) return "0";
    const double ax = std::abs(x);
    char buf[64];
    if (ax >= 0.1 && ax < 1e4) {
        const int int_digits = ax >= 1 ? static_cast<int>(std::floor(std::log10(ax))) + 1 : 0;
        std::snprintf(buf, sizeof buf, "%.*f", std::max(0, 4 - int_digits), x);
        return buf;
    }
    std::snprintf(buf, sizeof buf, "%.3e", x);
    std::string s(buf);
    const auto e = s.find('e');
    std::string mant = s.substr(0, e);
    int exp = std::stoi(s.substr(e + 1));
    return mant + "e" + std::to_string(exp);
}

PathologyResult run_pathology() {
    const auto stop = StopCriterion<double>::absolute_increment(two_epsilon<double>());
    // Newton on the cube-root Gaussian drifts outward for several hundred steps
    // before its increments fall below 2 eps.
    constexpr int max_iters = 10000;
    const std::vector<std::pair<std::string, SolverSpec<double>>> specs = {
        {"newton", SolverSpec<double>::newton(stop, max_iters)},
        {"s2", SolverSpec<double>::full_lmm(2, stop, max_iters)},
        {"s3", SolverSpec<double>::full_lmm(3, stop, max_iters)},
    };
    auto run_case = [&](const CorpusEntry& entry) {
        PathologyCase pc{&entry, {}};
        const Problem<double> problem = entry.problem<double>();
        const double root = *problem.known_root;
        for (const auto& [name, spec] : specs) {
            const auto report = run(problem, spec, problem.default_start);
            TranscriptRun tr;
            tr.method = name;
            tr.status = report.status;
            tr.xs = report.history.xs();
            tr.diverged = report.status == SolveStatus::diverged;
            const double err = std::abs(report.final_x - root);
            tr.reached_root = report.converged() && err < kEps;
            tr.false_convergence = report.converged() && err > 1e-6 * (1 + std::abs(root));
            pc.runs.push_back(std::move(tr));
        }
        return pc;
    };

    PathologyResult res;
    res.tanh_case = run_case(find_entry("tanh(x)"));
    res.h_case = run_case(find_entry("cbrt(x)exp(-x^2)"));

    auto iterations = [](const TranscriptRun& r) { return static_cast<int>(r.xs.size()) - 1; };
    const auto& tn = res.tanh_case.run("newton");
    bool nonfinite_early = false;
    for (std::size_t i = 0; i < tn.xs.size() && i <= 5; ++i) nonfinite_early |= !std::isfinite(tn.xs[i]);
    if (!nonfinite_early) res.failed_checks.push_back("tanh newton: no non-finite iterate within 5 steps");

    const auto& t2 = res.tanh_case.run("s2");
    if (t2.status != SolveStatus::converged || std::abs(t2.xs.back()) >= 2 * kEps || iterations(t2) > 8) {
        res.failed_checks.push_back("tanh s2: did not reach |x| < 2 eps within 8 iterations");
    }
    for (const char* m : {"s2", "s3"}) {
        const auto& r = res.h_case.run(m);
        if (r.status != SolveStatus::converged || std::abs(r.xs.back()) >= kEps || iterations(r) > 16) {
            res.failed_checks.push_back(std::string("h ") + m + ": did not reach |x| < eps within 16 iterations");
        }
    }
    const auto& hn = res.h_case.run("newton");
    if (!hn.false_convergence || !(std::abs(hn.xs.back()) > 1)) {
        res.failed_checks.push_back("h newton: false convergence not detected");
    }
    return res;
}

namespace {

std::string run_flag(const TranscriptRun& r) {
    if (r.diverged) return "diverged";
    if (r.false_convergence) return "false-convergence";
    if (r.reached_root) return "converged |x|<eps";
    return std::string(to_string(r.status));
}

std::string display_cell(const TranscriptRun& r, std::size_t i) {
    if (i >= r.xs.size()) return "";
    const double x = r.xs[i];
    if (std::abs(x) < kEps) return "|x|<eps (" + format_transcript(x) + ")";
    return format_transcript(x);
}

}  // namespace

CommandOutput cmd_pathology(const RunConfig& config) {
    config.validate();
    CommandOutput out;
    const PathologyResult res = run_pathology();

    if (config.format == OutputFormat::csv) {
        Table t;
        t.headers = {"function", "method", "row", "x", "display", "flag"};
        for (const PathologyCase* pc : {&res.tanh_case, &res.h_case}) {
            for (const auto& r : pc->runs) {
                for (std::size_t i = 0; i < r.xs.size(); ++i) {
                    t.add_row({pc->entry->id, r.method, std::to_string(i), fmt(r.xs[i]), display_cell(r, i),
                               i + 1 == r.xs.size() ? run_flag(r) : ""});
                }
            }
        }
        out.text = render_csv(t);
    } else {
        std::vector<Table> tables;
        for (const PathologyCase* pc : {&res.tanh_case, &res.h_case}) {
            Table t;
            t.title = "Iterate history for " + pc->entry->display + " from x0 = " + fmt_short(pc->entry->start);
            t.headers = {"row", "newton", "s2", "s3"};
            std::size_t shown = 16;
            std::size_t longest = 0;
            for (const auto& r : pc->runs) {
                if (r.method != "newton") shown = std::max(shown, r.xs.size());
                longest = std::max(longest, r.xs.size());
            }
            shown = std::min(shown, longest);
            for (std::size_t i = 0; i < shown; ++i) {
                t.add_row({std::to_string(i), display_cell(pc->run("newton"), i), display_cell(pc->run("s2"), i),
                           display_cell(pc->run("s3"), i)});
            }
            if (longest > shown) {
                std::vector<std::string> last = {"last"};
                for (const auto& r : pc->runs) {
                    last.push_back(r.xs.size() > shown ? "row " + std::to_string(r.xs.size() - 1) + ": " +
                                                             format_transcript(r.xs.back())
                                                       : "");
                }
                t.add_row(std::move(last));
            }
            t.add_row({"flag", run_flag(pc->run("newton")), run_flag(pc->run("s2")), run_flag(pc->run("s3"))});
            tables.push_back(std::move(t));
        }
        out.text = render(tables, OutputFormat::markdown);
    }
    out.diagnostics = res.failed_checks;
    out.exit_code = res.failed_checks.empty() ? kExitOk : kExitMismatch;
    return out;
}

// robust

RobustResult run_robust(double delta, unsigned long long seed, int random_count) {
    RobustResult res;
    for (const CorpusEntry* entry : benchmark_entries()) {
        if (!entry->bracket) continue;
        const Problem<double> problem = entry->problem<double>();
        const auto rep = solve_bracketed(problem, entry->bracket->a, entry->bracket->b, delta);
        RobustRow row;
        row.entry = entry;
        row.status = rep.report.status;
        row.iterations = rep.iterations();
        row.loop_evaluations = rep.loop_evaluations();
        row.root = rep.report.final_x;
        row.a = rep.a;
        row.b = rep.b;
        for (const auto& st : rep.steps) {
            row.methods.push_back(st.kind == StepKind::interpolation ? st.method_used : std::string(to_string(st.kind)));
        }
        res.total_iterations += row.iterations;
        res.total_evaluations += row.loop_evaluations;
        res.published_total_lmm += entry->bracket->lmm_iters;
        res.published_total_brent += entry->bracket->brent_iters;
        if (row.status != SolveStatus::converged) res.all_converged = false;
        if (std::abs(row.iterations - entry->bracket->lmm_iters) > 2) res.rows_within_two = false;
        res.rows.push_back(std::move(row));
    }

    const auto polys = random_polynomials(seed, random_count);
    res.sweep.count = random_count;
    for (std::size_t i = 0; i < polys.size(); ++i) {
        const auto problem = polys[i].problem("poly" + std::to_string(i));
        const auto rep = solve_bracketed(problem, polys[i].a, polys[i].b, delta);
        if (rep.report.converged()) ++res.sweep.converged;
        if (std::abs(rep.a - rep.b) <= delta * std::abs(rep.b) || problem.f(rep.report.final_x) == 0) {
            ++res.sweep.satisfied_criterion;
        }
        res.sweep.max_iterations = std::max(res.sweep.max_iterations, rep.iterations());
    }
    return res;
}

CommandOutput cmd_robust(const RunConfig& config) {
    config.validate();
    CommandOutput out;
    const double delta = config.delta.value_or(2 * kEps);
    const RobustResult res = run_robust(delta, config.seed, config.random_polynomials);

    Table t;
    t.title = "Bracketed solver, delta = " + fmt(delta, 6);
    t.headers = {"function", "root", "a", "b", "its_lmm", "evals_lmm", "published_its_brent", "published_its_lmm", "status"};
    for (const auto& row : res.rows) {
        const auto& e = *row.entry;
        t.add_row({e.id, fmt(row.root), fmt_short(e.bracket->a), fmt_short(e.bracket->b), std::to_string(row.iterations),
                   std::to_string(row.loop_evaluations), std::to_string(e.bracket->brent_iters),
                   std::to_string(e.bracket->lmm_iters), std::string(to_string(row.status))});
        if (row.status != SolveStatus::converged) {
            out.diagnostics.push_back(e.id + ": " + std::string(to_string(row.status)));
        } else if (std::abs(row.iterations - e.bracket->lmm_iters) > 2) {
            out.diagnostics.push_back(e.id + ": " + std::to_string(row.iterations) + " iterations, published " +
                                      std::to_string(e.bracket->lmm_iters));
        }
    }
    t.add_row({"TOTAL", "", "", "", std::to_string(res.total_iterations), std::to_string(res.total_evaluations),
               std::to_string(res.published_total_brent), std::to_string(res.published_total_lmm), ""});
    out.text = render(t, config.format);
    out.diagnostics.push_back("random polynomials: " + std::to_string(res.sweep.converged) + "/" +
                              std::to_string(res.sweep.count) + " converged, " +
                              std::to_string(res.sweep.satisfied_criterion) + " met the bracket criterion, at most " +
                              std::to_string(res.sweep.max_iterations) + " iterations (seed " +
                              std::to_string(config.seed) + ")");

    const bool sweep_ok = res.sweep.converged == res.sweep.count && res.sweep.satisfied_criterion == res.sweep.count;
    if (!res.all_converged || !sweep_ok) {
        out.exit_code = kExitSolverFailure;
    } else if (!res.rows_within_two || res.total_iterations > 60 || res.total_evaluations != 2L * res.total_iterations) {
        out.exit_code = kExitMismatch;
    }
    return out;
}

CommandOutput dispatch(const RunConfig& config) {
    switch (config.command) {
        case Command::rates: return cmd_rates(config);
        case Command::bench: return cmd_bench(config);
        case Command::pathology: return cmd_pathology(config);
        case Command::robust: return cmd_robust(config);
    }
    throw Error(Errc::invalid_argument, "unknown command");
}

}  // namespace lmmroot::harness
