#pragma once

#include "lmmroot/error.hpp"
#include "lmmroot/interp.hpp"
#include "lmmroot/problem.hpp"
#include "lmmroot/scalar.hpp"
#include "lmmroot/solvers.hpp"
#include "lmmroot/stop.hpp"

#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lmmroot {

/// Bracket [a, b] (in either order) with f(a) f(b) < 0. b is the best point
/// so far, c the previous value of b. f and f' are cached at all three.
template <Real T>
struct BracketState {
    T a, b, c;
    T fa, fb, fc;
    T dfa, dfb, dfc;
    T delta;

    T width() const {
        using std::abs;
        return abs(a - b);
    }
};

enum class StepKind { interpolation, bisection, tolerance };

std::string_view to_string(StepKind kind) noexcept;

/// Which derivatives passed the sign gate and which interpolation variant
/// they select.
template <Real T>
struct GateReport {
    T secant_slope{};
    bool use_da = false;
    bool use_db = false;
    bool use_dc = false;
    int points_used = 2;  ///< 3 when f(a), f(b), f(c) are pairwise distinct
    std::string method_used;
};

/// Label of an interpolation variant, e.g. "s3 f'(a,b)" or "s2 secant".
std::string variant_label(int points, bool da, bool db, bool dc);

/// A derivative is admitted only if it is nonzero and has the sign of the
/// bracket's secant slope (f is monotone on a valid bracket near the root).
template <Real T>
GateReport<T> gate_derivatives(const BracketState<T>& st) {
    GateReport<T> g;
    g.secant_slope = (st.fb - st.fa) / (st.b - st.a);
    const int want = sign(g.secant_slope);
    auto admit = [&](const T& df) { return df != 0 && sign(df) == want; };
    g.use_da = admit(st.dfa);
    g.use_db = admit(st.dfb);
    g.use_dc = admit(st.dfc);
    const bool distinct_c = st.c != st.a && st.c != st.b && !coincident(st.fc, st.fa) &&
                            !coincident(st.fc, st.fb) && !coincident(st.fa, st.fb);
    g.points_used = distinct_c ? 3 : 2;
    if (g.points_used == 2) g.use_dc = false;
    g.method_used = variant_label(g.points_used, g.use_da, g.use_db, g.use_dc);
    return g;
}

template <Real T>
struct Proposal {
    T candidate;
    std::string method_used;
};

/// Inverse-Hermite candidate H(0) from the gated data. A degenerate build
/// falls back to the two-point variant, then to the secant.
template <Real T>
Proposal<T> propose_step(const BracketState<T>& st, const GateReport<T>& gate) {
    auto node = [](const T& x, const T& fx, const T& dfx, bool use) {
        InverseNode<T> n{fx, x, std::nullopt};
        if (use) n.slope = 1 / dfx;
        return n;
    };
    struct Variant {
        int points;
        bool da, db, dc;
    };
    std::vector<Variant> ladder;
    if (gate.points_used == 3) ladder.push_back({3, gate.use_da, gate.use_db, gate.use_dc});
    ladder.push_back({2, gate.use_da, gate.use_db, false});
    ladder.push_back({2, false, false, false});

    for (const auto& v : ladder) {
        std::vector<InverseNode<T>> nodes;
        if (v.points == 3) nodes.push_back(node(st.c, st.fc, st.dfc, v.dc));
        nodes.push_back(node(st.a, st.fa, st.dfa, v.da));
        nodes.push_back(node(st.b, st.fb, st.dfb, v.db));
        try {
            const T cand = eval_interpolant_at_zero(build_inverse_hermite<T>(nodes));
            if (is_finite(cand)) return {cand, variant_label(v.points, v.da, v.db, v.dc)};
        } catch (const Error&) {
            // next variant
        }
    }
    // Only reachable with a non-finite secant: let the guard bisect.
    return {quiet_nan<T>(), variant_label(2, false, false, false)};
}

/// Safeguard: candidates within delta|b| of b are moved a distance delta|b|
/// toward a; candidates outside the bracket, or no closer to b than half the
/// bracket, are replaced by the midpoint.
template <Real T>
std::pair<T, StepKind> guard_step(const T& candidate, const BracketState<T>& st) {
    using std::abs;
    const T lo = st.a < st.b ? st.a : st.b;
    const T hi = st.a < st.b ? st.b : st.a;
    const T mid = st.b + (st.a - st.b) / 2;
    T tol = st.delta * abs(st.b);
    if (tol == 0) tol = st.delta * std::numeric_limits<double>::min();

    if (is_finite(candidate) && abs(candidate - st.b) < tol) {
        const T x = st.b + T(sign(st.a - st.b)) * tol;
        if (lo < x && x < hi) return {x, StepKind::tolerance};
        return {mid, StepKind::bisection};
    }
    if (!is_finite(candidate) || !(lo < candidate && candidate < hi) ||
        abs(candidate - st.b) >= abs(st.a - st.b) / 2) {
        return {mid, StepKind::bisection};
    }
    return {candidate, StepKind::interpolation};
}

template <Real T>
struct RobustStep {
    GateReport<T> gate;
    std::string method_used;  ///< variant that produced the candidate
    T candidate;
    T x;  ///< accepted point
    StepKind kind;
    T a, b;  ///< bracket after the step
};

template <Real T>
struct RobustReport {
    SolveReport<T> report;  ///< history holds a, b, then every accepted point
    T a{}, b{};             ///< final bracket
    std::vector<RobustStep<T>> steps;

    int iterations() const noexcept { return static_cast<int>(steps.size()); }
    /// f plus f' evaluations spent inside the loop.
    long loop_evaluations() const noexcept { return 2L * iterations(); }
};

/// Bracketed solve on [a, b] with relative tolerance delta. An endpoint that is
/// an exact root is returned directly; a bracket without a sign change throws
/// `invalid_bracket`.
template <Real T>
RobustReport<T> solve_bracketed(const Problem<T>& problem, T a, T b, T delta, int max_iters = 10000) {
    using std::abs;
    if (!(delta > 0) || !is_finite(delta)) throw Error(Errc::invalid_argument, "delta must be positive");
    if (!is_finite(a) || !is_finite(b) || a == b) throw Error(Errc::invalid_bracket, "degenerate bracket");

    RobustReport<T> out;
    Evaluator<T> ev(problem);
    auto& rep = out.report;

    auto finish = [&](SolveStatus status, const T& final_x, std::string detail = {}) {
        rep.status = status;
        rep.final_x = final_x;
        rep.detail = std::move(detail);
        rep.f_evals = ev.counts().f;
        rep.df_evals = ev.counts().df;
        return out;
    };

    Evaluation<T> ea = ev.evaluate(a);
    Evaluation<T> eb = ev.evaluate(b);
    rep.history.push(a, ea.fx, ea.dfx);
    rep.history.push(b, eb.fx, eb.dfx);
    out.a = a;
    out.b = b;
    if (ea.fx == 0 || eb.fx == 0) {
        return finish(SolveStatus::converged, ea.fx == 0 ? a : b, "endpoint is a root");
    }
    if (sign(ea.fx) == sign(eb.fx)) {
        throw Error(Errc::invalid_bracket, "f(a) and f(b) have the same sign");
    }

    BracketState<T> st{a, b, a, ea.fx, eb.fx, ea.fx, ea.dfx, eb.dfx, ea.dfx, delta};
    const auto criterion = StopCriterion<T>::relative_bracket(delta);

    for (int it = 0; it < max_iters; ++it) {
        if (abs(st.fa) < abs(st.fb)) {
            st.c = st.b;
            st.fc = st.fb;
            st.dfc = st.dfb;
            std::swap(st.a, st.b);
            std::swap(st.fa, st.fb);
            std::swap(st.dfa, st.dfb);
        }
        out.a = st.a;
        out.b = st.b;
        if (should_stop(criterion, st.a, st.b)) return finish(SolveStatus::converged, st.b);

        const GateReport<T> gate = gate_derivatives(st);
        const Proposal<T> prop = propose_step(st, gate);
        auto [x, kind] = guard_step(prop.candidate, st);

        Evaluation<T> ex;
        try {
            ex = ev.evaluate(x);
        } catch (const Error& e) {
            if (e.code() != Errc::domain_error) throw;
            const T mid = st.b + (st.a - st.b) / 2;
            if (x == mid) return finish(SolveStatus::domain_error, st.b, e.what());
            x = mid;
            kind = StepKind::bisection;
            try {
                ex = ev.evaluate(x);
            } catch (const Error& e2) {
                if (e2.code() != Errc::domain_error) throw;
                return finish(SolveStatus::domain_error, st.b, e2.what());
            }
        }
        rep.history.push(x, ex.fx, ex.dfx);

        if (ex.fx == 0) {
            st.a = x;
            st.b = x;
            out.a = x;
            out.b = x;
            out.steps.push_back({gate, prop.method_used, prop.candidate, x, kind, x, x});
            return finish(SolveStatus::converged, x);
        }
        if (sign(ex.fx) != sign(st.fb)) {
            st.a = st.b;
            st.fa = st.fb;
            st.dfa = st.dfb;
        }
        st.c = st.b;
        st.fc = st.fb;
        st.dfc = st.dfb;
        st.b = x;
        st.fb = ex.fx;
        st.dfb = ex.dfx;
        out.steps.push_back({gate, prop.method_used, prop.candidate, x, kind, st.a, st.b});
        out.a = st.a;
        out.b = st.b;
    }
    return finish(SolveStatus::max_iters, st.b);
}

}  // namespace lmmroot
