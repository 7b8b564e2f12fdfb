/**
 * Wyner's common information
 *
 *   C(X;Y) = min I(X,Y;U)  over p(u|x,y) with X - U - Y,
 *
 * which is also the optimal common-message rate when the processors share
 * no randomness with the coordinator.
 *
 * The Markov constraint is the zero set of I(X;Y|U), so each restart
 * minimizes I(X,Y;U) + lambda I(X;Y|U) for an increasing sequence of
 * lambda, warm-starting every stage. A restart counts only if its final
 * channel has I(X;Y|U) <= kMarkovTolerance. The reported value is the
 * smallest feasible I(X,Y;U) found: an upper bound on C(X;Y).
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "coordination/channel_opt.hpp"
#include "coordination/detail/parallel.hpp"
#include "coordination/detail/rng.hpp"
#include "coordination/info.hpp"
#include "coordination/pmf.hpp"

namespace coordination {

inline constexpr double kMarkovTolerance = 1e-6;

struct WynerResult {
    double value;          // I(X,Y;U) of `channel`
    AuxChannel channel;    // p(u|x,y)
    double markov_defect;  // I(X;Y|U) of `channel`
    double lower_bound;    // I(X;Y)
    double upper_bound;    // min{H(X), H(Y)}
    std::size_t feasible_restarts;
};

/// Thrown when no restart reaches the Markov tolerance; carries the least
/// infeasible channel for diagnostics.
class SolverInfeasible : public std::runtime_error {
public:
    SolverInfeasible(const std::string& what, WynerResult best)
        : std::runtime_error(what), best_(std::move(best)) {}
    const WynerResult& best() const { return best_; }

private:
    WynerResult best_;
};

/// Closed-form Wyner minimizer for DSBS(a), a in (0, 1/2).
inline AuxChannel dsbs_wyner_channel(double a) {
    if (!(a > 0.0 && a < 0.5)) throw std::invalid_argument("dsbs_wyner_channel: a must lie in (0, 0.5)");
    const double b = 0.5 * (1.0 - std::sqrt(1.0 - 2.0 * a));
    const double r = b * b / (1.0 - a);
    // rows indexed (x,y) = (0,0), (0,1), (1,0), (1,1); entries p(u=0), p(u=1)
    return AuxChannel::single(2, 2, 2, {{1.0 - r, r}, {0.5, 0.5}, {0.5, 0.5}, {r, 1.0 - r}});
}

namespace detail {

struct WynerCandidate {
    std::vector<double> rows;
    ChannelTerms terms;
};

/// Pure I(X;Y|U), used to restore feasibility after the penalty stages.
struct MarkovDefectObjective {
    Combination operator()(const ChannelTerms& t) const { return {t.cond, 0.0, 1.0}; }
};

/// Runs the penalty schedule from w. If the last stage ends infeasible, the
/// end point is pushed toward the constraint set by descending on I(X;Y|U)
/// alone, and the feasible iterate with the smallest I(X,Y;U) seen at any
/// stage is returned instead.
inline WynerCandidate wyner_restart(const ChannelProblem& shared, std::vector<double> w,
                                    const SolverOptions& opts) {
    ChannelProblem prob = shared;
    WynerCandidate best;
    bool have_feasible = false;
    auto track = [&](const std::vector<double>& x, const ChannelTerms& t) {
        if (t.cond > kMarkovTolerance) return;
        if (!have_feasible || t.joint < best.terms.joint) {
            best = {x, t};
            have_feasible = true;
        }
    };
    track(w, prob.evaluate(w));
    for (double lambda : opts.penalty_schedule) {
        descend(prob, w, PenaltyObjective{lambda}, opts.max_iters, opts.tol_objective, track);
    }
    const ChannelTerms t = prob.evaluate(w);
    if (t.cond <= kMarkovTolerance) return {std::move(w), t};
    descend(prob, w, MarkovDefectObjective{}, opts.max_iters, opts.tol_objective * 1e-3, track);
    if (have_feasible) return best;
    return {w, prob.evaluate(w)};
}

}  // namespace detail

/**
 * Multi-start penalty solver for C(X;Y) with |U| = card_u.
 *
 * Restart i starts from a structured point for the first few indices (U = X
 * and U = Y when card_u allows) and from flat-Dirichlet rows seeded by
 * (opts.seed, i) otherwise. Restarts run on opts.threads workers; the
 * winner is chosen by a total order, so the result does not depend on the
 * thread count.
 */
inline WynerResult wyner_ci(const JointPmf& q, std::size_t card_u, const SolverOptions& opts = {}) {
    opts.validate();
    if (card_u < 1) throw std::invalid_argument("wyner_ci: card_u must be >= 1");
    const detail::ChannelProblem prob(q, card_u);

    std::vector<std::vector<double>> starts;
    if (card_u > 1) {
        if (card_u >= q.nx()) starts.push_back(detail::copy_rows(prob, false));
        if (card_u >= q.ny()) starts.push_back(detail::copy_rows(prob, true));
    }
    const std::size_t total = std::max<std::size_t>(opts.restarts, 1);
    std::vector<detail::WynerCandidate> results(card_u == 1 ? 1 : total);

    detail::parallel_for(results.size(), opts.threads, [&](std::size_t i) {
        std::vector<double> w;
        if (card_u == 1) {
            w.assign(prob.support(), 1.0);
        } else if (i < starts.size()) {
            w = starts[i];
        } else {
            detail::SplitMix64 rng(detail::derive_seed(opts.seed, {0x57594eULL, i}));
            w = detail::random_rows(prob, rng);
        }
        results[i] = detail::wyner_restart(prob, std::move(w), opts);
    });

    const detail::WynerCandidate* best = nullptr;
    const detail::WynerCandidate* least_infeasible = nullptr;
    std::size_t feasible = 0;
    for (const auto& c : results) {
        if (!least_infeasible || c.terms.cond < least_infeasible->terms.cond) least_infeasible = &c;
        if (c.terms.cond > kMarkovTolerance) continue;
        ++feasible;
        if (!best || detail::better_candidate(c.terms.joint, c.terms.cond, c.rows, best->terms.joint,
                                              best->terms.cond, best->rows)) {
            best = &c;
        }
    }

    const double lower = mutual_information(q);
    const double upper = std::min(entropy(marginal(q, Axis::X)), entropy(marginal(q, Axis::Y)));
    auto package = [&](const detail::WynerCandidate& c) {
        AuxChannel ch = prob.to_channel(c.rows);
        const ChannelTerms t = prob.evaluate(prob.from_channel(ch));
        return WynerResult{t.joint, std::move(ch), std::max(t.cond, 0.0), lower, upper, feasible};
    };
    if (!best) {
        throw SolverInfeasible("wyner_ci: no restart reached I(X;Y|U) <= 1e-6 (best " +
                                   std::to_string(least_infeasible->terms.cond) + ")",
                               package(*least_infeasible));
    }
    return package(*best);
}

/// Optimal rate without shared randomness, |U| = |X||Y| + 2.
inline WynerResult no_sr_rate(const JointPmf& q, const SolverOptions& opts = {}) {
    return wyner_ci(q, q.nx() * q.ny() + 2, opts);
}

}  // namespace coordination
