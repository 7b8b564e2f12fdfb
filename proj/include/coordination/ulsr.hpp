/**
 * Optimal common-message rate under unlimited shared randomness:
 *
 *   min over p(u|x,y) of  max{ I(X;Y|U), I(X,Y;U) }                 (MaxPair)
 *                      =  max{ I(X;Y|U), (I(X,Y;U) + I(X;Y|U)) / 2 } (MaxAvg)
 *
 * with |U| <= |X||Y| + 2. Both forms are min-max problems whose optimum
 * typically sits on the kink where the two branches are equal, so each
 * restart first minimizes a log-sum-exp smoothing of the max at increasing
 * inverse temperatures and then polishes on the exact max with the
 * gradient of the active branch. The exact objective of every accepted
 * iterate is tracked and the best one is kept.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "coordination/channel_opt.hpp"
#include "coordination/detail/parallel.hpp"
#include "coordination/detail/rng.hpp"
#include "coordination/dsbs.hpp"
#include "coordination/info.hpp"
#include "coordination/pmf.hpp"
#include "coordination/wyner.hpp"

namespace coordination {

enum class UlsrForm { MaxPair, MaxAvg };

struct UlsrResult {
    double value;
    AuxChannel channel;
    double term_cond;   // I(X;Y|U)
    double term_joint;  // I(X,Y;U)
};

namespace detail {

/// Second branch of the max and its weights on (joint, cond).
struct Branch {
    double joint_weight;
    double cond_weight;
    double operator()(const ChannelTerms& t) const { return joint_weight * t.joint + cond_weight * t.cond; }
};

inline Branch second_branch(UlsrForm form) {
    return form == UlsrForm::MaxPair ? Branch{1.0, 0.0} : Branch{0.5, 0.5};
}

inline double ulsr_value(const ChannelTerms& t, UlsrForm form) {
    return std::max(t.cond, second_branch(form)(t));
}

struct SmoothMaxObjective {
    Branch branch;
    double temperature;
    Combination operator()(const ChannelTerms& t) const {
        const double a = t.cond;
        const double b = branch(t);
        const double m = std::max(a, b);
        const double ea = std::exp(temperature * (a - m));
        const double eb = std::exp(temperature * (b - m));
        const double sum = ea + eb;
        const double sa = ea / sum;
        const double sb = eb / sum;
        return {m + std::log(sum) / temperature, sb * branch.joint_weight, sa + sb * branch.cond_weight};
    }
};

struct ExactMaxObjective {
    Branch branch;
    Combination operator()(const ChannelTerms& t) const {
        const double b = branch(t);
        if (t.cond >= b) return {t.cond, 0.0, 1.0};
        return {b, branch.joint_weight, branch.cond_weight};
    }
};

struct UlsrCandidate {
    std::vector<double> rows;
    double value = 0.0;
    ChannelTerms terms;
};

inline UlsrCandidate ulsr_restart(const ChannelProblem& shared, std::vector<double> w, UlsrForm form,
                                  const SolverOptions& opts) {
    ChannelProblem prob = shared;
    UlsrCandidate best;
    best.terms = prob.evaluate(w);
    best.value = ulsr_value(best.terms, form);
    best.rows = w;
    auto track = [&](const std::vector<double>& rows, const ChannelTerms& t) {
        const double v = ulsr_value(t, form);
        if (v < best.value) {
            best.value = v;
            best.terms = t;
            best.rows = rows;
        }
    };
    const Branch branch = second_branch(form);
    for (double temperature : opts.temperatures) {
        descend(prob, w, SmoothMaxObjective{branch, temperature}, opts.max_iters, opts.tol_objective, track);
    }
    // Polish from the best exact point seen so far.
    w = best.rows;
    descend(prob, w, ExactMaxObjective{branch}, opts.max_iters, opts.tol_objective, track);
    return best;
}

}  // namespace detail

/// Exact evaluation of either form for a given p(u|x,y); no optimization.
inline UlsrResult ulsr_objective(const JointPmf& q, const AuxChannel& ch, UlsrForm form) {
    if (!ch.is_single()) throw std::invalid_argument("ulsr_objective: expected a channel p(u|x,y)");
    const FullJoint full = compose(q, ch);
    ChannelTerms t;
    t.joint = mutual_information(full, Axes{Axis::X, Axis::Y}, Axis::U);
    t.cond = conditional_mutual_information(full, Axis::X, Axis::Y, Axis::U);
    return {detail::ulsr_value(t, form), ch, t.cond, t.joint};
}

/**
 * Multi-start min-max solver with |U| = card_u (default |X||Y| + 2).
 *
 * Structured starts: U constant, a Wyner minimizer from wyner_ci, and for
 * DSBS-shaped sources the interpolated channels at t = 0.25, 0.5, 0.75.
 * The remaining restarts use flat-Dirichlet rows seeded by (opts.seed, i).
 * Ties between restarts break on smaller I(X;Y|U), then on the rows.
 */
inline UlsrResult ulsr_rate(const JointPmf& q, UlsrForm form, const SolverOptions& opts = {},
                            std::size_t card_u = 0) {
    opts.validate();
    if (card_u == 0) card_u = q.nx() * q.ny() + 2;
    const detail::ChannelProblem prob(q, card_u);

    std::vector<std::vector<double>> starts;
    {
        std::vector<double> constant(prob.support() * card_u, 0.0);
        for (std::size_t s = 0; s < prob.support(); ++s) constant[s * card_u] = 1.0;
        if (card_u > 1) detail::smooth_rows(constant, card_u);
        starts.push_back(std::move(constant));
    }
    if (card_u > 1) {
        SolverOptions wopts = opts;
        wopts.restarts = std::max<std::size_t>(1, opts.restarts / 5);
        const std::size_t wcard = std::min(card_u, q.nx() * q.ny());
        try {
            starts.push_back(detail::embed_rows(prob, wyner_ci(q, wcard, wopts).channel));
        } catch (const SolverInfeasible& e) {
            starts.push_back(detail::embed_rows(prob, e.best().channel));
        }
        const double a = dsbs::crossover_of(q);
        if (a > 0.0 && a < 0.5) {
            for (double t : {0.25, 0.5, 0.75}) {
                starts.push_back(detail::embed_rows(prob, dsbs::interpolated_channel(a, t)));
            }
        }
    }

    const std::size_t total = card_u == 1 ? 1 : std::max(opts.restarts, starts.size());
    std::vector<detail::UlsrCandidate> results(total);
    detail::parallel_for(total, opts.threads, [&](std::size_t i) {
        std::vector<double> w;
        if (i < starts.size()) {
            w = starts[i];
        } else {
            detail::SplitMix64 rng(detail::derive_seed(opts.seed, {0x554c5352ULL, i}));
            w = detail::random_rows(prob, rng);
        }
        results[i] = detail::ulsr_restart(prob, std::move(w), form, opts);
    });

    const detail::UlsrCandidate* best = &results.front();
    for (const auto& c : results) {
        if (detail::better_candidate(c.value, c.terms.cond, c.rows, best->value, best->terms.cond, best->rows)) {
            best = &c;
        }
    }
    return ulsr_objective(q, prob.to_channel(best->rows), form);
}

}  // namespace coordination
