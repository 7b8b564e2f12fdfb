/**
 * Descent machinery over single-auxiliary channels p(u|x,y).
 *
 * Both the Wyner and the unlimited-shared-randomness solvers minimize a
 * function of the two quantities
 *   joint = I(X,Y;U)   and   cond = I(X;Y|U)
 * over the product of conditional simplices (one per support pair of q).
 * The kernel here evaluates both quantities with their exact gradients and
 * runs exponentiated-gradient descent with a backtracking step size. The
 * objective only has to say how to combine the two terms and their
 * gradients.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "coordination/info.hpp"
#include "coordination/pmf.hpp"

namespace coordination {

struct SolverOptions {
    std::size_t restarts = 50;
    std::size_t max_iters = 5000;
    double tol_objective = 1e-9;
    /// Markov-penalty weights for the Wyner solver, applied in order.
    std::vector<double> penalty_schedule{1.0, 10.0, 100.0, 1000.0};
    /// Smooth-max inverse temperatures (1/bits) for the min-max solver.
    std::vector<double> temperatures{10.0, 100.0, 1000.0};
    std::uint64_t seed = 0;
    /// Worker threads for independent restarts; 0 = hardware concurrency.
    std::size_t threads = 1;

    void validate() const {
        if (restarts < 1) throw std::invalid_argument("SolverOptions: restarts must be >= 1");
        if (max_iters < 1) throw std::invalid_argument("SolverOptions: max_iters must be >= 1");
        if (!(tol_objective > 0.0)) throw std::invalid_argument("SolverOptions: tol_objective must be > 0");
        auto increasing = [](const std::vector<double>& v) {
            if (v.empty()) return false;
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (!(v[i] > 0.0) || !std::isfinite(v[i])) return false;
                if (i > 0 && !(v[i] > v[i - 1])) return false;
            }
            return true;
        };
        if (!increasing(penalty_schedule)) {
            throw std::invalid_argument("SolverOptions: penalty_schedule must be positive and strictly increasing");
        }
        if (!increasing(temperatures)) {
            throw std::invalid_argument("SolverOptions: temperatures must be positive and strictly increasing");
        }
    }
};

/// The two information terms of a single-auxiliary channel.
struct ChannelTerms {
    double joint = 0.0;  // I(X,Y;U)
    double cond = 0.0;   // I(X;Y|U)
};

namespace detail {

/// Source restricted to its support, with the channel stored densely as
/// one row of length card_u per support pair.
class ChannelProblem {
public:
    ChannelProblem(const JointPmf& q, std::size_t card_u) : nx_(q.nx()), ny_(q.ny()), card_u_(card_u) {
        if (card_u == 0) throw std::invalid_argument("card_u must be >= 1");
        for (std::size_t x = 0; x < nx_; ++x) {
            for (std::size_t y = 0; y < ny_; ++y) {
                if (q(x, y) > 0.0) {
                    xs_.push_back(x);
                    ys_.push_back(y);
                    qs_.push_back(q(x, y));
                }
            }
        }
        h_xy_ = entropy(q);
    }

    std::size_t support() const { return qs_.size(); }
    std::size_t card_u() const { return card_u_; }
    std::size_t nx() const { return nx_; }
    std::size_t ny() const { return ny_; }
    std::size_t x_of(std::size_t s) const { return xs_[s]; }
    std::size_t y_of(std::size_t s) const { return ys_[s]; }
    double q_of(std::size_t s) const { return qs_[s]; }

    /// Terms and, if requested, gradients (each scaled by 1/q(x,y)).
    ChannelTerms evaluate(const std::vector<double>& w, std::vector<double>* grad_joint = nullptr,
                          std::vector<double>* grad_cond = nullptr) const {
        const std::size_t k = card_u_;
        pu_.assign(k, 0.0);
        pxu_.assign(nx_ * k, 0.0);
        pyu_.assign(ny_ * k, 0.0);
        double h_xyu = 0.0;
        for (std::size_t s = 0; s < qs_.size(); ++s) {
            for (std::size_t u = 0; u < k; ++u) {
                const double m = qs_[s] * w[s * k + u];
                pu_[u] += m;
                pxu_[xs_[s] * k + u] += m;
                pyu_[ys_[s] * k + u] += m;
                if (m > 0.0) h_xyu -= m * std::log2(m);
            }
        }
        const double h_u = entropy_of(pu_);
        const double h_xu = entropy_of(pxu_);
        const double h_yu = entropy_of(pyu_);

        if (grad_joint != nullptr || grad_cond != nullptr) {
            if (grad_joint) grad_joint->assign(w.size(), 0.0);
            if (grad_cond) grad_cond->assign(w.size(), 0.0);
            for (std::size_t s = 0; s < qs_.size(); ++s) {
                for (std::size_t u = 0; u < k; ++u) {
                    const double wv = w[s * k + u];
                    if (wv <= 0.0) continue;
                    const double lw = std::log2(wv);
                    const double lpu = std::log2(pu_[u]);
                    if (grad_joint) (*grad_joint)[s * k + u] = lw - lpu;
                    if (grad_cond) {
                        (*grad_cond)[s * k + u] = std::log2(qs_[s]) + lw + lpu -
                                                  std::log2(pxu_[xs_[s] * k + u]) -
                                                  std::log2(pyu_[ys_[s] * k + u]);
                    }
                }
            }
        }
        ChannelTerms t;
        t.joint = h_xy_ + h_u - h_xyu;
        t.cond = h_xu + h_yu - h_xyu - h_u;
        return t;
    }

    /// Dense rows -> AuxChannel; pairs off the support get no row.
    AuxChannel to_channel(const std::vector<double>& w) const {
        std::vector<std::vector<double>> rows(nx_ * ny_);
        for (std::size_t s = 0; s < qs_.size(); ++s) {
            auto& r = rows[xs_[s] * ny_ + ys_[s]];
            r.assign(w.begin() + static_cast<std::ptrdiff_t>(s * card_u_),
                     w.begin() + static_cast<std::ptrdiff_t>((s + 1) * card_u_));
            double sum = 0.0;
            for (double v : r) sum += v;
            for (double& v : r) v /= sum;
        }
        return AuxChannel::single(nx_, ny_, card_u_, std::move(rows));
    }

    /// AuxChannel -> dense rows; the channel must cover the support.
    std::vector<double> from_channel(const AuxChannel& ch) const {
        if (!ch.is_single() || ch.nx() != nx_ || ch.ny() != ny_) {
            throw std::invalid_argument("channel shape does not match the problem");
        }
        if (ch.card_u() > card_u_) throw std::invalid_argument("channel has too many auxiliary symbols");
        std::vector<double> w(qs_.size() * card_u_, 0.0);
        for (std::size_t s = 0; s < qs_.size(); ++s) {
            if (!ch.has_row(xs_[s], ys_[s])) throw std::invalid_argument("channel misses a support row");
            const auto r = ch.row(xs_[s], ys_[s]);
            std::copy(r.begin(), r.end(), w.begin() + static_cast<std::ptrdiff_t>(s * card_u_));
        }
        return w;
    }

private:
    std::size_t nx_;
    std::size_t ny_;
    std::size_t card_u_;
    std::vector<std::size_t> xs_;
    std::vector<std::size_t> ys_;
    std::vector<double> qs_;
    double h_xy_ = 0.0;
    mutable std::vector<double> pu_;
    mutable std::vector<double> pxu_;
    mutable std::vector<double> pyu_;
};

inline constexpr double kRowFloor = 1e-300;

/// Mixes a start point with a sliver of the uniform row so no coordinate is
/// exactly zero (multiplicative updates cannot leave zero).
inline void smooth_rows(std::vector<double>& w, std::size_t k, double mix = 1e-10) {
    for (std::size_t s = 0; s * k < w.size(); ++s) {
        double sum = 0.0;
        for (std::size_t u = 0; u < k; ++u) {
            double& v = w[s * k + u];
            v = (1.0 - mix) * v + mix / static_cast<double>(k);
            sum += v;
        }
        for (std::size_t u = 0; u < k; ++u) w[s * k + u] /= sum;
    }
}

/// w_new(u) proportional to w(u) exp(-eta g(u)), row by row.
inline void eg_step(const std::vector<double>& w, const std::vector<double>& g, double eta,
                    std::size_t k, std::vector<double>& out) {
    out.resize(w.size());
    for (std::size_t s = 0; s * k < w.size(); ++s) {
        double top = -std::numeric_limits<double>::infinity();
        for (std::size_t u = 0; u < k; ++u) top = std::max(top, -eta * g[s * k + u]);
        double sum = 0.0;
        for (std::size_t u = 0; u < k; ++u) {
            const double v = w[s * k + u] * std::exp(-eta * g[s * k + u] - top);
            out[s * k + u] = v;
            sum += v;
        }
        for (std::size_t u = 0; u < k; ++u) out[s * k + u] = std::max(out[s * k + u] / sum, kRowFloor);
    }
}

/// How an objective combines the two terms: value and gradient weights.
struct Combination {
    double value;
    double weight_joint;
    double weight_cond;
};

/// I(X,Y;U) + lambda I(X;Y|U).
struct PenaltyObjective {
    double lambda;
    Combination operator()(const ChannelTerms& t) const {
        return {t.joint + lambda * t.cond, 1.0, lambda};
    }
};

struct DescentStats {
    std::size_t iterations = 0;
    bool converged = false;
};

/**
 * Exponentiated-gradient descent with backtracking.
 *
 * An iterate is accepted only if it strictly lowers the objective; the step
 * halves on rejection and grows by 1.5x on acceptance. Stops when an
 * accepted step improves by less than tol, when the step collapses below
 * 1e-14, or after max_iters. `on_accept` sees every accepted iterate.
 */
template <typename Objective, typename OnAccept>
DescentStats descend(const ChannelProblem& prob, std::vector<double>& w, const Objective& objective,
                     std::size_t max_iters, double tol, OnAccept&& on_accept) {
    const std::size_t k = prob.card_u();
    DescentStats stats;
    if (k == 1) {
        stats.converged = true;
        return stats;
    }
    std::vector<double> g_joint;
    std::vector<double> g_cond;
    std::vector<double> g(w.size());
    std::vector<double> trial;
    ChannelTerms terms = prob.evaluate(w, &g_joint, &g_cond);
    Combination cur = objective(terms);
    double eta = 1.0;
    for (; stats.iterations < max_iters; ++stats.iterations) {
        const double scale = std::abs(cur.weight_joint) + std::abs(cur.weight_cond);
        for (std::size_t i = 0; i < w.size(); ++i) {
            g[i] = (cur.weight_joint * g_joint[i] + cur.weight_cond * g_cond[i]) / scale;
        }
        bool accepted = false;
        ChannelTerms next_terms;
        Combination next{};
        while (eta >= 1e-14) {
            eg_step(w, g, eta, k, trial);
            next_terms = prob.evaluate(trial);
            next = objective(next_terms);
            if (next.value < cur.value) {
                accepted = true;
                break;
            }
            eta *= 0.5;
        }
        if (!accepted) {
            stats.converged = true;
            break;
        }
        const double gain = cur.value - next.value;
        w.swap(trial);
        terms = prob.evaluate(w, &g_joint, &g_cond);
        cur = objective(terms);
        on_accept(w, terms);
        eta = std::min(eta * 1.5, 1e3);
        if (gain < tol) {
            stats.converged = true;
            ++stats.iterations;
            break;
        }
    }
    return stats;
}

template <typename Objective>
DescentStats descend(const ChannelProblem& prob, std::vector<double>& w, const Objective& objective,
                     std::size_t max_iters, double tol) {
    return descend(prob, w, objective, max_iters, tol, [](const std::vector<double>&, const ChannelTerms&) {});
}

/// Uniform-random (flat Dirichlet) rows.
template <typename Rng>
std::vector<double> random_rows(const ChannelProblem& prob, Rng& rng) {
    std::vector<double> w;
    w.reserve(prob.support() * prob.card_u());
    for (std::size_t s = 0; s < prob.support(); ++s) {
        auto r = rng.dirichlet_row(prob.card_u());
        w.insert(w.end(), r.begin(), r.end());
    }
    smooth_rows(w, prob.card_u());
    return w;
}

/// U copies X (or Y when copy_y), padded with zeros if card_u is larger.
inline std::vector<double> copy_rows(const ChannelProblem& prob, bool copy_y) {
    const std::size_t k = prob.card_u();
    std::vector<double> w(prob.support() * k, 0.0);
    for (std::size_t s = 0; s < prob.support(); ++s) {
        const std::size_t sym = copy_y ? prob.y_of(s) : prob.x_of(s);
        w[s * k + sym] = 1.0;
    }
    smooth_rows(w, k);
    return w;
}

/// Embeds a channel with card <= card_u, zero-padding the extra symbols.
inline std::vector<double> embed_rows(const ChannelProblem& prob, const AuxChannel& ch) {
    const std::size_t k = prob.card_u();
    std::vector<double> w(prob.support() * k, 0.0);
    for (std::size_t s = 0; s < prob.support(); ++s) {
        if (!ch.has_row(prob.x_of(s), prob.y_of(s))) throw std::invalid_argument("start channel misses a support row");
        const auto r = ch.row(prob.x_of(s), prob.y_of(s));
        for (std::size_t u = 0; u < r.size(); ++u) w[s * k + u] = r[u];
    }
    smooth_rows(w, k);
    return w;
}

/// Total order used to pick a winner among restarts: value, then cond, then rows.
inline bool better_candidate(double value_a, double cond_a, const std::vector<double>& rows_a,
                             double value_b, double cond_b, const std::vector<double>& rows_b) {
    if (value_a != value_b) return value_a < value_b;
    if (cond_a != cond_b) return cond_a < cond_b;
    return rows_a < rows_b;
}

}  // namespace detail
}  // namespace coordination
