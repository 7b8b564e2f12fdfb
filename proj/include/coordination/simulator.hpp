/**
 * Monte Carlo run of the single-auxiliary coordination scheme.
 *
 * Per trial:
 *   - processor i shares w_i = (m0i, b_i) with the coordinator, where m0i
 *     is a k-bit string (k = ceil(n R0 / 2)) and b_i is uniform on
 *     [0, 2^{n Rt_i});
 *   - m0 = m01 || m02 indexes a bin of 2^{n R*} U-codewords u^n(m0, m*);
 *     for each of them there are X-codewords x^n(m0, m*, b1) drawn from
 *     p(x|u) and Y-codewords y^n(m0, m*, b2) drawn from p(y|u);
 *   - the coordinator picks the first m* whose triple passes the joint
 *     type test and broadcasts (m01 xor m02, m*), i.e. R = R0/2 + R*;
 *   - processor 1 recovers m02 = (m01 xor m02) xor m01, rebuilds m0 and
 *     outputs x^n(m0, m*, b1); processor 2 does the same with w2.
 *
 * Codebooks are never materialized: every codeword is generated on demand
 * from a seed keyed by (codebook seed, kind, indices), so a codebook is a
 * deterministic function of its trial seed and costs no memory.
 *
 * The report pools (x_t, y_t) over positions and trials. That per-letter
 * empirical joint is a proxy: its distance to q lower-bounds the n-letter
 * criterion, it does not estimate it.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "coordination/detail/parallel.hpp"
#include "coordination/detail/rng.hpp"
#include "coordination/info.hpp"
#include "coordination/io.hpp"
#include "coordination/pmf.hpp"

namespace coordination::sim {

inline constexpr unsigned kMaxIndexBits = 20;
inline constexpr std::uint64_t kMaxIndexSetSize = std::uint64_t{1} << kMaxIndexBits;

struct SimRates {
    double r0;
    double r_star;
    double rt1;
    double rt2;

    static SimRates make(double r0, double r_star, double rt1, double rt2) {
        for (double v : {r0, r_star, rt1, rt2}) {
            if (!std::isfinite(v) || v < 0.0) throw std::invalid_argument("SimRates: rates must be finite and >= 0");
        }
        return {r0, r_star, rt1, rt2};
    }

    /// Common-message rate.
    double r() const { return 0.5 * r0 + r_star; }
    /// Shared-randomness rates.
    double r1() const { return rt1 + 0.5 * r0; }
    double r2() const { return rt2 + 0.5 * r0; }
};

struct SimConfig {
    JointPmf q;
    AuxChannel channel;  // p(u|x,y)
    std::size_t n = 1;
    SimRates rates{0.0, 0.0, 0.0, 0.0};
    double eps_typ = 0.1;
    std::size_t trials = 1;
    std::uint64_t seed = 0;
    std::size_t threads = 1;

    void validate() const {
        if (n < 1) throw std::invalid_argument("SimConfig: n must be >= 1");
        if (trials < 1) throw std::invalid_argument("SimConfig: trials must be >= 1");
        if (!(eps_typ > 0.0)) throw std::invalid_argument("SimConfig: eps_typ must be > 0");
        if (!channel.is_single()) throw std::invalid_argument("SimConfig: simulator needs a channel p(u|x,y)");
        if (channel.nx() != q.nx() || channel.ny() != q.ny()) {
            throw std::invalid_argument("SimConfig: channel shape does not match the source");
        }
        SimRates::make(rates.r0, rates.r_star, rates.rt1, rates.rt2);
    }
};

/// Marginal and conditionals of p(x,y) p(u|x,y) used to draw codewords.
struct Components {
    Pmf p_u;
    std::vector<std::vector<double>> p_x_given_u;  // [u][x]
    std::vector<std::vector<double>> p_y_given_u;  // [u][y]
    FullJoint per_letter;                          // over (x, y, u)
    double markov_defect;                          // I(X;Y|U)
};

/// Rows for u with p(u) = 0 are set uniform; they are never sampled.
inline Components derive_components(const AuxChannel& channel, const JointPmf& q) {
    if (!channel.is_single()) throw std::invalid_argument("derive_components: expected a channel p(u|x,y)");
    FullJoint full = compose(q, channel);
    const std::size_t k = channel.card_u();
    std::vector<double> pu(k, 0.0);
    std::vector<std::vector<double>> px(k, std::vector<double>(q.nx(), 0.0));
    std::vector<std::vector<double>> py(k, std::vector<double>(q.ny(), 0.0));
    for (std::size_t x = 0; x < q.nx(); ++x) {
        for (std::size_t y = 0; y < q.ny(); ++y) {
            for (std::size_t u = 0; u < k; ++u) {
                const double m = full(x, y, u);
                pu[u] += m;
                px[u][x] += m;
                py[u][y] += m;
            }
        }
    }
    for (std::size_t u = 0; u < k; ++u) {
        if (pu[u] > 0.0) {
            for (double& v : px[u]) v /= pu[u];
            for (double& v : py[u]) v /= pu[u];
        } else {
            px[u].assign(q.nx(), 1.0 / static_cast<double>(q.nx()));
            py[u].assign(q.ny(), 1.0 / static_cast<double>(q.ny()));
        }
    }
    const double defect = std::max(0.0, conditional_mutual_information(full, Axis::X, Axis::Y, Axis::U));
    return {Pmf(std::move(pu)), std::move(px), std::move(py), std::move(full), defect};
}

/// Index-set sizes for block length n.
struct IndexSizes {
    unsigned m0_half_bits;  // bits in each of m01, m02
    std::uint64_t m_star;
    std::uint64_t b1;
    std::uint64_t b2;

    std::uint64_t m0_half() const { return std::uint64_t{1} << m0_half_bits; }
};

namespace detail {

/// ceil(x), treating values within 1e-9 of an integer as that integer.
inline double stable_ceil(double x) {
    const double r = std::round(x);
    return std::abs(x - r) < 1e-9 ? r : std::ceil(x);
}

inline std::uint64_t set_size(std::size_t n, double rate, const char* what) {
    const double exponent = static_cast<double>(n) * rate;
    const double r = std::round(exponent);
    const double size = std::abs(exponent - r) < 1e-9 ? std::exp2(r) : std::ceil(std::exp2(exponent));
    if (size > static_cast<double>(kMaxIndexSetSize)) {
        throw std::invalid_argument(std::string("index set ") + what + " exceeds 2^20 at this block length");
    }
    return static_cast<std::uint64_t>(size);
}

}  // namespace detail

inline IndexSizes index_sizes(std::size_t n, const SimRates& rates) {
    const double bits = detail::stable_ceil(0.5 * static_cast<double>(n) * rates.r0);
    if (bits > kMaxIndexBits) throw std::invalid_argument("index set m0i exceeds 2^20 at this block length");
    return {static_cast<unsigned>(bits), detail::set_size(n, rates.r_star, "m*"),
            detail::set_size(n, rates.rt1, "b1"), detail::set_size(n, rates.rt2, "b2")};
}

using Sequence = std::vector<std::uint32_t>;

/// Lazily generated codebooks of one trial.
class Codebooks {
public:
    Codebooks(std::shared_ptr<const Components> comp, std::size_t n, IndexSizes sizes, std::uint64_t seed)
        : comp_(std::move(comp)), n_(n), sizes_(sizes), seed_(seed) {}

    std::size_t n() const { return n_; }
    const IndexSizes& sizes() const { return sizes_; }
    const Components& components() const { return *comp_; }

    std::uint64_t m0_of(std::uint64_t m01, std::uint64_t m02) const {
        return (m01 << sizes_.m0_half_bits) | m02;
    }

    Sequence u_codeword(std::uint64_t m0, std::uint64_t m_star) const {
        check(m0 < (std::uint64_t{1} << (2 * sizes_.m0_half_bits)) && m_star < sizes_.m_star);
        coordination::detail::SplitMix64 rng(coordination::detail::derive_seed(seed_, {kTagU, m0, m_star}));
        Sequence u(n_);
        for (auto& s : u) s = static_cast<std::uint32_t>(rng.categorical(comp_->p_u.probs()));
        return u;
    }

    Sequence x_codeword(std::uint64_t m0, std::uint64_t m_star, std::uint64_t b1) const {
        check(b1 < sizes_.b1);
        return conditional_codeword(u_codeword(m0, m_star), comp_->p_x_given_u, {kTagX, m0, m_star, b1});
    }

    Sequence y_codeword(std::uint64_t m0, std::uint64_t m_star, std::uint64_t b2) const {
        check(b2 < sizes_.b2);
        return conditional_codeword(u_codeword(m0, m_star), comp_->p_y_given_u, {kTagY, m0, m_star, b2});
    }

    /// Variants that reuse an already generated u^n(m0, m*).
    Sequence x_codeword(const Sequence& u, std::uint64_t m0, std::uint64_t m_star, std::uint64_t b1) const {
        check(b1 < sizes_.b1);
        return conditional_codeword(u, comp_->p_x_given_u, {kTagX, m0, m_star, b1});
    }
    Sequence y_codeword(const Sequence& u, std::uint64_t m0, std::uint64_t m_star, std::uint64_t b2) const {
        check(b2 < sizes_.b2);
        return conditional_codeword(u, comp_->p_y_given_u, {kTagY, m0, m_star, b2});
    }

private:
    static constexpr std::uint64_t kTagU = 0x55;
    static constexpr std::uint64_t kTagX = 0x58;
    static constexpr std::uint64_t kTagY = 0x59;

    static void check(bool ok) {
        if (!ok) throw std::out_of_range("codebook index out of range");
    }

    Sequence conditional_codeword(const Sequence& u, const std::vector<std::vector<double>>& cond,
                                  std::initializer_list<std::uint64_t> keys) const {
        coordination::detail::SplitMix64 rng(coordination::detail::derive_seed(seed_, keys));
        Sequence out(n_);
        for (std::size_t t = 0; t < n_; ++t) out[t] = static_cast<std::uint32_t>(rng.categorical(cond[u[t]]));
        return out;
    }

    std::shared_ptr<const Components> comp_;
    std::size_t n_;
    IndexSizes sizes_;
    std::uint64_t seed_;
};

namespace detail {
inline std::uint64_t codebook_seed(std::uint64_t trial_seed) {
    return coordination::detail::derive_seed(trial_seed, {0xC0DEULL});
}
inline std::uint64_t randomness_seed(std::uint64_t trial_seed) {
    return coordination::detail::derive_seed(trial_seed, {0x5EEDULL});
}
inline std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial) {
    return coordination::detail::derive_seed(seed, {0x7121A1ULL, trial});
}
}  // namespace detail

inline Codebooks build_codebooks(const SimConfig& cfg, std::uint64_t trial_seed,
                                 std::shared_ptr<const Components> comp = nullptr) {
    if (!comp) comp = std::make_shared<const Components>(derive_components(cfg.channel, cfg.q));
    return Codebooks(std::move(comp), cfg.n, index_sizes(cfg.n, cfg.rates), detail::codebook_seed(trial_seed));
}

/// Shared randomness between the coordinator and one processor.
struct SharedRandomness {
    std::uint64_t m0_part;  // m0i, a k-bit string
    std::uint64_t b;        // b_i
};

struct Message {
    std::uint64_t m0_xor;  // m01 xor m02
    std::uint64_t m_star;
};

struct Selection {
    Message message;
    bool failed;  // no candidate passed; m_star fell back to the first index
};

/**
 * Joint type test on (u, x, y) against the per-letter joint (axes x, y, u):
 * every cell frequency within eps of its probability and no cell of
 * probability zero visited.
 */
inline bool typicality_test(const Sequence& u, const Sequence& x, const Sequence& y, const FullJoint& p,
                            double eps) {
    if (u.size() != x.size() || u.size() != y.size()) throw std::invalid_argument("typicality_test: length mismatch");
    const std::size_t n = u.size();
    if (n == 0) return true;
    std::vector<std::uint32_t> counts(p.probs().size(), 0);
    for (std::size_t t = 0; t < n; ++t) {
        const std::size_t cell = p.index(x[t], y[t], u[t]);
        if (p.probs()[cell] == 0.0) return false;
        ++counts[cell];
    }
    const double inv = 1.0 / static_cast<double>(n);
    for (std::size_t c = 0; c < counts.size(); ++c) {
        if (std::abs(counts[c] * inv - p.probs()[c]) > eps) return false;
    }
    return true;
}

inline Selection coordinator_select(const SharedRandomness& w1, const SharedRandomness& w2, const Codebooks& books,
                                    double eps_typ) {
    const std::uint64_t m0 = books.m0_of(w1.m0_part, w2.m0_part);
    const Message fallback{w1.m0_part ^ w2.m0_part, 0};
    for (std::uint64_t m = 0; m < books.sizes().m_star; ++m) {
        const Sequence u = books.u_codeword(m0, m);
        const Sequence x = books.x_codeword(u, m0, m, w1.b);
        const Sequence y = books.y_codeword(u, m0, m, w2.b);
        if (typicality_test(u, x, y, books.components().per_letter, eps_typ)) return {{fallback.m0_xor, m}, false};
    }
    return {fallback, true};
}

/// Output of processor `which` (1 or 2); it sees only the message, its own
/// shared randomness and the codebooks.
inline Sequence processor_output(int which, const Message& msg, const SharedRandomness& w, const Codebooks& books) {
    const std::uint64_t half = books.sizes().m0_half();
    if (w.m0_part >= half || msg.m0_xor >= half) throw std::out_of_range("processor_output: m0 part out of range");
    const std::uint64_t other = msg.m0_xor ^ w.m0_part;
    if (which == 1) return books.x_codeword(books.m0_of(w.m0_part, other), msg.m_star, w.b);
    if (which == 2) return books.y_codeword(books.m0_of(other, w.m0_part), msg.m_star, w.b);
    throw std::invalid_argument("processor_output: which must be 1 or 2");
}

/// Draws (w1, w2) for a trial.
inline std::pair<SharedRandomness, SharedRandomness> draw_shared_randomness(const IndexSizes& sizes,
                                                                            std::uint64_t trial_seed) {
    coordination::detail::SplitMix64 rng(detail::randomness_seed(trial_seed));
    SharedRandomness w1{rng.below(sizes.m0_half()), rng.below(sizes.b1)};
    SharedRandomness w2{rng.below(sizes.m0_half()), rng.below(sizes.b2)};
    return {w1, w2};
}

struct SimReport {
    JointPmf empirical_joint;     // pooled (x_t, y_t)
    double tv_per_letter;         // tv_distance(empirical_joint, q)
    double mstar_failure_rate;
    std::size_t trials_run;
    FullJoint empirical_per_letter;  // pooled (x_t, y_t, u_t) with u_t = u^n(m0, m*)_t
    IndexSizes sizes;
};

/// Trials run in parallel; counts are merged by addition so the report does
/// not depend on scheduling.
inline SimReport run_trials(const SimConfig& cfg) {
    cfg.validate();
    const IndexSizes sizes = index_sizes(cfg.n, cfg.rates);
    auto comp = std::make_shared<const Components>(derive_components(cfg.channel, cfg.q));
    const std::size_t cells = comp->per_letter.probs().size();

    struct Outcome {
        std::vector<std::uint32_t> counts;
        bool failed = false;
    };
    std::vector<Outcome> outcomes(cfg.trials);
    coordination::detail::parallel_for(cfg.trials, cfg.threads, [&](std::size_t trial) {
        const std::uint64_t ts = detail::trial_seed(cfg.seed, trial);
        const Codebooks books = build_codebooks(cfg, ts, comp);
        const auto [w1, w2] = draw_shared_randomness(sizes, ts);
        const Selection sel = coordinator_select(w1, w2, books, cfg.eps_typ);
        const Sequence x = processor_output(1, sel.message, w1, books);
        const Sequence y = processor_output(2, sel.message, w2, books);
        const Sequence u = books.u_codeword(books.m0_of(w1.m0_part, w2.m0_part), sel.message.m_star);
        Outcome& out = outcomes[trial];
        out.counts.assign(cells, 0);
        for (std::size_t t = 0; t < cfg.n; ++t) ++out.counts[comp->per_letter.index(x[t], y[t], u[t])];
        out.failed = sel.failed;
    });

    std::vector<std::uint64_t> total(cells, 0);
    std::size_t failures = 0;
    for (const auto& o : outcomes) {
        for (std::size_t c = 0; c < cells; ++c) total[c] += o.counts[c];
        failures += o.failed ? 1 : 0;
    }
    const double samples = static_cast<double>(cfg.n) * static_cast<double>(cfg.trials);
    std::vector<double> uxy(cells);
    for (std::size_t c = 0; c < cells; ++c) uxy[c] = static_cast<double>(total[c]) / samples;
    FullJoint pooled(comp->per_letter.dims(), std::move(uxy));
    JointPmf xy = joint_xy(pooled);
    const double tv = tv_distance(xy, cfg.q);
    return {std::move(xy), tv, static_cast<double>(failures) / static_cast<double>(cfg.trials), cfg.trials,
            std::move(pooled), sizes};
}

inline nlohmann::json to_json(const SimReport& report, const SimConfig& cfg) {
    nlohmann::json j;
    j["empirical_joint"] = coordination::to_json(report.empirical_joint)["pmf"];
    j["tv_per_letter"] = report.tv_per_letter;
    j["mstar_failure_rate"] = report.mstar_failure_rate;
    j["trials_run"] = report.trials_run;
    nlohmann::json echo;
    echo["dist"] = coordination::to_json(cfg.q);
    echo["aux"] = coordination::to_json(cfg.channel);
    echo["n"] = cfg.n;
    echo["rates"] = {{"r0", cfg.rates.r0},   {"r_star", cfg.rates.r_star}, {"rt1", cfg.rates.rt1},
                     {"rt2", cfg.rates.rt2}, {"r", cfg.rates.r()},         {"r1", cfg.rates.r1()},
                     {"r2", cfg.rates.r2()}};
    echo["index_sets"] = {{"m0_half_bits", report.sizes.m0_half_bits},
                          {"m_star", report.sizes.m_star},
                          {"b1", report.sizes.b1},
                          {"b2", report.sizes.b2}};
    echo["eps_typ"] = cfg.eps_typ;
    echo["trials"] = cfg.trials;
    echo["seed"] = cfg.seed;
    j["config_echo"] = std::move(echo);
    return j;
}

}  // namespace coordination::sim
