/**
 * Shannon information measures in bits.
 *
 * Every measure on a FullJoint reduces to entropies of axis marginals:
 *   I(A;B)   = H(A) + H(B) - H(A,B)
 *   I(A;B|C) = H(A,C) + H(B,C) - H(A,B,C) - H(C)
 * with the convention 0 log 0 = 0.
 */
#pragma once

#include <cmath>
#include <span>
#include <stdexcept>

#include "coordination/pmf.hpp"

namespace coordination {

/// -sum p log2 p over a raw table (no simplex check).
inline double entropy_of(std::span<const double> probs) {
    double h = 0.0;
    for (double p : probs)
        if (p > 0.0) h -= p * std::log2(p);
    return h;
}

inline double entropy(const Pmf& p) { return entropy_of(p.probs()); }

/// H(X,Y).
inline double entropy(const JointPmf& q) { return entropy_of(q.probs()); }

inline double binary_entropy(double a) {
    if (!(a >= 0.0 && a <= 1.0)) throw std::invalid_argument("binary_entropy: argument outside [0,1]");
    double h = 0.0;
    if (a > 0.0) h -= a * std::log2(a);
    if (a < 1.0) h -= (1.0 - a) * std::log2(1.0 - a);
    return h;
}

/// The unique x in [0, 1/2] with h(x) = y, by bisection.
inline double inverse_binary_entropy(double y) {
    if (!(y >= 0.0 && y <= 1.0)) {
        throw std::invalid_argument("inverse_binary_entropy: argument outside [0,1]");
    }
    if (y == 0.0) return 0.0;
    if (y == 1.0) return 0.5;
    double lo = 0.0;
    double hi = 0.5;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double hm = binary_entropy(mid);
        if (hm == y) return mid;
        (hm < y ? lo : hi) = mid;
    }
    return std::abs(binary_entropy(lo) - y) <= std::abs(binary_entropy(hi) - y) ? lo : hi;
}

inline double entropy_vec4(double p1, double p2, double p3, double p4) {
    const double v[4] = {p1, p2, p3, p4};
    detail::check_simplex(v, "entropy_vec4");
    return entropy_of(v);
}

/// Entropy of the marginal on `axes` (0 for the empty set).
inline double entropy(const FullJoint& p, Axes axes) {
    if (axes.empty()) return 0.0;
    return entropy_of(marginal(p, axes).probs());
}

inline double mutual_information(const FullJoint& p, Axes a, Axes b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("mutual_information: empty group");
    if (a.overlaps(b)) throw std::invalid_argument("mutual_information: overlapping groups");
    return entropy(p, a) + entropy(p, b) - entropy(p, a | b);
}

inline double conditional_mutual_information(const FullJoint& p, Axes a, Axes b, Axes c) {
    if (a.empty() || b.empty()) {
        throw std::invalid_argument("conditional_mutual_information: empty group");
    }
    if (a.overlaps(b) || a.overlaps(c) || b.overlaps(c)) {
        throw std::invalid_argument("conditional_mutual_information: overlapping groups");
    }
    if (c.empty()) return mutual_information(p, a, b);
    return entropy(p, a | c) + entropy(p, b | c) - entropy(p, a | b | c) - entropy(p, c);
}

/// I(X;Y) of a source.
inline double mutual_information(const JointPmf& q) {
    return entropy(marginal(q, Axis::X)) + entropy(marginal(q, Axis::Y)) - entropy(q);
}

}  // namespace coordination
