/**
 * Rate-region membership.
 *
 * For an auxiliary p(u,u1,u2|x,y) with X - (U,U1) - (U,U2) - Y, the inner
 * bound consists of the nonnegative triples (R, R1, R2) with
 *
 *   R + R1        >= I(X,Y;U,U1)
 *   R + R2        >= I(X,Y;U,U2)
 *   R             >= I(U1;U2|U)
 *   R + R1 + R2   >= I(U1;U2|U) + I(X,Y;U,U1,U2)
 *   2R + R1 + R2  >= I(U1;U2|U) + I(X,Y;U) + I(X,Y;U,U1,U2)
 *   2R            >= I(U1;U2|U) + I(X,Y;U)
 *
 * Membership here is always "achievable (inner bound)". When X = Y the
 * region is exact and needs only H(X).
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "coordination/info.hpp"
#include "coordination/pmf.hpp"

namespace coordination {

/// Common-message rate and the two shared-randomness rates, bits/symbol.
struct RateTriple {
    double r;
    double r1;
    double r2;

    static RateTriple make(double r, double r1, double r2) {
        for (double v : {r, r1, r2}) {
            if (!std::isfinite(v) || v < 0.0) throw std::invalid_argument("RateTriple: rates must be finite and >= 0");
        }
        return {r, r1, r2};
    }
};

/// Right-hand sides of the six inequalities, named by their left sides.
struct RegionBounds {
    double b_r_r1;
    double b_r_r2;
    double b_r;
    double b_r_r1_r2;
    double b_2r_r1_r2;
    double b_2r;
    double markov_defect;
};

struct MarkovCheck {
    bool holds;
    double defect;
};

inline constexpr double kRegionMarkovTolerance = 1e-6;
inline constexpr double kMembershipSlack = 1e-12;

/// X - (U,U1) - (U,U2) - Y, measured as the mean of I(X;Y,U2|U,U1) and
/// I(Y;X,U1|U,U2). Zero iff both links hold; equals I(X;Y) when U, U1, U2
/// are all constant.
inline MarkovCheck check_markov_quadruple(const FullJoint& full, double tol) {
    const double left = conditional_mutual_information(full, Axis::X, Axes{Axis::Y, Axis::U2}, Axes{Axis::U, Axis::U1});
    const double right = conditional_mutual_information(full, Axis::Y, Axes{Axis::X, Axis::U1}, Axes{Axis::U, Axis::U2});
    const double defect = std::max(0.0, 0.5 * (left + right));
    return {defect <= tol, defect};
}

inline RegionBounds achievable_bounds(const JointPmf& q, const AuxChannel& aux) {
    const FullJoint full = compose(q, aux);
    const MarkovCheck mc = check_markov_quadruple(full, kRegionMarkovTolerance);
    if (!mc.holds) {
        throw std::domain_error("achievable_bounds: auxiliary violates X-(U,U1)-(U,U2)-Y (defect " +
                                std::to_string(mc.defect) + ")");
    }
    const Axes xy{Axis::X, Axis::Y};
    const double i12 = conditional_mutual_information(full, Axis::U1, Axis::U2, Axis::U);
    const double i_u = mutual_information(full, xy, Axis::U);
    const double i_u_u1 = mutual_information(full, xy, Axes{Axis::U, Axis::U1});
    const double i_u_u2 = mutual_information(full, xy, Axes{Axis::U, Axis::U2});
    const double i_all = mutual_information(full, xy, Axes{Axis::U, Axis::U1, Axis::U2});
    return {i_u_u1, i_u_u2, i12, i12 + i_all, i12 + i_u + i_all, i12 + i_u, mc.defect};
}

inline bool in_region(const RegionBounds& b, const RateTriple& t) {
    const double s = kMembershipSlack;
    return t.r + t.r1 + s >= b.b_r_r1 && t.r + t.r2 + s >= b.b_r_r2 && t.r + s >= b.b_r &&
           t.r + t.r1 + t.r2 + s >= b.b_r_r1_r2 && 2.0 * t.r + t.r1 + t.r2 + s >= b.b_2r_r1_r2 &&
           2.0 * t.r + s >= b.b_2r;
}

inline bool in_achievable_region(const JointPmf& q, const AuxChannel& aux, const RateTriple& rates) {
    return in_region(achievable_bounds(q, aux), rates);
}

/// Exact region when X = Y almost surely.
inline bool xy_equal_region(double hx, const RateTriple& rates) {
    if (!(hx >= 0.0)) throw std::invalid_argument("xy_equal_region: H(X) must be >= 0");
    const double s = kMembershipSlack;
    return rates.r + std::min(rates.r1, rates.r2) + s >= hx && rates.r + s >= 0.5 * hx;
}

/// (U, U1, U2) = (U, X, Y) for a given p(u|x,y).
inline AuxChannel with_copies(const AuxChannel& u_channel) {
    if (!u_channel.is_single()) throw std::invalid_argument("with_copies: expected a channel p(u|x,y)");
    const std::size_t nx = u_channel.nx();
    const std::size_t ny = u_channel.ny();
    const std::size_t k = u_channel.card_u();
    std::vector<std::vector<double>> rows(nx * ny);
    for (std::size_t x = 0; x < nx; ++x) {
        for (std::size_t y = 0; y < ny; ++y) {
            if (!u_channel.has_row(x, y)) continue;
            auto& r = rows[x * ny + y];
            r.assign(k * nx * ny, 0.0);
            const auto src = u_channel.row(x, y);
            for (std::size_t u = 0; u < k; ++u) r[(u * nx + x) * ny + y] = src[u];
        }
    }
    return AuxChannel(nx, ny, k, nx, ny, std::move(rows));
}

}  // namespace coordination
