/**
 * Doubly symmetric binary source: the interpolated channel family
 *
 *   p^t(u|x,y) = t p_indep(u|x,y) + (1 - t) p_wyner(u|x,y),   t in [0, 1],
 *
 * between the auxiliary that ignores (x,y) and Wyner's minimizer, with the
 * closed forms for both information terms along the segment, the rate
 * curve f(t) and its kink t*.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "coordination/info.hpp"
#include "coordination/io.hpp"
#include "coordination/pmf.hpp"
#include "coordination/wyner.hpp"

namespace coordination::dsbs {

/// Crossover a with interpolation t; b and alpha are derived.
struct Params {
    double a;
    double t;
    double b;
    double alpha;

    /// Closed forms stay finite on the closed interval a in [0, 1/2].
    static Params make(double a, double t) {
        if (!(a >= 0.0 && a <= 0.5)) throw std::invalid_argument("dsbs: a must lie in [0, 0.5]");
        if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("dsbs: t must lie in [0, 1]");
        const double b = 0.5 * (1.0 - std::sqrt(1.0 - 2.0 * a));
        const double alpha = (1.0 - t) * b * b + 0.5 * t * (1.0 - a);
        return {a, t, b, alpha};
    }
};

struct CurvePoint {
    double t;
    double f;
    double i_joint;  // I(X,Y;U) under p^t
    double i_cond;   // I(X;Y|U) under p^t
};

inline AuxChannel interpolated_channel(double a, double t) {
    if (!(a > 0.0 && a < 0.5)) throw std::invalid_argument("interpolated_channel: a must lie in (0, 0.5)");
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("interpolated_channel: t must lie in [0, 1]");
    const AuxChannel star = dsbs_wyner_channel(a);
    std::vector<std::vector<double>> rows;
    for (const auto& r : star.rows()) rows.push_back({t * 0.5 + (1.0 - t) * r[0], t * 0.5 + (1.0 - t) * r[1]});
    return AuxChannel::single(2, 2, 2, std::move(rows));
}

namespace detail {
inline double four_point_entropy(const Params& p) {
    return entropy_vec4(p.alpha, 0.5 * p.a, 0.5 * p.a, 1.0 - p.a - p.alpha);
}
}  // namespace detail

inline double i_joint_closed_form(double a, double t) {
    const Params p = Params::make(a, t);
    return std::max(0.0, 1.0 + binary_entropy(a) - detail::four_point_entropy(p));
}

inline double i_cond_closed_form(double a, double t) {
    const Params p = Params::make(a, t);
    return std::max(0.0, 2.0 * binary_entropy(p.alpha + 0.5 * a) - detail::four_point_entropy(p));
}

/// f(t) = max{ I(X;Y|U), (I(X,Y;U) + I(X;Y|U)) / 2 } under p^t.
inline CurvePoint f_of_t(double a, double t) {
    const double j = i_joint_closed_form(a, t);
    const double c = i_cond_closed_form(a, t);
    return {t, std::max(c, 0.5 * (j + c)), j, c};
}

/// The t at which I(X,Y;U) = I(X;Y|U) along p^t.
inline double t_star(double a) {
    if (!(a > 0.0 && a < 0.5)) throw std::invalid_argument("t_star: a must lie in (0, 0.5)");
    const double b = 0.5 * (1.0 - std::sqrt(1.0 - 2.0 * a));
    const double denom = 0.5 * (1.0 - a) - b * b;
    if (!(denom > 1e-9)) throw std::invalid_argument("t_star: a too close to 0.5");
    const double target = inverse_binary_entropy(0.5 * (1.0 + binary_entropy(a)));
    return (target - 0.5 * a - b * b) / denom;
}

/// num_points samples of f on a uniform grid over [0, 1], endpoints included.
inline std::vector<CurvePoint> emit_curve(double a, std::size_t num_points) {
    if (num_points < 2) throw std::invalid_argument("emit_curve: need at least 2 points");
    std::vector<CurvePoint> out;
    out.reserve(num_points);
    for (std::size_t i = 0; i < num_points; ++i) {
        const double t = i + 1 == num_points ? 1.0 : static_cast<double>(i) / static_cast<double>(num_points - 1);
        out.push_back(f_of_t(a, t));
    }
    return out;
}

/// CSV with header `t,f,i_joint,i_cond`, LF line endings.
inline void write_curve_csv(std::ostream& out, const std::vector<CurvePoint>& curve) {
    out << "t,f,i_joint,i_cond\n";
    for (const auto& p : curve) {
        out << format_number(p.t) << ',' << format_number(p.f) << ',' << format_number(p.i_joint) << ','
            << format_number(p.i_cond) << '\n';
    }
}

/// (1-a)/2 on the diagonal, a/2 off it, uniform marginals: returns a, or a
/// negative value if q is not of that shape.
inline double crossover_of(const JointPmf& q, double tol = 1e-12) {
    if (q.nx() != 2 || q.ny() != 2) return -1.0;
    if (std::abs(q(0, 0) - q(1, 1)) > tol || std::abs(q(0, 1) - q(1, 0)) > tol) return -1.0;
    return q(0, 1) + q(1, 0);
}

}  // namespace coordination::dsbs
