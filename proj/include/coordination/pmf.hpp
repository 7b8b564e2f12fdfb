/**
 * Finite-alphabet probability objects.
 *
 * Pmf, JointPmf, AuxChannel and FullJoint are immutable value types that
 * validate on construction. Nothing is ever renormalized silently: a table
 * whose entries are negative or whose sum is off by more than
 * kSimplexTolerance is rejected with std::invalid_argument.
 */
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace coordination {

inline constexpr double kSimplexTolerance = 1e-9;
inline constexpr double kCompositionTolerance = 1e-12;

namespace detail {

inline void check_simplex(std::span<const double> probs, const char* what) {
    if (probs.empty()) {
        throw std::invalid_argument(std::string(what) + ": empty probability table");
    }
    double sum = 0.0;
    for (double p : probs) {
        if (!std::isfinite(p)) {
            throw std::invalid_argument(std::string(what) + ": non-finite entry");
        }
        if (p < 0.0) {
            throw std::invalid_argument(std::string(what) + ": negative entry");
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > kSimplexTolerance) {
        throw std::invalid_argument(std::string(what) + ": entries sum to " +
                                    std::to_string(sum) + ", expected 1");
    }
}

}  // namespace detail

/// Distribution over a single finite alphabet.
class Pmf {
public:
    explicit Pmf(std::vector<double> probs) : probs_(std::move(probs)) {
        detail::check_simplex(probs_, "Pmf");
    }
    Pmf(std::initializer_list<double> probs) : Pmf(std::vector<double>(probs)) {}

    static Pmf uniform(std::size_t n) {
        if (n == 0) throw std::invalid_argument("Pmf::uniform: empty alphabet");
        return Pmf(std::vector<double>(n, 1.0 / static_cast<double>(n)));
    }
    static Pmf point_mass(std::size_t n, std::size_t at) {
        if (at >= n) throw std::invalid_argument("Pmf::point_mass: index out of range");
        std::vector<double> p(n, 0.0);
        p[at] = 1.0;
        return Pmf(std::move(p));
    }

    std::size_t size() const { return probs_.size(); }
    double operator[](std::size_t i) const { return probs_[i]; }
    std::span<const double> probs() const { return probs_; }

    friend bool operator==(const Pmf&, const Pmf&) = default;

private:
    std::vector<double> probs_;
};

/// Joint distribution q(x,y), stored row-major with row index x.
class JointPmf {
public:
    JointPmf(std::size_t nx, std::size_t ny, std::vector<double> probs,
             std::vector<std::string> labels_x = {}, std::vector<std::string> labels_y = {})
        : nx_(nx), ny_(ny), probs_(std::move(probs)),
          labels_x_(std::move(labels_x)), labels_y_(std::move(labels_y)) {
        if (nx_ == 0 || ny_ == 0 || probs_.size() != nx_ * ny_) {
            throw std::invalid_argument("JointPmf: shape does not match entry count");
        }
        if (!labels_x_.empty() && labels_x_.size() != nx_) {
            throw std::invalid_argument("JointPmf: alphabet_x size does not match rows");
        }
        if (!labels_y_.empty() && labels_y_.size() != ny_) {
            throw std::invalid_argument("JointPmf: alphabet_y size does not match columns");
        }
        detail::check_simplex(probs_, "JointPmf");
    }

    /// Builds from nested rows; every row must have the same length.
    static JointPmf from_rows(const std::vector<std::vector<double>>& rows) {
        if (rows.empty() || rows.front().empty()) {
            throw std::invalid_argument("JointPmf: empty matrix");
        }
        const std::size_t ny = rows.front().size();
        std::vector<double> flat;
        flat.reserve(rows.size() * ny);
        for (const auto& r : rows) {
            if (r.size() != ny) throw std::invalid_argument("JointPmf: ragged matrix");
            flat.insert(flat.end(), r.begin(), r.end());
        }
        return JointPmf(rows.size(), ny, std::move(flat));
    }

    static JointPmf product(const Pmf& px, const Pmf& py) {
        std::vector<double> p(px.size() * py.size());
        for (std::size_t x = 0; x < px.size(); ++x)
            for (std::size_t y = 0; y < py.size(); ++y) p[x * py.size() + y] = px[x] * py[y];
        return JointPmf(px.size(), py.size(), std::move(p));
    }

    std::size_t nx() const { return nx_; }
    std::size_t ny() const { return ny_; }
    double operator()(std::size_t x, std::size_t y) const { return probs_[x * ny_ + y]; }
    std::span<const double> probs() const { return probs_; }
    const std::vector<std::string>& labels_x() const { return labels_x_; }
    const std::vector<std::string>& labels_y() const { return labels_y_; }

    friend bool operator==(const JointPmf&, const JointPmf&) = default;

private:
    std::size_t nx_;
    std::size_t ny_;
    std::vector<double> probs_;
    std::vector<std::string> labels_x_;
    std::vector<std::string> labels_y_;
};

/**
 * Conditional p.m.f. p(u,u1,u2|x,y).
 *
 * One row per (x,y) pair, each a flattened distribution over (u,u1,u2) in
 * row-major order. Rows for pairs outside the support of the source may be
 * left empty; they are never read by compose().
 */
class AuxChannel {
public:
    AuxChannel(std::size_t nx, std::size_t ny, std::size_t card_u, std::size_t card_u1,
               std::size_t card_u2, std::vector<std::vector<double>> rows)
        : nx_(nx), ny_(ny), card_u_(card_u), card_u1_(card_u1), card_u2_(card_u2),
          rows_(std::move(rows)) {
        if (nx_ == 0 || ny_ == 0) throw std::invalid_argument("AuxChannel: empty source alphabet");
        if (card_u_ == 0 || card_u1_ == 0 || card_u2_ == 0) {
            throw std::invalid_argument("AuxChannel: cardinalities must be positive");
        }
        if (rows_.size() != nx_ * ny_) {
            throw std::invalid_argument("AuxChannel: expected one row slot per (x,y) pair");
        }
        for (const auto& r : rows_) {
            if (r.empty()) continue;
            if (r.size() != row_size()) {
                throw std::invalid_argument("AuxChannel: row length does not match cardinalities");
            }
            detail::check_simplex(r, "AuxChannel row");
        }
    }

    /// p(u|x,y) with U1 = U2 = constant.
    static AuxChannel single(std::size_t nx, std::size_t ny, std::size_t card_u,
                             std::vector<std::vector<double>> rows) {
        return AuxChannel(nx, ny, card_u, 1, 1, std::move(rows));
    }

    /// U constant: the "no auxiliary" channel.
    static AuxChannel degenerate(std::size_t nx, std::size_t ny) {
        return single(nx, ny, 1, std::vector<std::vector<double>>(nx * ny, {1.0}));
    }

    std::size_t nx() const { return nx_; }
    std::size_t ny() const { return ny_; }
    std::size_t card_u() const { return card_u_; }
    std::size_t card_u1() const { return card_u1_; }
    std::size_t card_u2() const { return card_u2_; }
    std::size_t row_size() const { return card_u_ * card_u1_ * card_u2_; }
    bool is_single() const { return card_u1_ == 1 && card_u2_ == 1; }

    bool has_row(std::size_t x, std::size_t y) const { return !rows_[x * ny_ + y].empty(); }
    std::span<const double> row(std::size_t x, std::size_t y) const { return rows_[x * ny_ + y]; }
    const std::vector<std::vector<double>>& rows() const { return rows_; }

    friend bool operator==(const AuxChannel&, const AuxChannel&) = default;

private:
    std::size_t nx_;
    std::size_t ny_;
    std::size_t card_u_;
    std::size_t card_u1_;
    std::size_t card_u2_;
    std::vector<std::vector<double>> rows_;
};

enum class Axis : std::uint8_t { X = 0, Y = 1, U = 2, U1 = 3, U2 = 4 };

inline constexpr std::size_t kNumAxes = 5;

/// A set of FullJoint axes.
class Axes {
public:
    constexpr Axes() = default;
    constexpr Axes(Axis a) : bits_(static_cast<std::uint8_t>(1u << static_cast<unsigned>(a))) {}
    constexpr Axes(std::initializer_list<Axis> list) {
        for (Axis a : list) bits_ |= static_cast<std::uint8_t>(1u << static_cast<unsigned>(a));
    }

    constexpr bool empty() const { return bits_ == 0; }
    constexpr bool contains(Axis a) const { return (bits_ >> static_cast<unsigned>(a)) & 1u; }
    constexpr bool contains(std::size_t axis) const { return (bits_ >> axis) & 1u; }
    constexpr bool overlaps(Axes other) const { return (bits_ & other.bits_) != 0; }
    constexpr std::uint8_t bits() const { return bits_; }

    friend constexpr Axes operator|(Axes a, Axes b) {
        Axes r;
        r.bits_ = a.bits_ | b.bits_;
        return r;
    }
    friend constexpr bool operator==(Axes, Axes) = default;

private:
    std::uint8_t bits_ = 0;
};

/// Dense distribution over (x, y, u, u1, u2); unused axes have size 1.
class FullJoint {
public:
    using Shape = std::array<std::size_t, kNumAxes>;

    FullJoint(Shape dims, std::vector<double> probs) : dims_(dims), probs_(std::move(probs)) {
        std::size_t total = 1;
        for (std::size_t d : dims_) {
            if (d == 0) throw std::invalid_argument("FullJoint: zero-sized axis");
            total *= d;
        }
        if (probs_.size() != total) {
            throw std::invalid_argument("FullJoint: shape does not match entry count");
        }
        detail::check_simplex(probs_, "FullJoint");
        strides_[kNumAxes - 1] = 1;
        for (std::size_t i = kNumAxes - 1; i > 0; --i) strides_[i - 1] = strides_[i] * dims_[i];
    }

    const Shape& dims() const { return dims_; }
    std::size_t dim(Axis a) const { return dims_[static_cast<std::size_t>(a)]; }
    const Shape& strides() const { return strides_; }
    std::span<const double> probs() const { return probs_; }

    std::size_t index(std::size_t x, std::size_t y, std::size_t u = 0, std::size_t u1 = 0,
                      std::size_t u2 = 0) const {
        return x * strides_[0] + y * strides_[1] + u * strides_[2] + u1 * strides_[3] + u2;
    }
    double operator()(std::size_t x, std::size_t y, std::size_t u = 0, std::size_t u1 = 0,
                      std::size_t u2 = 0) const {
        return probs_[index(x, y, u, u1, u2)];
    }

private:
    Shape dims_;
    Shape strides_{};
    std::vector<double> probs_;
};

/// Joint of a doubly symmetric binary source with crossover a.
inline JointPmf dsbs_joint(double a) {
    if (!(a >= 0.0 && a <= 0.5)) {
        throw std::invalid_argument("dsbs_joint: crossover must lie in [0, 0.5]");
    }
    const double same = 0.5 * (1.0 - a);
    const double diff = 0.5 * a;
    return JointPmf(2, 2, {same, diff, diff, same}, {"0", "1"}, {"0", "1"});
}

namespace detail {

template <typename Table>
double half_l1(const Table& p, const Table& q) {
    auto a = p.probs();
    auto b = q.probs();
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
    return 0.5 * s;
}

}  // namespace detail

/// Total variation distance, half the L1 difference.
inline double tv_distance(const Pmf& p, const Pmf& q) {
    if (p.size() != q.size()) throw std::invalid_argument("tv_distance: shape mismatch");
    return detail::half_l1(p, q);
}

inline double tv_distance(const JointPmf& p, const JointPmf& q) {
    if (p.nx() != q.nx() || p.ny() != q.ny()) {
        throw std::invalid_argument("tv_distance: shape mismatch");
    }
    return detail::half_l1(p, q);
}

inline double tv_distance(const FullJoint& p, const FullJoint& q) {
    if (p.dims() != q.dims()) throw std::invalid_argument("tv_distance: shape mismatch");
    return detail::half_l1(p, q);
}

inline Pmf marginal(const JointPmf& p, Axis axis) {
    if (axis == Axis::X) {
        std::vector<double> m(p.nx(), 0.0);
        for (std::size_t x = 0; x < p.nx(); ++x)
            for (std::size_t y = 0; y < p.ny(); ++y) m[x] += p(x, y);
        return Pmf(std::move(m));
    }
    if (axis == Axis::Y) {
        std::vector<double> m(p.ny(), 0.0);
        for (std::size_t x = 0; x < p.nx(); ++x)
            for (std::size_t y = 0; y < p.ny(); ++y) m[y] += p(x, y);
        return Pmf(std::move(m));
    }
    throw std::invalid_argument("marginal: a JointPmf only has X and Y axes");
}

/// Sums out every axis not in `keep`; dropped axes collapse to size 1.
inline FullJoint marginal(const FullJoint& p, Axes keep) {
    if (keep.empty()) throw std::invalid_argument("marginal: empty axis set");
    FullJoint::Shape out_dims{};
    for (std::size_t a = 0; a < kNumAxes; ++a) out_dims[a] = keep.contains(a) ? p.dims()[a] : 1;
    FullJoint::Shape out_strides{};
    out_strides[kNumAxes - 1] = 1;
    for (std::size_t a = kNumAxes - 1; a > 0; --a)
        out_strides[a - 1] = out_strides[a] * out_dims[a];

    std::size_t total = 1;
    for (std::size_t d : out_dims) total *= d;
    std::vector<double> out(total, 0.0);

    const auto& dims = p.dims();
    const auto probs = p.probs();
    std::array<std::size_t, kNumAxes> idx{};
    for (std::size_t flat = 0; flat < probs.size(); ++flat) {
        std::size_t o = 0;
        for (std::size_t a = 0; a < kNumAxes; ++a)
            if (keep.contains(a)) o += idx[a] * out_strides[a];
        out[o] += probs[flat];
        for (std::size_t a = kNumAxes; a-- > 0;) {
            if (++idx[a] < dims[a]) break;
            idx[a] = 0;
        }
    }
    return FullJoint(out_dims, std::move(out));
}

/// The (x,y) marginal of a FullJoint.
inline JointPmf joint_xy(const FullJoint& p) {
    const FullJoint m = marginal(p, Axes{Axis::X, Axis::Y});
    return JointPmf(p.dim(Axis::X), p.dim(Axis::Y),
                    std::vector<double>(m.probs().begin(), m.probs().end()));
}

/// p(x,y) p(u,u1,u2|x,y).
inline FullJoint compose(const JointPmf& q, const AuxChannel& aux) {
    if (aux.nx() != q.nx() || aux.ny() != q.ny()) {
        throw std::invalid_argument("compose: channel shape does not match the source");
    }
    const std::size_t k = aux.row_size();
    std::vector<double> probs(q.nx() * q.ny() * k, 0.0);
    for (std::size_t x = 0; x < q.nx(); ++x) {
        for (std::size_t y = 0; y < q.ny(); ++y) {
            const double qxy = q(x, y);
            if (qxy == 0.0) continue;
            if (!aux.has_row(x, y)) {
                throw std::invalid_argument("compose: missing conditional row for support point (" +
                                            std::to_string(x) + "," + std::to_string(y) + ")");
            }
            const auto row = aux.row(x, y);
            double* dst = probs.data() + (x * q.ny() + y) * k;
            for (std::size_t j = 0; j < k; ++j) dst[j] = qxy * row[j];
        }
    }
    return FullJoint({q.nx(), q.ny(), aux.card_u(), aux.card_u1(), aux.card_u2()},
                     std::move(probs));
}

}  // namespace coordination
