#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "bnnfit/geometry.hpp"

namespace bnnfit {

struct Activations {
    double relu;
    double step_star;
};

inline double relu(double t) noexcept { return t > 0.0 ? t : 0.0; }

/// step*(t) = 1 - step(-t): 1 for t > 0, 0 for t <= 0.
inline double step_star(double t) noexcept { return t > 0.0 ? 1.0 : 0.0; }

inline Activations activations(double t) noexcept { return {relu(t), step_star(t)}; }

/// Network attached to one simplex: fixed weights, vertex values g(v_i).
class LocalBNN {
public:
    LocalBNN(Simplex simplex, std::vector<double> values);

    const Simplex& simplex() const noexcept { return simplex_; }
    const std::vector<double>& values() const noexcept { return values_; }
    std::size_t dimension() const noexcept { return simplex_.dimension(); }

    /// Barycentric coordinates of p relative to this simplex. The 1-D case
    /// uses the closed-form interval coordinates.
    BarycentricCoordinates coordinates(std::span<const double> p) const;

private:
    Simplex simplex_;
    std::vector<double> values_;
};

/// Sum over j of step*(-t_j) + step*(t_j - 1). Zero exactly when every
/// coordinate lies in [0, 1]; this is the gate inside the local network.
double outside_penalty(const BarycentricCoordinates& coords);

/// Evaluates
///   sum_i ReLU(1 - ReLU(1 - t_i) - sum_j (step*(-t_j) + step*(t_j - 1))) * g(v_i)
/// as the literal composition of activations.
double eval_local(const LocalBNN& net, const BarycentricCoordinates& coords);

/// Sorted base points (x, y) that determine a 1-D network on [xs.front(), xs.back()].
class BaseConfiguration {
public:
    BaseConfiguration(std::vector<double> xs, std::vector<double> ys);

    const std::vector<double>& xs() const noexcept { return xs_; }
    const std::vector<double>& ys() const noexcept { return ys_; }
    std::size_t size() const noexcept { return xs_.size(); }
    std::size_t segment_count() const noexcept { return xs_.size() - 1; }
    double lower() const noexcept { return xs_.front(); }
    double upper() const noexcept { return xs_.back(); }

    /// Index k of the segment [x_k, x_{k+1}] containing x (last segment for
    /// x == upper()). Requires lower() <= x <= upper().
    std::size_t segment_of(double x) const;

    /// Piecewise linear interpolation on the segment found by binary search;
    /// 0 outside [lower(), upper()].
    double interpolate(double x) const;

    bool operator==(const BaseConfiguration&) const = default;

private:
    std::vector<double> xs_;
    std::vector<double> ys_;
};

enum class EvalPath {
    Auto,      ///< binary search when built from a BaseConfiguration, else all locals
    AllLocals  ///< evaluate every local network and average the active ones
};

/// Average of the local networks over a complex of d-simplices.
///
/// The denominator counts locals whose activation gate is open (every
/// coordinate in [0, 1]), which coincides with counting positive outputs
/// whenever all vertex values are positive and stays correct for values
/// <= 0. Shared faces are not checked for consistent values when the locals
/// are supplied directly.
class GlobalBNN {
public:
    explicit GlobalBNN(std::vector<LocalBNN> locals);

    const std::vector<LocalBNN>& locals() const noexcept { return locals_; }
    std::size_t dimension() const noexcept { return locals_.front().dimension(); }

    double evaluate(std::span<const double> p, EvalPath path = EvalPath::Auto) const;
    double evaluate(double x, EvalPath path = EvalPath::Auto) const;

    const std::optional<BaseConfiguration>& base() const noexcept { return base_; }

private:
    friend GlobalBNN from_base_config(const BaseConfiguration& cfg);

    std::vector<LocalBNN> locals_;
    std::optional<BaseConfiguration> base_;
};

double eval_global(const GlobalBNN& net, std::span<const double> p, EvalPath path = EvalPath::Auto);
double eval_global(const GlobalBNN& net, double x, EvalPath path = EvalPath::Auto);

/// One local network per consecutive interval [x_i, x_{i+1}] with values (y_i, y_{i+1}).
GlobalBNN from_base_config(const BaseConfiguration& cfg);

/// Affine piece h(x) = slope * x + intercept on [a, b].
struct CplfSegment {
    double a;
    double b;
    double slope;
    double intercept;

    double operator()(double x) const noexcept { return slope * x + intercept; }
};

std::vector<CplfSegment> to_segments(const BaseConfiguration& cfg);

/// max_i |y_i - h(x_i)| where h is the piecewise affine map given by the
/// segments. Throws SampleOutOfDomain for x outside the segments.
double cplf_max_error(std::span<const CplfSegment> segments, std::span<const double> xs,
                      std::span<const double> ys);

}  // namespace bnnfit
