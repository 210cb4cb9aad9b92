#ifndef HNWSN_QUADRATURE_HPP
#define HNWSN_QUADRATURE_HPP

// Nested adaptive Simpson quadrature.
//
// integrate_2d evaluates the iterated integral
//
//     int_{x0}^{x1} int_{ylo(x)}^{yhi(x)} f(x, y) dy dx
//
// by running adaptive Simpson in x over g(x) = inner y-integral, itself an
// adaptive Simpson run. Of the absolute tolerance tol, tol/3 is given to the
// outer integral and tol/3 is spread over the inner ones (each inner call gets
// (tol/3) / (x1 - x0), so the integrated inner error stays below tol/3). Both
// levels start from a fixed split into kInitialPanels panels so narrow peaks
// are not missed by the first five samples. Panels are bisected while
// |S_left + S_right - S_whole| > 15 * panel_tol, with Richardson correction
// applied to accepted panels. Square-root behaviour at half-disk endpoints is
// resolved by this bisection.
//
// The outer level and the inner levels taken together each get
// max_subdivisions bisections; exceeding either budget throws
// QuadratureError carrying the best estimate and its error bound. Workspaces
// are per call, so concurrent integrations are independent.

#include <cmath>
#include <cstddef>
#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>

namespace hnwsn {

struct QuadratureSpec
{
    double absolute_tolerance = 1e-8;
    std::size_t max_subdivisions = 200000;

    void validate() const
    {
        if (!(absolute_tolerance > 0.0))
            throw std::invalid_argument("QuadratureSpec: absolute_tolerance must be > 0");
        if (max_subdivisions == 0)
            throw std::invalid_argument("QuadratureSpec: max_subdivisions must be >= 1");
    }
};

struct QuadratureResult
{
    double value = 0.0;
    double error_bound = 0.0;
    std::size_t evaluations = 0;
};

class QuadratureError : public std::runtime_error
{
public:
    QuadratureError(const std::string& what, double best_estimate, double error_bound)
        : std::runtime_error(what), best_estimate_(best_estimate), error_bound_(error_bound)
    {}

    double best_estimate() const noexcept { return best_estimate_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double best_estimate_;
    double error_bound_;
};

namespace detail {

inline constexpr int kInitialPanels = 8;
inline constexpr int kMaxDepth = 60;

template <class F>
class AdaptiveSimpson
{
public:
    AdaptiveSimpson(F& f, std::size_t max_subdivisions) : f_(f), budget_(max_subdivisions) {}

    QuadratureResult run(double a, double b, double tol)
    {
        QuadratureResult total;
        if (a == b) return total;
        const double h = (b - a) / kInitialPanels;
        double fa = eval(a);
        for (int i = 0; i < kInitialPanels; ++i) {
            const double lo = a + i * h;
            const double hi = (i + 1 == kInitialPanels) ? b : a + (i + 1) * h;
            const double m = 0.5 * (lo + hi);
            const double fm = eval(m);
            const double fb = eval(hi);
            const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
            recurse(lo, hi, fa, fm, fb, whole, tol / kInitialPanels, 0);
            fa = fb;
        }
        total.value = sum_;
        total.error_bound = err_;
        total.evaluations = evaluations_;
        return total;
    }

    bool exhausted() const noexcept { return exhausted_; }
    std::size_t splits() const noexcept { return splits_; }

private:
    double eval(double x)
    {
        ++evaluations_;
        return f_(x);
    }

    void recurse(double a, double b, double fa, double fm, double fb, double whole, double tol, int depth)
    {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m);
        const double rm = 0.5 * (m + b);
        const double flm = eval(lm);
        const double frm = eval(rm);
        const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        const double delta = left + right - whole;
        const bool converged = std::fabs(delta) <= 15.0 * tol;
        if (converged || depth >= kMaxDepth || exhausted_ || splits_ >= budget_) {
            if (!converged) exhausted_ = true;
            sum_ += left + right + delta / 15.0;
            err_ += std::fabs(delta) / 15.0;
            return;
        }
        ++splits_;
        recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1);
        recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
    }

    F& f_;
    std::size_t budget_;
    std::size_t splits_ = 0;
    std::size_t evaluations_ = 0;
    double sum_ = 0.0;
    double err_ = 0.0;
    bool exhausted_ = false;
};

}  // namespace detail

/// One-dimensional adaptive Simpson.
template <class F>
QuadratureResult integrate_1d(F&& f, double a, double b, const QuadratureSpec& spec = {})
{
    spec.validate();
    if (!std::isfinite(a) || !std::isfinite(b))
        throw std::invalid_argument("integrate_1d: bounds must be finite");
    auto& fn = f;
    detail::AdaptiveSimpson<std::remove_reference_t<decltype(fn)>> simpson(fn, spec.max_subdivisions);
    QuadratureResult r = simpson.run(a, b, spec.absolute_tolerance);
    if (simpson.exhausted())
        throw QuadratureError("integrate_1d: tolerance not reached within max_subdivisions", r.value,
                              r.error_bound);
    return r;
}

/// Iterated 2D integral; y_bounds(x) returns the (lo, hi) pair at abscissa x.
template <class F, class YBounds>
QuadratureResult integrate_2d(F&& f, std::pair<double, double> x_bounds, YBounds&& y_bounds,
                              const QuadratureSpec& spec = {})
{
    spec.validate();
    const auto [x0, x1] = x_bounds;
    if (!std::isfinite(x0) || !std::isfinite(x1))
        throw std::invalid_argument("integrate_2d: x bounds must be finite");
    if (x0 == x1) return {};

    const double width = std::fabs(x1 - x0);
    const double outer_tol = spec.absolute_tolerance / 3.0;
    const double inner_tol = spec.absolute_tolerance / 3.0 / width;

    double inner_error = 0.0;  // sup of inner error bounds
    bool inner_exhausted = false;
    std::size_t inner_splits = 0;
    std::size_t evaluations = 0;

    auto inner = [&](double x) {
        const auto [ylo, yhi] = std::pair<double, double>(y_bounds(x));
        if (!std::isfinite(ylo) || !std::isfinite(yhi))
            throw std::invalid_argument("integrate_2d: y bounds must be finite");
        if (ylo == yhi) return 0.0;
        auto fx = [&](double y) { return f(x, y); };
        // Inner passes share one split budget; once it is spent they only
        // evaluate their initial panels and the integral reports failure.
        const std::size_t remaining = inner_splits < spec.max_subdivisions ? spec.max_subdivisions - inner_splits : 0;
        detail::AdaptiveSimpson<decltype(fx)> simpson(fx, remaining);
        const QuadratureResult r = simpson.run(ylo, yhi, inner_tol);
        inner_splits += simpson.splits();
        inner_exhausted = inner_exhausted || simpson.exhausted();
        inner_error = std::max(inner_error, r.error_bound);
        evaluations += r.evaluations;
        return r.value;
    };

    detail::AdaptiveSimpson<decltype(inner)> outer(inner, spec.max_subdivisions);
    QuadratureResult r = outer.run(x0, x1, outer_tol);
    r.error_bound += inner_error * width;
    r.evaluations = evaluations;
    if (outer.exhausted() || inner_exhausted)
        throw QuadratureError("integrate_2d: tolerance not reached within max_subdivisions", r.value,
                              r.error_bound);
    return r;
}

/// Rectangle convenience overload.
template <class F>
QuadratureResult integrate_2d(F&& f, std::pair<double, double> x_bounds, std::pair<double, double> y_bounds,
                              const QuadratureSpec& spec = {})
{
    return integrate_2d(std::forward<F>(f), x_bounds, [y_bounds](double) { return y_bounds; }, spec);
}

}  // namespace hnwsn

#endif  // HNWSN_QUADRATURE_HPP
