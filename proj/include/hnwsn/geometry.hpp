#ifndef HNWSN_GEOMETRY_HPP
#define HNWSN_GEOMETRY_HPP

// Planar geometry for the intrusion model.
//
// Coordinates: the protected target occupies x <= 0. An intruder enters at
// (S, 0) and walks a distance d along -x, so its path is the segment
// (S, 0) -> (S - d, 0). A sensor at distance <= r from that segment detects
// it (closed disk). The detection set is therefore a capsule: a 2d x 2r
// rectangle capped by two half-disks of radius r.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hnwsn {

struct Point
{
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

/// Rectangle or the half-plane x >= 0.
class Region
{
public:
    enum class Kind { Rectangle, HalfPlane };

    static Region rectangle(double x_min, double x_max, double y_min, double y_max)
    {
        if (!(x_min < x_max) || !(y_min < y_max))
            throw std::invalid_argument("Region: rectangle bounds must satisfy min < max");
        if (!std::isfinite(x_min) || !std::isfinite(x_max) || !std::isfinite(y_min) ||
            !std::isfinite(y_max))
            throw std::invalid_argument("Region: rectangle bounds must be finite");
        return Region{Kind::Rectangle, x_min, x_max, y_min, y_max};
    }

    static Region half_plane()
    {
        constexpr double inf = std::numeric_limits<double>::infinity();
        return Region{Kind::HalfPlane, 0.0, inf, -inf, inf};
    }

    Kind kind() const noexcept { return kind_; }
    bool bounded() const noexcept { return kind_ == Kind::Rectangle; }

    double x_min() const noexcept { return x_min_; }
    double x_max() const noexcept { return x_max_; }
    double y_min() const noexcept { return y_min_; }
    double y_max() const noexcept { return y_max_; }
    double width() const noexcept { return x_max_ - x_min_; }
    double height() const noexcept { return y_max_ - y_min_; }

    double area() const noexcept
    {
        return bounded() ? width() * height() : std::numeric_limits<double>::infinity();
    }

    bool contains(Point p) const noexcept
    {
        return p.x >= x_min_ && p.x <= x_max_ && p.y >= y_min_ && p.y <= y_max_;
    }

    friend bool operator==(const Region&, const Region&) = default;

private:
    Region(Kind kind, double x0, double x1, double y0, double y1)
        : kind_(kind), x_min_(x0), x_max_(x1), y_min_(y0), y_max_(y1)
    {}

    Kind kind_;
    double x_min_, x_max_, y_min_, y_max_;
};

struct SensorField
{
    std::vector<Point> positions;
    double sensing_range = 1.0;
};

/// Straight-line intruder: enters at (S, 0), travels d toward the target at
/// x = 0. max_permitted is the distance D it may cover before it must have
/// been detected.
struct IntruderScenario
{
    double start_s = 0.0;
    double distance_d = 0.0;
    double max_permitted = 0.0;

    Point entry() const noexcept { return {start_s, 0.0}; }
    Point stop() const noexcept { return {start_s - distance_d, 0.0}; }

    void validate() const
    {
        if (!std::isfinite(start_s) || start_s < 0.0)
            throw std::invalid_argument("IntruderScenario: S must be finite and >= 0");
        if (!std::isfinite(distance_d) || distance_d < 0.0)
            throw std::invalid_argument("IntruderScenario: d must be finite and >= 0");
        if (distance_d > start_s)
            throw std::invalid_argument("IntruderScenario: d must not exceed S");
        if (!std::isfinite(max_permitted) || max_permitted < 0.0 || max_permitted > start_s)
            throw std::invalid_argument("IntruderScenario: D must lie in [0, S]");
    }
};

/// Scenario with D defaulting to S (the whole approach is permitted).
inline IntruderScenario make_scenario(double start_s, double distance_d)
{
    IntruderScenario s{start_s, distance_d, start_s};
    s.validate();
    return s;
}

inline IntruderScenario make_scenario(double start_s, double distance_d, double max_permitted)
{
    IntruderScenario s{start_s, distance_d, max_permitted};
    s.validate();
    return s;
}

inline double capsule_area(double length, double r)
{
    if (!(length >= 0.0)) throw std::invalid_argument("capsule_area: length must be >= 0");
    if (!(r > 0.0)) throw std::invalid_argument("capsule_area: r must be > 0");
    return 2.0 * length * r + std::numbers::pi * r * r;
}

inline double point_segment_distance(Point p, Point a, Point b) noexcept
{
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double len2 = dx * dx + dy * dy;
    double t = 0.0;
    if (len2 > 0.0) t = std::clamp(((p.x - a.x) * dx + (p.y - a.y) * dy) / len2, 0.0, 1.0);
    return std::hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy));
}

struct Capsule
{
    Point a;
    Point b;
    double radius = 1.0;

    double length() const noexcept { return std::hypot(b.x - a.x, b.y - a.y); }
    double area() const { return capsule_area(length(), radius); }
    bool contains(Point p) const noexcept { return point_segment_distance(p, a, b) <= radius; }
};

inline Capsule detection_capsule(const IntruderScenario& scenario, double r)
{
    return Capsule{scenario.entry(), scenario.stop(), r};
}

/// Boolean sensing: boundary counts as detected.
inline bool detects(Point sensor, const IntruderScenario& scenario, double r) noexcept
{
    // Path lies on y = 0 between S - d and S, so the distance reduces to a clamp.
    const double cx = std::clamp(sensor.x, scenario.start_s - scenario.distance_d, scenario.start_s);
    const double dx = sensor.x - cx;
    return dx * dx + sensor.y * sensor.y <= r * r;
}

inline bool capsule_inside(const Capsule& c, const Region& region) noexcept
{
    const double x_lo = std::min(c.a.x, c.b.x) - c.radius;
    const double x_hi = std::max(c.a.x, c.b.x) + c.radius;
    const double y_lo = std::min(c.a.y, c.b.y) - c.radius;
    const double y_hi = std::max(c.a.y, c.b.y) + c.radius;
    return region.contains({x_lo, y_lo}) && region.contains({x_hi, y_hi});
}

/// Fraction of the cell centres of a resolution x resolution grid over the
/// rectangle that lie within sensing range of some sensor.
inline double coverage_fraction(const SensorField& field, const Region& region, int resolution)
{
    if (!region.bounded()) throw std::invalid_argument("coverage_fraction: region must be a rectangle");
    if (resolution < 2) throw std::invalid_argument("coverage_fraction: resolution must be >= 2");
    if (!(field.sensing_range > 0.0))
        throw std::invalid_argument("coverage_fraction: sensing range must be > 0");
    if (field.positions.empty()) return 0.0;

    const double r2 = field.sensing_range * field.sensing_range;
    const double hx = region.width() / resolution;
    const double hy = region.height() / resolution;
    std::size_t covered = 0;
    for (int j = 0; j < resolution; ++j) {
        const double y = region.y_min() + (j + 0.5) * hy;
        for (int i = 0; i < resolution; ++i) {
            const double x = region.x_min() + (i + 0.5) * hx;
            for (const Point& s : field.positions) {
                const double dx = x - s.x;
                const double dy = y - s.y;
                if (dx * dx + dy * dy <= r2) {
                    ++covered;
                    break;
                }
            }
        }
    }
    return static_cast<double>(covered) / (static_cast<double>(resolution) * resolution);
}

}  // namespace hnwsn

#endif  // HNWSN_GEOMETRY_HPP
