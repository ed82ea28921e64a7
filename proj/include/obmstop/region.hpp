#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace obmstop {

/// Interval with possibly infinite endpoints. Infinite endpoints are always open.
struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    bool lo_closed = false;
    bool hi_closed = false;

    static Interval closed(double lo, double hi) { return {lo, hi, true, true}; }
    static Interval open(double lo, double hi) { return {lo, hi, false, false}; }

    bool contains(double x) const noexcept;
    bool is_point() const noexcept { return lo == hi; }
    bool bounded() const noexcept;
    double length() const noexcept { return hi - lo; }
    std::string to_string() const;

    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Finite union of disjoint intervals, kept sorted. Touching components whose
/// closures make them contiguous are merged on construction.
class Region {
public:
    Region() = default;
    explicit Region(std::vector<Interval> components);

    static Region whole_line();
    /// [c, +inf)
    static Region right_ray(double c);

    const std::vector<Interval>& components() const noexcept { return components_; }
    bool empty() const noexcept { return components_.empty(); }
    bool connected() const noexcept { return components_.size() == 1; }
    std::size_t size() const noexcept { return components_.size(); }

    bool contains(double x) const noexcept;
    Region complement() const;

    /// Finite endpoints of all components, sorted, duplicates removed.
    std::vector<double> boundaries() const;

    /// Distance from x to the nearest finite endpoint (inf if there is none).
    double distance_to_boundary(double x) const noexcept;

    /// Every component of *this lies inside some component of other, with the
    /// other's endpoints widened by tol.
    bool is_subset_of(const Region& other, double tol = 0.0) const;

    /// Image under a strictly increasing bijection of the line.
    Region map(const std::function<double(double)>& increasing) const;

    std::string to_string() const;

    friend bool operator==(const Region&, const Region&) = default;

private:
    std::vector<Interval> components_;
};

}  // namespace obmstop
