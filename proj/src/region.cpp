#include "obmstop/region.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "obmstop/errors.hpp"

namespace obmstop {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string format_endpoint(double v) {
    if (v == kInf) return "+inf";
    if (v == -kInf) return "-inf";
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

}  // namespace

bool Interval::contains(double x) const noexcept {
    const bool above = lo_closed ? x >= lo : x > lo;
    const bool below = hi_closed ? x <= hi : x < hi;
    return above && below;
}

bool Interval::bounded() const noexcept { return std::isfinite(lo) && std::isfinite(hi); }

std::string Interval::to_string() const {
    return std::string(lo_closed ? "[" : "(") + format_endpoint(lo) + ", " + format_endpoint(hi) +
           (hi_closed ? "]" : ")");
}

Region::Region(std::vector<Interval> components) {
    for (auto& c : components) {
        if (std::isnan(c.lo) || std::isnan(c.hi) || c.lo > c.hi) {
            throw DomainError("region component " + c.to_string() + " is not an interval");
        }
        if (!std::isfinite(c.lo)) c.lo_closed = false;
        if (!std::isfinite(c.hi)) c.hi_closed = false;
        if (c.lo == c.hi && !(c.lo_closed && c.hi_closed)) {
            throw DomainError("region component " + c.to_string() + " is empty");
        }
    }
    std::sort(components.begin(), components.end(), [](const Interval& a, const Interval& b) {
        if (a.lo != b.lo) return a.lo < b.lo;
        return a.lo_closed && !b.lo_closed;
    });
    for (const auto& c : components) {
        if (!components_.empty()) {
            Interval& last = components_.back();
            const bool overlap = c.lo < last.hi;
            const bool touch = c.lo == last.hi && (c.lo_closed || last.hi_closed);
            if (overlap || touch) {
                if (c.hi > last.hi) {
                    last.hi = c.hi;
                    last.hi_closed = c.hi_closed;
                } else if (c.hi == last.hi) {
                    last.hi_closed = last.hi_closed || c.hi_closed;
                }
                continue;
            }
        }
        components_.push_back(c);
    }
}

Region Region::whole_line() { return Region({Interval{}}); }

Region Region::right_ray(double c) { return Region({Interval{c, kInf, true, false}}); }

bool Region::contains(double x) const noexcept {
    return std::any_of(components_.begin(), components_.end(), [x](const Interval& c) { return c.contains(x); });
}

Region Region::complement() const {
    std::vector<Interval> out;
    double lo = -kInf;
    bool lo_closed = false;
    for (const auto& c : components_) {
        if (c.lo > lo || (c.lo == lo && lo_closed && !c.lo_closed)) {
            out.push_back(Interval{lo, c.lo, lo_closed, !c.lo_closed});
        }
        lo = c.hi;
        lo_closed = !c.hi_closed;
    }
    if (lo < kInf) out.push_back(Interval{lo, kInf, lo_closed, false});
    return Region(std::move(out));
}

std::vector<double> Region::boundaries() const {
    std::vector<double> b;
    for (const auto& c : components_) {
        if (std::isfinite(c.lo)) b.push_back(c.lo);
        if (std::isfinite(c.hi)) b.push_back(c.hi);
    }
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    return b;
}

double Region::distance_to_boundary(double x) const noexcept {
    double d = kInf;
    for (const auto& c : components_) {
        if (std::isfinite(c.lo)) d = std::min(d, std::abs(x - c.lo));
        if (std::isfinite(c.hi)) d = std::min(d, std::abs(x - c.hi));
    }
    return d;
}

bool Region::is_subset_of(const Region& other, double tol) const {
    return std::all_of(components_.begin(), components_.end(), [&](const Interval& c) {
        return std::any_of(other.components_.begin(), other.components_.end(), [&](const Interval& o) {
            const bool lo_ok = o.lo < c.lo || (o.lo == c.lo && (o.lo_closed || !c.lo_closed)) ||
                               (tol > 0.0 && o.lo <= c.lo + tol);
            const bool hi_ok = o.hi > c.hi || (o.hi == c.hi && (o.hi_closed || !c.hi_closed)) ||
                               (tol > 0.0 && o.hi >= c.hi - tol);
            return lo_ok && hi_ok;
        });
    });
}

Region Region::map(const std::function<double(double)>& increasing) const {
    std::vector<Interval> out;
    out.reserve(components_.size());
    for (const auto& c : components_) {
        Interval m = c;
        if (std::isfinite(c.lo)) m.lo = increasing(c.lo);
        if (std::isfinite(c.hi)) m.hi = increasing(c.hi);
        out.push_back(m);
    }
    return Region(std::move(out));
}

std::string Region::to_string() const {
    if (components_.empty()) return "{}";
    std::string s;
    for (std::size_t i = 0; i < components_.size(); ++i) {
        if (i) s += " U ";
        s += components_[i].to_string();
    }
    return s;
}

}  // namespace obmstop
