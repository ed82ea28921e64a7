#include "obmstop/representing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/tools/roots.hpp>

#include "obmstop/errors.hpp"

namespace obmstop {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_support(double x, const char* what) {
    if (!std::isfinite(x)) throw DomainError(std::string(what) + ": non-finite x");
    if (x <= -1.0) throw DomainError(std::string(what) + ": requires x > -1");
}

// Sign of lower_sign_function with values within rounding of zero snapped to 0.
int k_sign(const FundamentalSystem& sys, const Reward& g, double x, Side side) {
    if (x <= g.support_start()) return -1;
    const double l = sys.psi_log_derivative(x, side);
    const double m = g.log_derivative(x, side);
    const double k = l - m;
    if (std::abs(k) <= 64.0 * kEps * (std::abs(l) + std::abs(m))) return 0;
    return k > 0.0 ? 1 : -1;
}

double bisect_root(const auto& f, double lo, double hi, double tol) {
    auto stop = [tol](double a, double b) { return b - a <= tol; };
    const auto [a, b] = boost::math::tools::bisect(f, lo, hi, stop);
    return 0.5 * (a + b);
}

}  // namespace

double lower_representing(const FundamentalSystem& sys, const Reward& g, double x, Side side) {
    const double gv = g.value(x);
    if (gv == 0.0) return -sys.psi(x) * g.derivative(x, side) / sys.scale_density(x, side);
    const double k = sys.psi_log_derivative(x, side) - g.log_derivative(x, side);
    return sys.psi(x) * gv * k / sys.scale_density(x, side);
}

double upper_representing(const FundamentalSystem& sys, const Reward& g, double x, Side side) {
    const double gv = g.value(x);
    if (gv == 0.0) return sys.phi(x) * g.derivative(x, side) / sys.scale_density(x, side);
    const double k = g.log_derivative(x, side) - sys.phi_log_derivative(x, side);
    return sys.phi(x) * gv * k / sys.scale_density(x, side);
}

double lower_sign_function(const FundamentalSystem& sys, const Reward& g, double x, Side side) {
    if (x <= g.support_start()) return -kInf;
    return sys.psi_log_derivative(x, side) - g.log_derivative(x, side);
}

double h_minus(const FundamentalPair& fp, double x) {
    require_support(x, "h_minus");
    return lower_representing(fp, Reward::linear_plus(), x);
}

double h_plus(const FundamentalPair& fp, double x) {
    require_support(x, "h_plus");
    return upper_representing(fp, Reward::linear_plus(), x);
}

double g_minus(const FundamentalPair& fp, double x) {
    require_support(x, "g_minus");
    return lower_representing(fp, Reward::quadratic_plus(), x);
}

double g_plus(const FundamentalPair& fp, double x) {
    require_support(x, "g_plus");
    return upper_representing(fp, Reward::quadratic_plus(), x);
}

double representing_drift(const FundamentalSystem& sys, const Reward& g, double x, Side side) {
    return sys.rate() * g.value(x) - 0.5 * sys.diffusion_coefficient(x, side) * g.second_derivative(x, side);
}

std::vector<MonotonePiece> monotone_pieces(const FundamentalSystem& sys, const Reward& g) {
    const double start = g.support_start();
    std::vector<double> cuts{start};
    if (g.power() == 2) {
        // r u^2 = a kappa^2 with u = 1 + kappa x
        const double r = sys.rate();
        const double kl = g.slope(Side::Left);
        const double xl = (kl * std::sqrt(sys.diffusion_coefficient(-1.0, Side::Left) / r) - 1.0) / kl;
        if (xl > start && xl < 0.0) cuts.push_back(xl);
        cuts.push_back(0.0);
        const double kr = g.slope(Side::Right);
        const double xr = (kr * std::sqrt(sys.diffusion_coefficient(1.0, Side::Right) / r) - 1.0) / kr;
        if (xr > 0.0) cuts.push_back(xr);
    } else {
        cuts.push_back(0.0);
    }
    cuts.push_back(kInf);

    std::vector<MonotonePiece> pieces;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double lo = cuts[i];
        const double hi = cuts[i + 1];
        const double mid = std::isfinite(hi) ? 0.5 * (lo + hi) : std::max(lo, 0.0) + 1.0;
        pieces.push_back({lo, hi, representing_drift(sys, g, mid) > 0.0});
    }
    return pieces;
}

std::vector<Crossing> lower_crossings(const FundamentalSystem& sys, const Reward& g, double abs_tol) {
    const auto pieces = monotone_pieces(sys, g);
    std::vector<Crossing> out;
    auto k = [&](double x) { return lower_sign_function(sys, g, x); };

    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const double lo = pieces[i].lo;
        double hi = pieces[i].hi;
        if (i > 0) {
            const int sl = k_sign(sys, g, lo, Side::Left);
            const int sr = k_sign(sys, g, lo, Side::Right);
            if (sl == 0 || sr == 0) {
                out.push_back({lo, false});
            } else if (sl != sr) {
                out.push_back({lo, true});
            }
        }
        if (!std::isfinite(hi)) {
            hi = std::max(lo, 0.0) + 1.0;
            int guard = 0;
            while (k_sign(sys, g, hi, Side::Left) <= 0) {
                if (++guard > 60) throw ConvergenceError("lower_crossings: no sign change towards +inf", {k(hi)}, guard);
                hi = 2.0 * hi + 1.0;
            }
        }
        const int sa = k_sign(sys, g, lo, Side::Right);
        const int sb = k_sign(sys, g, hi, Side::Left);
        if (sa * sb < 0) {
            // Interior points only: side does not matter.
            auto f = [&](double x) {
                if (x == lo) return sa < 0 ? -1.0 : 1.0;
                if (x == hi) return sb < 0 ? -1.0 : 1.0;
                return k(x);
            };
            out.push_back({bisect_root(f, lo, hi, abs_tol), false});
        }
    }
    std::sort(out.begin(), out.end(), [](const Crossing& a, const Crossing& b) { return a.x < b.x; });
    out.erase(std::unique(out.begin(), out.end(), [](const Crossing& a, const Crossing& b) { return a.x == b.x; }),
              out.end());
    return out;
}

}  // namespace obmstop
