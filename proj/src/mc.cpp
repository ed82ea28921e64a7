#include "obmstop/mc.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <tuple>
#include <ostream>
#include <thread>
#include <vector>

#include "obmstop/csv.hpp"
#include "obmstop/errors.hpp"

namespace obmstop {

namespace {

struct BatchStats {
    std::size_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;
    std::size_t censored = 0;
    std::uint64_t steps = 0;

    void add(double v) {
        ++count;
        const double d = v - mean;
        mean += d / static_cast<double>(count);
        m2 += d * (v - mean);
    }

    void merge(const BatchStats& o) {
        if (o.count == 0) return;
        const double n = static_cast<double>(count), m = static_cast<double>(o.count);
        const double d = o.mean - mean;
        mean += d * m / (n + m);
        m2 += o.m2 + d * d * n * m / (n + m);
        count += o.count;
        censored += o.censored;
        steps += o.steps;
    }
};

class PathSimulator {
public:
    PathSimulator(const Region& region, const ObmParams& params, Discount r, const McConfig& cfg)
        : region_(region),
          params_(params),
          embed_(obm_to_sbm(params)),
          r_(r.value()),
          cfg_(cfg),
          horizon_(cfg.horizon > 0.0 ? cfg.horizon : 50.0 / r.value()),
          sigma_max_(std::max(params.sigma1(), params.sigma2())) {}

    double horizon() const { return horizon_; }
    double sigma_max() const { return sigma_max_; }

    // Returns (tau, X_tau, censored). Calls visit(t, x) for every step if given.
    template <class Rng, class Visit>
    std::tuple<double, double, bool> run(double x0, Rng& rng, std::uint64_t& steps, Visit&& visit) const {
        double t = 0.0, x = x0;
        visit(t, x);
        if (region_.contains(x)) return {0.0, x, false};
        const double band = 6.0 * sigma_max_ * std::sqrt(cfg_.dt);
        while (t < horizon_) {
            double step = cfg_.dt;
            if (cfg_.adaptive) {
                double d = region_.distance_to_boundary(x);
                if (cfg_.sampler == Sampler::Euler) d = std::min(d, std::abs(x));
                if (d > band) step = std::min(std::pow(d / (6.0 * sigma_max_), 2), cfg_.max_step);
            }
            step = std::min(step, horizon_ - t);
            if (!(step > 0.0)) break;
            x = advance(x, step, rng);
            t += step;
            ++steps;
            visit(t, x);
            if (region_.contains(x)) return {t, x, false};
        }
        return {horizon_, x, true};
    }

private:
    template <class Rng>
    double advance(double x, double step, Rng& rng) const {
        if (cfg_.sampler == Sampler::Euler) return euler_step(x, step, params_, rng);
        const double y = sbm_scale_inv(embed_.beta, x / embed_.factor);
        return embed_.factor * sbm_scale(embed_.beta, sbm_step_exact(y, step, embed_.beta, rng));
    }

    const Region& region_;
    ObmParams params_;
    SkewEmbedding embed_;
    double r_;
    McConfig cfg_;
    double horizon_;
    double sigma_max_;
};

std::mt19937_64 batch_rng(std::uint64_t seed, std::uint64_t batch) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(batch), static_cast<std::uint32_t>(batch >> 32)};
    return std::mt19937_64(seq);
}

void validate(double x0, const Region& region, const McConfig& cfg) {
    if (cfg.n_paths == 0) throw DomainError("estimate_value: n_paths must be at least 1");
    if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) throw DomainError("estimate_value: dt must be positive");
    if (cfg.horizon != 0.0 && !(cfg.horizon >= cfg.dt)) throw DomainError("estimate_value: horizon must be >= dt");
    if (cfg.batch_size == 0) throw DomainError("estimate_value: batch_size must be positive");
    if (region.empty()) throw DomainError("estimate_value: empty region");
    if (!std::isfinite(x0)) throw DomainError("estimate_value: non-finite x0");
}

}  // namespace

McEstimate estimate_value(double x0, const Region& region, const ObmParams& params, Discount r, const Reward& reward,
                          const McConfig& cfg) {
    validate(x0, region, cfg);
    McEstimate est;
    est.n_paths = cfg.n_paths;
    const double smax = std::max(params.sigma1(), params.sigma2());
    est.overshoot_scale = 0.5826 * smax * std::sqrt(cfg.dt);
    if (region.contains(x0)) {
        est.mean = reward.value(x0);
        return est;
    }

    const PathSimulator sim(region, params, r, cfg);
    const std::size_t n_batches = (cfg.n_paths + cfg.batch_size - 1) / cfg.batch_size;
    std::vector<BatchStats> stats(n_batches);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t b = next++; b < n_batches; b = next++) {
            auto rng = batch_rng(cfg.seed, b);
            const std::size_t begin = b * cfg.batch_size;
            const std::size_t end = std::min(cfg.n_paths, begin + cfg.batch_size);
            BatchStats& s = stats[b];
            for (std::size_t p = begin; p < end; ++p) {
                const auto [tau, x, censored] = sim.run(x0, rng, s.steps, [](double, double) {});
                s.add(std::exp(-r.value() * tau) * reward.value(x));
                if (censored) ++s.censored;
            }
        }
    };
    std::size_t threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, n_batches);
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    BatchStats total;
    for (const auto& s : stats) total.merge(s);
    est.mean = total.mean;
    const double n = static_cast<double>(total.count);
    est.std_error = total.count > 1 ? std::sqrt(total.m2 / (n - 1.0) / n) : 0.0;
    est.censored_fraction = static_cast<double>(total.censored) / n;
    est.steps = total.steps;
    return est;
}

void dump_paths(std::ostream& os, double x0, const Region& region, const ObmParams& params, Discount r,
                const McConfig& cfg, std::size_t n) {
    validate(x0, region, cfg);
    const PathSimulator sim(region, params, r, cfg);
    write_csv_row(os, {"path_id", "t", "x"});
    std::uint64_t steps = 0;
    std::mt19937_64 rng;
    for (std::size_t p = 0; p < n; ++p) {
        if (p % cfg.batch_size == 0) rng = batch_rng(cfg.seed, p / cfg.batch_size);
        const std::string id = std::to_string(p);
        sim.run(x0, rng, steps, [&](double t, double x) { write_csv_row(os, {id, format_double(t), format_double(x)}); });
    }
}

}  // namespace obmstop
