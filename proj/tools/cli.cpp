#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "obmstop/csv.hpp"
#include "obmstop/errors.hpp"
#include "obmstop/grid_oracle.hpp"
#include "obmstop/mc.hpp"
#include "obmstop/report_json.hpp"
#include "obmstop/skew.hpp"
#include "obmstop/solver.hpp"
#include "obmstop/value_function.hpp"
#include "obmstop/verification.hpp"

namespace obmstop::cli {

namespace {

using nlohmann::json;

struct JobConfig {
    std::optional<double> sigma1, sigma2, r, beta;
    std::string reward = "quad";
    std::string output;
    std::string format;
    std::size_t threads = 0;
    SolverTolerances tol;

    // sweep
    double r_min = 0.0, r_max = 0.0, r_step = 0.0;
    std::size_t count = 0;
    // bubble
    bool find_r0 = false;
    // oracle
    std::optional<double> xmin, xmax;
    std::size_t grid_n = 8000;
    std::string grid_method = "policy";
    // simulate
    std::vector<double> x0;
    McConfig mc;
    std::string sampler = "exact";
    double shift = 0.0;
    std::size_t dump_paths = 0;
    std::string dump_file;
    // verify
    std::string candidate = "value";
    std::optional<double> threshold;
    // figure
    std::string figure;
    std::size_t points = 401;
};

struct Problem {
    ObmParams params;
    Reward reward;
    std::optional<SkewParams> beta;
    bool sbm_mode = false;
};

Problem resolve_problem(const JobConfig& cfg) {
    std::optional<SkewParams> beta;
    if (cfg.beta) beta = SkewParams(*cfg.beta);
    const bool have_sigma = cfg.sigma1 || cfg.sigma2;
    if (have_sigma && !(cfg.sigma1 && cfg.sigma2)) throw DomainError("both --sigma1 and --sigma2 are required");
    if (!have_sigma && !beta) throw DomainError("give --sigma1 and --sigma2, or --beta for the skew BM problem");
    const ObmParams params = have_sigma ? ObmParams(*cfg.sigma1, *cfg.sigma2) : sbm_to_obm(*beta);
    return {params, Reward::from_name(cfg.reward, beta), beta, !have_sigma};
}

Discount require_r(const JobConfig& cfg) {
    if (!cfg.r) throw DomainError("--r is required");
    return Discount(*cfg.r);
}

json problem_json(const Problem& p, std::optional<double> r) {
    json j{{"sigma1", p.params.sigma1()}, {"sigma2", p.params.sigma2()}, {"reward", p.reward.name()}};
    j["r"] = r ? json(*r) : json(nullptr);
    j["beta"] = p.beta ? json(p.beta->beta()) : json(nullptr);
    j["sbm_mode"] = p.sbm_mode;
    return j;
}

json value_function_json(const ValueFunction& v) {
    json pieces = json::array();
    for (const auto& piece : v.pieces()) {
        pieces.push_back({{"interval", to_json(piece.interval)},
                          {"coef_psi", piece.coef_psi},
                          {"coef_phi", piece.coef_phi}});
    }
    return {{"pieces", pieces}};
}

// Output stream selected by --output, then OBMSTOP_OUTPUT_DIR, then stdout.
class Sink {
public:
    Sink(const JobConfig& cfg, const std::string& stem, const std::string& ext, std::ostream& fallback)
        : os_(&fallback) {
        std::string path = cfg.output;
        if (path.empty()) {
            if (const char* dir = std::getenv("OBMSTOP_OUTPUT_DIR"); dir && *dir) {
                std::filesystem::create_directories(dir);
                path = (std::filesystem::path(dir) / (stem + "." + ext)).string();
            }
        }
        if (!path.empty() && path != "-") {
            file_.open(path);
            if (!file_) throw DomainError("cannot open output file '" + path + "'");
            os_ = &file_;
        }
    }
    std::ostream& stream() { return *os_; }

private:
    std::ofstream file_;
    std::ostream* os_;
};

std::string format_or(const JobConfig& cfg, const std::string& def) {
    const std::string f = cfg.format.empty() ? def : cfg.format;
    if (f != "csv" && f != "json") throw DomainError("--format must be csv or json");
    return f;
}

template <class F>
void parallel_for(std::size_t n, std::size_t threads, F&& f) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, n);
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) f(i);
        });
    }
    for (auto& th : pool) th.join();
}

bool quadratic_bubble_case(const Problem& p) {
    const double s1 = p.params.sigma1(), s2 = p.params.sigma2();
    return p.reward.kind() == Reward::Kind::QuadraticPlus && s2 * s2 > 2.0 * s1 * s1;
}

// Solver boundaries mapped to SBM coordinates, plus an independent solve in
// SBM coordinates where the payoff is expressible there.
json sbm_section(const Problem& p, Discount r, const Regime& regime, const SolverTolerances& tol) {
    const SkewParams beta = *p.beta;
    const Region gamma = regime.stopping_region();
    const Region mapped = gamma.map([beta](double x) { return sbm_scale_inv(beta, x); });
    json j{{"beta", beta.beta()},
           {"stopping_region", to_json(mapped)},
           {"zero_in_stopping_region", mapped.contains(0.0)},
           {"kink_obstruction", kink_obstruction(p.reward)}};
    std::optional<Reward> native;
    if (p.reward.kind() == Reward::Kind::SkewLinear) native = Reward::linear_plus();
    if (p.reward.kind() == Reward::Kind::SkewQuadratic) native = Reward::quadratic_plus();
    if (native) {
        const SkewFundamentalPair sys(beta, r);
        const Regime direct = classify_regime(sys, *native, tol);
        const auto a = mapped.boundaries();
        const auto b = direct.stopping_region().boundaries();
        double gap = a.size() == b.size() ? 0.0 : std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) gap = std::max(gap, std::abs(a[i] - b[i]));
        j["native_stopping_region"] = to_json(direct.stopping_region());
        j["max_boundary_discrepancy"] = json_number(gap);
    } else {
        j["native_stopping_region"] = nullptr;
        j["max_boundary_discrepancy"] = nullptr;
    }
    return j;
}

int cmd_solve(const JobConfig& cfg, std::ostream& out) {
    const Problem p = resolve_problem(cfg);
    const Discount r = require_r(cfg);
    const Regime regime = classify_regime(p.params, r, p.reward, cfg.tol);
    const ValueFunction v = assemble(std::make_shared<FundamentalPair>(p.params, r), p.reward, regime);
    const VerificationSummary summary = verify(v);
    json rep{{"command", "solve"},
             {"problem", problem_json(p, r.value())},
             {"regime", to_json(regime)},
             {"value_function", value_function_json(v)},
             {"verification", to_json(summary)},
             {"verified", summary.passed}};
    if (p.sbm_mode) rep["sbm"] = sbm_section(p, r, regime, cfg.tol);
    Sink sink(cfg, "solve", "json", out);
    sink.stream() << rep.dump(2) << '\n';
    return summary.passed ? kOk : kVerificationFailed;
}

int cmd_classify(const JobConfig& cfg, std::ostream& out) {
    const Problem p = resolve_problem(cfg);
    const Discount r = require_r(cfg);
    const Regime regime = classify_regime(p.params, r, p.reward, cfg.tol);
    Sink sink(cfg, "classify", format_or(cfg, "json"), out);
    if (format_or(cfg, "json") == "json") {
        sink.stream() << json{{"problem", problem_json(p, r.value())}, {"regime", to_json(regime)}}.dump(2) << '\n';
    } else {
        write_csv_row(sink.stream(), {"r", "regime", "thresholds"});
        std::string th;
        for (double t : regime.thresholds) th += (th.empty() ? "" : " ") + format_double(t);
        write_csv_row(sink.stream(), {format_double(r.value()), to_string(regime.tag), th});
    }
    return kOk;
}

std::vector<double> sweep_rates(const JobConfig& cfg) {
    if (!(cfg.r_min > 0.0) || !(cfg.r_max >= cfg.r_min)) throw DomainError("sweep requires 0 < --r-min <= --r-max");
    std::vector<double> rs;
    if (cfg.count >= 2) {
        for (std::size_t i = 0; i < cfg.count; ++i) {
            rs.push_back(cfg.r_min + (cfg.r_max - cfg.r_min) * static_cast<double>(i) / static_cast<double>(cfg.count - 1));
        }
    } else if (cfg.r_step > 0.0) {
        const auto n = static_cast<std::size_t>(std::floor((cfg.r_max - cfg.r_min) / cfg.r_step + 1e-9));
        for (std::size_t i = 0; i <= n; ++i) rs.push_back(cfg.r_min + cfg.r_step * static_cast<double>(i));
    } else {
        throw DomainError("sweep requires --count >= 2 or --r-step > 0");
    }
    return rs;
}

int cmd_sweep(const JobConfig& cfg, std::ostream& out) {
    const Problem p = resolve_problem(cfg);
    const std::vector<double> rs = sweep_rates(cfg);
    struct Row {
        double r;
        std::string label;
        std::vector<double> th;
    };
    std::vector<Row> rows(rs.size());
    parallel_for(rs.size(), cfg.threads, [&](std::size_t i) {
        const Regime reg = classify_regime(p.params, Discount(rs[i]), p.reward, cfg.tol);
        rows[i] = {rs[i], to_string(reg.tag), reg.thresholds};
    });
    if (quadratic_bubble_case(p)) {
        const double r0 = find_r0(p.params, cfg.tol);
        if (r0 >= rs.front() && r0 <= rs.back()) {
            const Regime reg = classify_regime(p.params, Discount(r0), p.reward, cfg.tol);
            const auto pos = std::upper_bound(rows.begin(), rows.end(), r0, [](double v, const Row& row) { return v < row.r; });
            rows.insert(pos, {r0, "r0", reg.thresholds});
        }
    }
    const std::string fmt = format_or(cfg, "csv");
    Sink sink(cfg, "sweep", fmt, out);
    if (fmt == "csv") {
        write_csv_row(sink.stream(), {"r", "regime", "c", "c1", "c2", "c3"});
        for (const auto& row : rows) {
            std::vector<std::string> f{format_double(row.r), row.label, "", "", "", ""};
            if (row.th.size() == 1) f[2] = format_double(row.th[0]);
            if (row.th.size() == 3) {
                for (int k = 0; k < 3; ++k) f[3 + k] = format_double(row.th[k]);
            }
            write_csv_row(sink.stream(), f);
        }
    } else {
        json arr = json::array();
        for (const auto& row : rows) arr.push_back({{"r", row.r}, {"regime", row.label}, {"thresholds", row.th}});
        sink.stream() << json{{"problem", problem_json(p, std::nullopt)}, {"rows", arr}}.dump(2) << '\n';
    }
    return kOk;
}

int cmd_bubble(const JobConfig& cfg, std::ostream& out) {
    const Problem p = resolve_problem(cfg);
    if (p.reward.kind() != Reward::Kind::QuadraticPlus) throw DomainError("bubble: requires the quad reward");
    if (!cfg.r && !cfg.find_r0) throw DomainError("bubble: give --r or --find-r0");
    json rep{{"command", "bubble"}, {"problem", problem_json(p, cfg.r)}};
    if (cfg.find_r0) rep["r0"] = find_r0(p.params, cfg.tol);
    if (cfg.r) {
        const auto b = solve_bubble(p.params, Discount(*cfg.r), cfg.tol);
        rep["bubble"] = b ? to_json(*b) : json(nullptr);
    }
    Sink sink(cfg, "bubble", "json", out);
    sink.stream() << rep.dump(2) << '\n';
    return kOk;
}

int cmd_oracle(const JobConfig& cfg, std::ostream& out) {
    const Problem p = resolve_problem(cfg);
    const Discount r = require_r(cfg);
    const Regime regime = classify_regime(p.params, r, p.reward, cfg.tol);
    const auto bounds = regime.stopping_region().boundaries();
    const auto [dlo, dhi] = default_grid_bounds(bounds.empty() ? 0.0 : bounds.back());
    const GridModel gm = build_chain(p.params, cfg.xmin.value_or(dlo), cfg.xmax.value_or(dhi), cfg.grid_n);
    GridOptions opt;
    if (cfg.grid_method == "value") {
        opt.method = GridMethod::ValueIteration;
    } else if (cfg.grid_method != "policy") {
        throw DomainError("--method must be policy or value");
    }
    const GridSolution sol = solve_stopping(gm, p.reward, r, opt);
    const std::string fmt = format_or(cfg, "csv");
    Sink sink(cfg, "oracle", fmt, out);
    if (fmt == "csv") {
        write_grid_csv(sink.stream(), gm, p.reward, sol);
        return kOk;
    }
    const Region grid_region = extract_region(sol.stop, gm.xs);
    // finite analytic boundaries against the grid ones, ignoring the xmax guard
    auto gb = grid_region.boundaries();
    std::erase_if(gb, [&](double x) { return x == gm.xmax() || x == gm.xmin(); });
    double gap = gb.size() == bounds.size() ? 0.0 : std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < std::min(gb.size(), bounds.size()); ++i) gap = std::max(gap, std::abs(gb[i] - bounds[i]));
    json rep{{"command", "oracle"},
             {"problem", problem_json(p, r.value())},
             {"grid", {{"xmin", gm.xmin()}, {"xmax", gm.xmax()}, {"h", gm.h}, {"nodes", gm.size()}}},
             {"method", sol.method},
             {"iterations", sol.iterations},
             {"residual", sol.residual},
             {"stop_runs", count_runs(sol.stop)},
             {"stopping_region", to_json(grid_region)},
             {"analytic_stopping_region", to_json(regime.stopping_region())},
             {"max_boundary_discrepancy", json_number(gap)}};
    sink.stream() << rep.dump(2) << '\n';
    return kOk;
}

int cmd_simulate(const JobConfig& cfg, std::ostream& out) {
    const Problem p = resolve_problem(cfg);
    const Discount r = require_r(cfg);
    if (cfg.x0.empty()) throw DomainError("simulate: give at least one --x0");
    McConfig mc = cfg.mc;
    if (cfg.sampler == "euler") {
        mc.sampler = Sampler::Euler;
    } else if (cfg.sampler != "exact") {
        throw DomainError("--sampler must be exact or euler");
    }
    mc.threads = cfg.threads;
    const ValueFunction v = assemble(p.params, r, p.reward, cfg.tol);
    const double shift = cfg.shift;
    const Region region = v.stopping_region().map([shift](double x) { return x + shift; });
    json points = json::array();
    for (double x0 : cfg.x0) {
        const McEstimate e = estimate_value(x0, region, p.params, r, p.reward, mc);
        const double exact = v.value(x0);
        json pt = to_json(e);
        pt["x0"] = x0;
        pt["analytic_value"] = exact;
        pt["z_score"] = e.std_error > 0.0 ? json((e.mean - exact) / e.std_error) : json(nullptr);
        points.push_back(pt);
    }
    if (cfg.dump_paths > 0) {
        if (cfg.dump_file.empty()) throw DomainError("--dump-paths needs --dump-file");
        std::ofstream f(cfg.dump_file);
        if (!f) throw DomainError("cannot open '" + cfg.dump_file + "'");
        dump_paths(f, cfg.x0.front(), region, p.params, r, mc, cfg.dump_paths);
    }
    json rep{{"command", "simulate"},
             {"problem", problem_json(p, r.value())},
             {"region", to_json(region)},
             {"shift", shift},
             {"config",
              {{"n_paths", mc.n_paths},
               {"dt", mc.dt},
               {"horizon", mc.horizon > 0.0 ? mc.horizon : 50.0 / r.value()},
               {"seed", mc.seed},
               {"sampler", cfg.sampler},
               {"adaptive", mc.adaptive}}},
             {"points", points}};
    Sink sink(cfg, "simulate", "json", out);
    sink.stream() << rep.dump(2) << '\n';
    return kOk;
}

int cmd_verify(const JobConfig& cfg, std::ostream& out) {
    const Problem p = resolve_problem(cfg);
    const Discount r = require_r(cfg);
    auto fp = std::make_shared<FundamentalPair>(p.params, r);
    json extra = nullptr;
    std::optional<ValueFunction> v;
    if (cfg.candidate == "value") {
        v = assemble(p.params, r, p.reward, cfg.tol);
    } else if (cfg.candidate == "zero-fit") {
        if (p.reward.kind() != Reward::Kind::QuadraticPlus) throw DomainError("zero-fit candidate needs the quad reward");
        v = zero_fit_function(p.params, r);
        extra = to_json(zero_fit_candidate(p.params, r));
    } else if (cfg.candidate == "stop") {
        v = stop_everywhere(fp, p.reward);
    } else if (cfg.candidate == "threshold") {
        if (!cfg.threshold) throw DomainError("threshold candidate needs --c");
        v = threshold_candidate(fp, p.reward, *cfg.threshold);
    } else {
        throw DomainError("--candidate must be value, zero-fit, stop or threshold");
    }
    const VerificationSummary s = verify(*v);
    json rep{{"command", "verify"},
             {"problem", problem_json(p, r.value())},
             {"candidate", cfg.candidate},
             {"stopping_region", to_json(v->stopping_region())},
             {"verification", to_json(s)},
             {"verified", s.passed}};
    if (!extra.is_null()) rep["zero_fit"] = extra;
    Sink sink(cfg, "verify", "json", out);
    sink.stream() << rep.dump(2) << '\n';
    return s.passed ? kOk : kVerificationFailed;
}

int cmd_figure(const JobConfig& cfg, std::ostream& out) {
    if (cfg.points < 2) throw DomainError("--points must be at least 2");
    Sink sink(cfg, cfg.figure, "csv", out);
    auto& os = sink.stream();
    if (cfg.figure == "fig1") {
        const double r = cfg.r.value_or(1.5);
        const ObmParams params(cfg.sigma1.value_or(1.0), cfg.sigma2.value_or(2.0));
        write_csv_row(os, {"x", "drift"});
        auto emit = [&](double x, Side side) {
            const double d = r * (1.0 + x) * (1.0 + x) - params.variance(x, side);
            write_csv_row(os, {format_double(x), format_double(d)});
        };
        for (std::size_t i = 0; i < cfg.points; ++i) {
            const double x = -2.0 + 4.0 * static_cast<double>(i) / static_cast<double>(cfg.points - 1);
            if (x == 0.0) {
                emit(0.0, Side::Left);
                emit(0.0, Side::Right);
            } else {
                emit(x, Side::Right);
            }
        }
        return kOk;
    }
    if (cfg.figure == "fig3") {
        const SkewParams beta(cfg.beta.value_or(0.75));
        const Reward g = Reward::skew_linear(beta);
        const double lo = 1.5 * g.support_start(), hi = 2.0;
        write_csv_row(os, {"x", "g"});
        std::vector<double> xs;
        for (std::size_t i = 0; i < cfg.points; ++i) xs.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(cfg.points - 1));
        xs.push_back(0.0);
        xs.push_back(g.support_start());
        std::sort(xs.begin(), xs.end());
        xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
        for (double x : xs) write_csv_row(os, {format_double(x), format_double(g.value(x))});
        return kOk;
    }
    throw DomainError("unknown figure id '" + cfg.figure + "' (expected fig1 or fig3)");
}

void add_problem_options(CLI::App& app, JobConfig& cfg) {
    app.add_option("--sigma1", cfg.sigma1, "volatility on x < 0");
    app.add_option("--sigma2", cfg.sigma2, "volatility on x >= 0");
    app.add_option("--r", cfg.r, "discount rate");
    app.add_option("--beta", cfg.beta, "skew BM index; without sigmas selects the skew BM problem");
    app.add_option("--reward", cfg.reward, "linear, quad, linear-skew or quad-skew")->capture_default_str();
    app.add_option("-o,--output", cfg.output, "output file ('-' for stdout)");
    app.add_option("--format", cfg.format, "csv or json");
    app.add_option("--threads", cfg.threads, "worker threads (0: all cores)");
    app.add_option("--root-tol", cfg.tol.root, "absolute root tolerance")->capture_default_str();
    app.add_option("--residual-tol", cfg.tol.residual, "smooth-fit residual tolerance")->capture_default_str();
    app.add_option("--r0-tol", cfg.tol.r0, "tolerance of the critical rate search")->capture_default_str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Optimal stopping of oscillating Brownian motion"};
    app.name("obmstop");
    app.set_config("--config", "", "key = value configuration file");
    app.require_subcommand(1);
    app.fallthrough();
    JobConfig cfg;
    add_problem_options(app, cfg);

    auto* solve = app.add_subcommand("solve", "solve and verify one problem (JSON report)");
    auto* classify = app.add_subcommand("classify", "regime of one problem");
    auto* sweep = app.add_subcommand("sweep", "regimes and boundaries over a range of r");
    sweep->add_option("--r-min", cfg.r_min)->required();
    sweep->add_option("--r-max", cfg.r_max)->required();
    sweep->add_option("--count", cfg.count, "number of equally spaced rates");
    sweep->add_option("--r-step", cfg.r_step, "spacing of rates");
    auto* bubble = app.add_subcommand("bubble", "bubble boundaries and the critical rate");
    bubble->add_flag("--find-r0", cfg.find_r0, "locate the critical rate");
    auto* oracle = app.add_subcommand("oracle", "Markov chain approximation on a grid");
    oracle->add_option("--xmin", cfg.xmin);
    oracle->add_option("--xmax", cfg.xmax);
    oracle->add_option("--n", cfg.grid_n, "minimum number of grid cells")->capture_default_str();
    oracle->add_option("--method", cfg.grid_method, "policy or value")->capture_default_str();
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo value of the solver's stopping rule");
    simulate->add_option("--x0", cfg.x0, "starting points")->required();
    simulate->add_option("--paths", cfg.mc.n_paths)->capture_default_str();
    simulate->add_option("--dt", cfg.mc.dt)->capture_default_str();
    simulate->add_option("--horizon", cfg.mc.horizon, "0 means 50/r")->capture_default_str();
    simulate->add_option("--seed", cfg.mc.seed)->capture_default_str();
    simulate->add_option("--sampler", cfg.sampler, "exact or euler")->capture_default_str();
    simulate->add_option("--shift", cfg.shift, "shift all region boundaries")->capture_default_str();
    simulate->add_option("--max-step", cfg.mc.max_step)->capture_default_str();
    simulate->add_flag("!--fixed-step", cfg.mc.adaptive, "always step by dt");
    simulate->add_option("--dump-paths", cfg.dump_paths, "number of paths to write");
    simulate->add_option("--dump-file", cfg.dump_file, "CSV file for --dump-paths");
    auto* verify_cmd = app.add_subcommand("verify", "verification checks for a candidate");
    verify_cmd->add_option("--candidate", cfg.candidate, "value, zero-fit, stop or threshold")->capture_default_str();
    verify_cmd->add_option("--c", cfg.threshold, "threshold for --candidate threshold");
    auto* figure = app.add_subcommand("figure", "plot data");
    figure->add_option("--id", cfg.figure, "fig1 or fig3")->required();
    figure->add_option("--points", cfg.points)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (solve->parsed()) return cmd_solve(cfg, out);
        if (classify->parsed()) return cmd_classify(cfg, out);
        if (sweep->parsed()) return cmd_sweep(cfg, out);
        if (bubble->parsed()) return cmd_bubble(cfg, out);
        if (oracle->parsed()) return cmd_oracle(cfg, out);
        if (simulate->parsed()) return cmd_simulate(cfg, out);
        if (verify_cmd->parsed()) return cmd_verify(cfg, out);
        if (figure->parsed()) return cmd_figure(cfg, out);
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << '\n';
        return kNoConvergence;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const StateError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace obmstop::cli
