#include "grushin/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "grushin/analysis.hpp"
#include "grushin/assemble.hpp"
#include "grushin/config.hpp"
#include "grushin/eigenpair.hpp"
#include "grushin/errors.hpp"
#include "grushin/field_io.hpp"
#include "grushin/functional.hpp"
#include "grushin/norms.hpp"
#include "grushin/solvers.hpp"
#include "grushin/vecops.hpp"

namespace grushin {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string timestamp_utc() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct ReportRow {
    double k = 0, p = 0;
    int grid = 0;
    double level = 0, grad_norm = 0;
    double pohozaev_lhs = 0, pohozaev_rhs = 0, rel_residual = 0;
    std::string verdict;
};

constexpr const char* kRowHeader =
    "k,p,grid,level,grad_norm,pohozaev_lhs,pohozaev_rhs,rel_residual,verdict";

std::string row_csv(const ReportRow& r) {
    std::ostringstream os;
    os << fmt17(r.k) << ',' << fmt17(r.p) << ',' << r.grid << ','
       << fmt17(r.level) << ',' << fmt17(r.grad_norm) << ','
       << fmt17(r.pohozaev_lhs) << ',' << fmt17(r.pohozaev_rhs) << ','
       << fmt17(r.rel_residual) << ',' << r.verdict;
    return os.str();
}

json row_json(const ReportRow& r) {
    return {{"k", r.k}, {"p", r.p}, {"grid", r.grid}, {"level", r.level},
            {"grad_norm", r.grad_norm}, {"pohozaev_lhs", r.pohozaev_lhs},
            {"pohozaev_rhs", r.pohozaev_rhs}, {"rel_residual", r.rel_residual},
            {"verdict", r.verdict}};
}

void write_text(const fs::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ConfigError("cli: cannot write " + path.string());
    out << body;
}

void write_rows(const RunConfig& cfg, const std::string& stem,
                const std::vector<ReportRow>& rows) {
    if (cfg.format == OutputFormat::Csv) {
        std::ostringstream os;
        os << "# generated " << timestamp_utc() << "\n" << kRowHeader << "\n";
        for (const auto& r : rows) os << row_csv(r) << "\n";
        write_text(fs::path(cfg.out_dir) / (stem + ".csv"), os.str());
    } else {
        json doc;
        doc["generated"] = timestamp_utc();
        doc["rows"] = json::array();
        for (const auto& r : rows) doc["rows"].push_back(row_json(r));
        write_text(fs::path(cfg.out_dir) / (stem + ".json"), doc.dump(2) + "\n");
    }
}

void require_out_dir(const RunConfig& cfg) {
    if (cfg.out_dir.empty())
        throw ConfigError("cli: missing out_dir (set it in the config or pass --out)");
    fs::create_directories(cfg.out_dir);
}

int default_boundary_samples(int nx) { return std::max(256, 4 * (nx - 1)); }

ReportRow solve_row(const RunConfig& cfg, const SolveReport& rep, int nx,
                    double pohozaev_lhs, double pohozaev_rhs, double rel_res) {
    ReportRow row;
    row.k = cfg.k;
    row.p = cfg.nonlinearity.is_pure_power() ? cfg.nonlinearity.p : 0.0;
    row.grid = nx;
    row.level = rep.level;
    row.grad_norm = rep.grad_norm;
    row.pohozaev_lhs = pohozaev_lhs;
    row.pohozaev_rhs = pohozaev_rhs;
    row.rel_residual = rel_res;
    row.verdict = rep.supercritical ? "supercritical" : "subcritical";
    return row;
}

int cmd_solve(const RunConfig& cfg, bool force_mpa) {
    require_out_dir(cfg);
    Grid grid = build_grid(cfg.domain, cfg.nx, cfg.ny);
    SparseOperator A = assemble_grushin(grid, cfg.k);

    SolveReport rep;
    if (!force_mpa && cfg.nonlinearity.is_pure_power()) {
        rep = nehari_minimize(A, cfg.nonlinearity, grid, cfg.seed, cfg.solver,
                              cfg.linear);
    } else {
        ScalarField u1 = make_mountain_endpoint(grid, A, cfg.nonlinearity);
        rep = mpa_solve(A, cfg.nonlinearity, grid, u1, cfg.solver, cfg.linear);
    }

    double lhs = 0, rhs = 0, rel = 0;
    if (cfg.nonlinearity.is_pure_power()) {
        auto samples = boundary_quadrature(cfg.domain, default_boundary_samples(cfg.nx));
        PohozaevReport pr = pohozaev_evaluate(rep.u_star, cfg.domain, cfg.k,
                                              cfg.nonlinearity.p, samples);
        lhs = pr.lhs; rhs = pr.rhs; rel = pr.rel_residual;
        rep.pohozaev_residual = rel;
        rep.has_pohozaev = true;
    }

    dump_field(rep.u_star, cfg.k, (fs::path(cfg.out_dir) / "solution.field").string());
    write_rows(cfg, "report", {solve_row(cfg, rep, cfg.nx, lhs, rhs, rel)});
    std::cout << "solve: method=" << to_string(rep.method)
              << " level=" << fmt17(rep.level)
              << " grad_norm=" << fmt17(rep.grad_norm)
              << " iterations=" << rep.iterations << "\n";
    return 0;
}

int cmd_pohozaev(const RunConfig& cfg) {
    require_out_dir(cfg);
    if (!cfg.field_path)
        throw ConfigError("pohozaev: config needs a \"field\" path");
    if (!cfg.nonlinearity.is_pure_power())
        throw ConfigError("pohozaev: identity is stated for the pure-power model");
    LoadedField lf = load_field(*cfg.field_path);
    ScalarField u(lf.grid, lf.values);
    auto samples = boundary_quadrature(lf.grid.domain,
                                       default_boundary_samples(lf.grid.nx));
    PohozaevReport pr = pohozaev_evaluate(u, lf.grid.domain, lf.k,
                                          cfg.nonlinearity.p, samples);
    ReportRow row;
    row.k = lf.k;
    row.p = cfg.nonlinearity.p;
    row.grid = lf.grid.nx;
    row.pohozaev_lhs = pr.lhs;
    row.pohozaev_rhs = pr.rhs;
    row.rel_residual = pr.rel_residual;
    row.verdict = pr.boundary_min_factor >= -1e-12 ? "starshaped" : "not-starshaped";
    write_rows(cfg, "pohozaev", {row});
    std::cout << "pohozaev: lhs=" << fmt17(pr.lhs) << " rhs=" << fmt17(pr.rhs)
              << " rel_residual=" << fmt17(pr.rel_residual) << "\n";
    return 0;
}

int cmd_eigen(const RunConfig& cfg) {
    require_out_dir(cfg);
    Grid grid = build_grid(cfg.domain, cfg.nx, cfg.ny);
    SparseOperator A = assemble_grushin(grid, cfg.k);
    EigenResult res = smallest_eigenvalue(A, grid, cfg.linear);

    if (cfg.format == OutputFormat::Csv) {
        std::ostringstream os;
        os << "# generated " << timestamp_utc() << "\n"
           << "k,grid,lambda_min,iterations,residual\n"
           << fmt17(cfg.k) << ',' << cfg.nx << ',' << fmt17(res.lambda_min) << ','
           << res.iterations << ',' << fmt17(res.residual) << "\n";
        write_text(fs::path(cfg.out_dir) / "eigen.csv", os.str());
    } else {
        json doc = {{"generated", timestamp_utc()}, {"k", cfg.k}, {"grid", cfg.nx},
                    {"lambda_min", res.lambda_min}, {"iterations", res.iterations},
                    {"residual", res.residual}};
        write_text(fs::path(cfg.out_dir) / "eigen.json", doc.dump(2) + "\n");
    }
    std::cout << "eigen: lambda_min=" << fmt17(res.lambda_min) << "\n";
    return 0;
}

int cmd_embed(const RunConfig& cfg) {
    require_out_dir(cfg);
    if (!cfg.q)
        throw ConfigError("embed: config needs \"q\"");
    Grid grid = build_grid(cfg.domain, cfg.nx, cfg.ny);
    SparseOperator A = assemble_grushin(grid, cfg.k);
    EmbeddingReport rep = embedding_constant(A, grid, cfg.k, *cfg.q, cfg.seed, 400);

    if (cfg.format == OutputFormat::Csv) {
        std::ostringstream os;
        os << "# generated " << timestamp_utc() << "\n"
           << "k,q,grid,C_q,iterations\n"
           << fmt17(cfg.k) << ',' << fmt17(*cfg.q) << ',' << cfg.nx << ','
           << fmt17(rep.C_q_estimate) << ',' << rep.iterations << "\n";
        write_text(fs::path(cfg.out_dir) / "embed.csv", os.str());
    } else {
        json doc = {{"generated", timestamp_utc()}, {"k", cfg.k}, {"q", *cfg.q},
                    {"grid", cfg.nx}, {"C_q", rep.C_q_estimate},
                    {"iterations", rep.iterations}};
        write_text(fs::path(cfg.out_dir) / "embed.json", doc.dump(2) + "\n");
    }
    std::cout << "embed: C_q=" << fmt17(rep.C_q_estimate) << "\n";
    return 0;
}

int cmd_sweep(const RunConfig& cfg) {
    require_out_dir(cfg);
    if (!cfg.nonlinearity.is_pure_power())
        throw ConfigError("sweep: only the pure-power model is sweepable");
    std::vector<double> ks = cfg.k_list.empty() ? std::vector<double>{cfg.k} : cfg.k_list;
    std::vector<double> ps = cfg.p_list.empty() ? std::vector<double>{cfg.nonlinearity.p}
                                                : cfg.p_list;
    std::vector<int> ns = cfg.grids.empty() ? std::vector<int>{cfg.nx} : cfg.grids;

    struct Point { double k, p; int n; };
    std::vector<Point> points;
    for (double kk : ks)
        for (double pp : ps)
            for (int nn : ns) points.push_back({kk, pp, nn});
    std::vector<ReportRow> rows(points.size());
    std::vector<std::string> errors(points.size());

    int threads = 1;
    if (const char* env = std::getenv("GRUSHIN_THREADS")) threads = std::atoi(env);
    threads = std::clamp<int>(threads <= 0 ? 1 : threads, 1,
                              std::max(1u, std::thread::hardware_concurrency()));

    auto run_point = [&](std::size_t idx) {
        const Point& pt = points[idx];
        try {
            Nonlinearity nl = Nonlinearity::pure_power(pt.p, pt.k);
            Grid grid = build_grid(cfg.domain, pt.n, pt.n);
            SparseOperator A = assemble_grushin(grid, pt.k);
            SolveReport rep = nehari_minimize(A, nl, grid, cfg.seed, cfg.solver,
                                              cfg.linear);
            auto samples = boundary_quadrature(cfg.domain, default_boundary_samples(pt.n));
            PohozaevReport pr = pohozaev_evaluate(rep.u_star, cfg.domain, pt.k, pt.p,
                                                  samples);
            ReportRow row;
            row.k = pt.k; row.p = pt.p; row.grid = pt.n;
            row.level = rep.level;
            row.grad_norm = rep.grad_norm;
            row.pohozaev_lhs = pr.lhs;
            row.pohozaev_rhs = pr.rhs;
            row.rel_residual = pr.rel_residual;
            row.verdict = rep.supercritical ? "supercritical" : "subcritical";
            rows[idx] = row;
        } catch (const std::exception& e) {
            errors[idx] = e.what();
        }
    };

    if (threads == 1) {
        for (std::size_t i = 0; i < points.size(); ++i) run_point(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < points.size(); i = next++)
                    run_point(i);
            });
        for (auto& th : pool) th.join();
    }
    for (std::size_t i = 0; i < points.size(); ++i)
        if (!errors[i].empty())
            throw SolverError("sweep point (k=" + std::to_string(points[i].k) +
                              ", p=" + std::to_string(points[i].p) + ", n=" +
                              std::to_string(points[i].n) + ") failed: " + errors[i]);

    // Deterministic order regardless of scheduling: sort by (k,p,grid).
    std::sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) {
        return std::tie(a.k, a.p, a.grid) < std::tie(b.k, b.p, b.grid);
    });
    {
        std::ostringstream os;
        os << "# generated " << timestamp_utc() << "\n" << kRowHeader << "\n";
        for (const auto& r : rows) os << row_csv(r) << "\n";
        write_text(fs::path(cfg.out_dir) / "sweep.csv", os.str());
    }
    if (cfg.format == OutputFormat::Json) {
        json doc;
        doc["generated"] = timestamp_utc();
        doc["rows"] = json::array();
        for (const auto& r : rows) doc["rows"].push_back(row_json(r));
        write_text(fs::path(cfg.out_dir) / "sweep.json", doc.dump(2) + "\n");
    }
    write_text(fs::path(cfg.out_dir) / "sweep.gp",
               "set datafile separator ','\n"
               "set key autotitle columnhead\n"
               "set logscale y\n"
               "set xlabel 'p'\n"
               "set ylabel 'level'\n"
               "plot 'sweep.csv' every ::1 using 2:4 with linespoints title 'level'\n");
    std::cout << "sweep: " << rows.size() << " points -> sweep.csv\n";
    return 0;
}

int cmd_check(const RunConfig& cfg) {
    require_out_dir(cfg);
    HypothesisReport rep = check_A1_A5(cfg.nonlinearity, cfg.domain, 1000, cfg.seed);

    // Monotonicity scan of xi -> f xi - 2F at a few off-axis points.
    std::vector<double> xi_grid;
    for (int m = 0; m <= 200; ++m) xi_grid.push_back(-100.0 + m);
    bool lemma_ok = true;
    double bx0, bx1, by0, by1;
    cfg.domain.bounding_box(bx0, bx1, by0, by1);
    for (double fx : {0.25, 0.5, 0.75}) {
        double x = bx0 + (bx1 - bx0) * fx, y = by0 + (by1 - by0) * fx;
        if (!cfg.domain.contains(x, y)) continue;
        lemma_ok = lemma_ok && check_lemma45_monotone(cfg.nonlinearity, x, y, xi_grid);
    }

    std::ostringstream csv;
    csv << "# generated " << timestamp_utc() << "\n" << "check,pass,detail\n";
    json jdoc;
    jdoc["generated"] = timestamp_utc();
    jdoc["seed"] = rep.seed;
    jdoc["caveats"] = rep.caveats;
    jdoc["checks"] = json::array();
    for (const auto& c : rep.checks) {
        std::string detail = c.detail;
        std::replace(detail.begin(), detail.end(), ',', ';');
        csv << c.name << ',' << (c.pass ? 1 : 0) << ',' << detail << "\n";
        jdoc["checks"].push_back({{"name", c.name}, {"pass", c.pass},
                                  {"detail", c.detail}});
        std::cout << "check " << c.name << ": " << (c.pass ? "pass" : "FAIL")
                  << (c.detail.empty() ? "" : "  (" + c.detail + ")") << "\n";
    }
    csv << "lemma45-monotone," << (lemma_ok ? 1 : 0) << ",fxi-2F scan\n";
    jdoc["checks"].push_back({{"name", "lemma45-monotone"}, {"pass", lemma_ok},
                              {"detail", "fxi-2F scan"}});
    std::cout << "check lemma45-monotone: " << (lemma_ok ? "pass" : "FAIL") << "\n";

    if (cfg.format == OutputFormat::Csv)
        write_text(fs::path(cfg.out_dir) / "check.csv", csv.str());
    else
        write_text(fs::path(cfg.out_dir) / "check.json", jdoc.dump(2) + "\n");
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args) {
    try {
        if (args.empty())
            throw ConfigError("usage: <solve|mpa|pohozaev|eigen|embed|sweep|check> "
                              "--config <path> [--out <dir>] [--format csv|json] "
                              "[--seed <u64>]");
        std::string cmd = args[0];
        std::string config_path, out_override, format_override, seed_override;
        for (std::size_t i = 1; i < args.size(); i += 2) {
            if (i + 1 >= args.size())
                throw ConfigError("cli: flag " + args[i] + " needs a value");
            const std::string& flag = args[i];
            const std::string& val = args[i + 1];
            if (flag == "--config") config_path = val;
            else if (flag == "--out") out_override = val;
            else if (flag == "--format") format_override = val;
            else if (flag == "--seed") seed_override = val;
            else throw ConfigError("cli: unknown flag " + flag);
        }
        if (config_path.empty())
            throw ConfigError("cli: --config <path> is required");

        RunConfig cfg = load_config(config_path);
        if (!out_override.empty()) cfg.out_dir = out_override;
        if (!format_override.empty()) {
            if (format_override == "csv") cfg.format = OutputFormat::Csv;
            else if (format_override == "json") cfg.format = OutputFormat::Json;
            else throw ConfigError("cli: --format must be csv or json");
        }
        if (!seed_override.empty()) cfg.seed = std::strtoull(seed_override.c_str(), nullptr, 10);

        if (cmd == "solve") return cmd_solve(cfg, false);
        if (cmd == "mpa") return cmd_solve(cfg, true);
        if (cmd == "pohozaev") return cmd_pohozaev(cfg);
        if (cmd == "eigen") return cmd_eigen(cfg);
        if (cmd == "embed") return cmd_embed(cfg);
        if (cmd == "sweep") return cmd_sweep(cfg);
        if (cmd == "check") return cmd_check(cfg);
        throw ConfigError("cli: unknown command \"" + cmd + "\"");
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const GridError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const SolverError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace grushin
