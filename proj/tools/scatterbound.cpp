// Command-line surface: exact values, numeric solutions, rigorous bounds, greybody
// tables, parameter sweeps and reference-comparison brackets, as CSV or JSONL.

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "scatterbound/bounds.hpp"
#include "scatterbound/comparison.hpp"
#include "scatterbound/exact.hpp"
#include "scatterbound/greybody.hpp"
#include "scatterbound/millergood.hpp"
#include "scatterbound/potential_io.hpp"
#include "scatterbound/solver.hpp"

namespace sb = scatterbound;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitUnsupported = 2;
constexpr int kExitNumerical = 3;

struct Grid {
    double lo = 1.0, hi = 1.0;
    int n = 1;
    bool log = false;

    double at(int i) const {
        if (n == 1) return lo;
        if (log) {
            const double s = static_cast<double>(i) / (n - 1);
            return lo * std::pow(hi / lo, s);
        }
        return lo + (hi - lo) * i / (n - 1);
    }
};

Grid parse_grid(const std::string& s) {
    Grid g;
    std::vector<std::string> parts;
    std::istringstream is(s);
    std::string item;
    while (std::getline(is, item, ':')) parts.push_back(item);
    if (parts.size() < 3) throw CLI::ValidationError("grid", "expected lo:hi:n[:log]");
    g.lo = std::stod(parts[0]);
    g.hi = std::stod(parts[1]);
    g.n = std::stoi(parts[2]);
    g.log = parts.size() > 3 && parts[3] == "log";
    if (g.n < 1) throw CLI::ValidationError("grid", "n must be >= 1");
    if (g.n > 1 && !(g.lo < g.hi)) throw CLI::ValidationError("grid", "need lo < hi for n > 1");
    return g;
}

// Cell values are printed with 17 significant digits for lossless round-trips.
std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void emit(std::ostream& os, const std::string& format) const {
        if (format == "jsonl") {
            for (const auto& row : rows) {
                nlohmann::json j;
                for (std::size_t i = 0; i < header.size(); ++i) j[header[i]] = row[i];
                os << j.dump() << "\n";
            }
            return;
        }
        for (std::size_t i = 0; i < header.size(); ++i)
            os << header[i] << (i + 1 < header.size() ? "," : "\n");
        for (const auto& row : rows)
            for (std::size_t i = 0; i < row.size(); ++i)
                os << row[i] << (i + 1 < row.size() ? "," : "\n");
    }
};

int thread_budget() {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("SCATTERBOUND_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1 && static_cast<unsigned>(cap) < n) n = static_cast<unsigned>(cap);
    }
    return static_cast<int>(n);
}

// Computes row groups for indices [0, n) in parallel, assembled in input order.
template <class Fn>
std::vector<std::vector<std::vector<std::string>>> parallel_rows(int n, Fn&& fn) {
    std::vector<std::vector<std::vector<std::string>>> out(n);
    const int workers = std::min(thread_budget(), n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex err_mtx;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    out[i] = fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(err_mtx);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
    return out;
}

std::ostream& open_output(const std::string& path, std::ofstream& file) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw std::runtime_error("cannot open output file: " + path);
    return file;
}

sb::AuxiliaryChoice default_aux(const sb::Dispersion& d) {
    // MaxClamp is admissible for any spectrum, over or under the barrier
    const double k0 = 0.99 * std::min(d.k_minus_inf, d.k_plus_inf);
    return sb::MaxClampAux{k0};
}

const std::vector<std::string> kAllBoundIds = {
    "general",      "case1",         "case2",    "case2a",     "case2b",
    "case2c",       "case3",         "case4",    "wkb-estimate", "born-estimate",
    "mg-form1",     "mg-form2",      "mg-form3", "schwarzian", "low-energy",
    "wkb-like",     "delta-param"};

sb::BoundResult eval_bound(const std::string& id, const sb::Dispersion& d) {
    using sb::BoundResult;
    if (id == "general") return sb::general_bound(d, default_aux(d)).lower_t;
    if (id == "case1") return sb::bound_case1(d);
    if (id == "case2") return sb::bound_case2(d);
    if (id == "case2a") return sb::bound_case2a(d);
    if (id == "case2b") return sb::bound_case2b(d);
    if (id == "case2c") return sb::bound_case2c(d);
    if (id == "case3") return sb::bound_case3_optimized(d);
    if (id == "case4") return sb::bound_case4_optimized(d);
    if (id == "wkb-estimate") return sb::wkb_estimate(d);
    if (id == "born-estimate") {
        const auto beta = sb::born_beta_estimate(d);
        BoundResult r;
        r.kind = sb::BoundKind::UpperAbsBeta;
        r.bound_id = "born-estimate";
        r.value = std::abs(beta);
        r.valid = true;
        r.reason = "estimate, not a bound";
        return r;
    }
    if (id == "mg-form1") return sb::improved_bound_form1(d, {});
    if (id == "mg-form2") return sb::improved_bound_form2(d, {});
    if (id == "mg-form3") return sb::improved_bound(d, {});
    if (id == "schwarzian") return sb::schwarzian_bound(d);
    if (id == "low-energy") return sb::low_energy_bound(d);
    if (id == "wkb-like") return sb::wkb_like_bound(d);
    if (id == "delta-param") return sb::delta_param_bound_optimized(d);
    throw sb::UnsupportedFamily("unknown bound id '" + id + "'");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"one-dimensional scattering: exact results, numeric solutions and "
                 "rigorous transmission bounds"};
    app.require_subcommand(1);

    std::string potential_arg, energy_arg = "1:1:1", bounds_arg = "all";
    std::string format = "csv", out_path;
    double tol = 1e-10;

    auto add_common = [&](CLI::App* cmd, bool needs_potential) {
        if (needs_potential)
            cmd->add_option("--potential", potential_arg,
                            "potential document path or inline kind:key=val,...")
                ->required();
        cmd->add_option("--energy", energy_arg, "energy grid lo:hi:n[:log]");
        cmd->add_option("--format", format, "csv|jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
        cmd->add_option("--out", out_path, "output path (default stdout)");
        cmd->add_option("--tol", tol, "solver relative tolerance");
    };

    auto* cmd_exact = app.add_subcommand("exact", "closed-form transmission/reflection");
    add_common(cmd_exact, true);

    auto* cmd_solve = app.add_subcommand("solve", "numeric scattering solution");
    add_common(cmd_solve, true);

    auto* cmd_bound = app.add_subcommand("bound", "rigorous bounds and estimators");
    add_common(cmd_bound, true);
    cmd_bound->add_option("--bounds", bounds_arg, "comma-separated bound ids or 'all'");

    auto* cmd_greybody = app.add_subcommand("greybody", "Schwarzschild greybody factors");
    double gb_mass = 1.0, gb_omega = 1.0;
    int gb_spin = 0, gb_ell = 0;
    std::string gb_sweep;
    cmd_greybody->add_option("--mass", gb_mass, "black-hole mass (geometric units)");
    cmd_greybody->add_option("--spin", gb_spin, "field spin 0|1|2");
    cmd_greybody->add_option("--ell", gb_ell, "mode angular momentum");
    cmd_greybody->add_option("--omega", gb_omega, "frequency");
    cmd_greybody->add_option("--sweep", gb_sweep, "omega sweep lo:hi:n[:log]");
    cmd_greybody->add_option("--format", format, "csv|jsonl")
        ->check(CLI::IsMember({"csv", "jsonl"}));
    cmd_greybody->add_option("--out", out_path, "output path");
    cmd_greybody->add_option("--tol", tol, "solver relative tolerance");

    auto* cmd_compare = app.add_subcommand("compare", "reference-comparison brackets");
    std::string reference_arg;
    add_common(cmd_compare, true);
    cmd_compare->add_option("--reference", reference_arg,
                            "reference potential (free/step/square_barrier/delta)")
        ->required();

    auto* cmd_sweep = app.add_subcommand("sweep", "2-D parameter x energy sweep");
    add_common(cmd_sweep, true);
    std::string sweep_param, sweep_grid;
    cmd_sweep->add_option("--param", sweep_param, "potential parameter to sweep")->required();
    cmd_sweep->add_option("--range", sweep_grid, "parameter grid lo:hi:n[:log]")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    std::ofstream file;
    try {
        std::ostream& os = open_output(out_path, file);
        sb::SolverConfig scfg;
        scfg.rel_tol = tol;
        scfg.abs_tol = std::min(1e-12, tol);

        if (cmd_exact->parsed()) {
            const auto p = sb::load_potential(potential_arg);
            const Grid grid = parse_grid(energy_arg);
            Table t;
            t.header = {"E", "T_exact", "R_exact"};
            for (int i = 0; i < grid.n; ++i) {
                const double E = grid.at(i);
                const double T = sb::exact_transmission(p, E);
                t.rows.push_back({fmt(E), fmt(T), fmt(1.0 - T)});
            }
            t.emit(os, format);
            return 0;
        }

        if (cmd_solve->parsed()) {
            const auto p = sb::load_potential(potential_arg);
            const Grid grid = parse_grid(energy_arg);
            Table t;
            t.header = {"E", "T", "R", "abs_alpha", "abs_beta", "errEstimate"};
            std::atomic<bool> stiff{false};
            auto rows = parallel_rows(grid.n, [&](int i) {
                const double E = grid.at(i);
                const auto d = sb::build_dispersion(p, E);
                try {
                    const auto r = sb::solve_scattering(d, scfg);
                    return std::vector<std::vector<std::string>>{
                        {fmt(E), fmt(r.T), fmt(r.R), fmt(std::abs(r.alpha)),
                         fmt(std::abs(r.beta)), fmt(r.err_estimate)}};
                } catch (const sb::StiffFailure&) {
                    // flush the grid point as a flagged row, fail the run at the end
                    stiff = true;
                    return std::vector<std::vector<std::string>>{
                        {fmt(E), "nan", "nan", "nan", "nan", "inf"}};
                }
            });
            for (auto& rr : rows)
                for (auto& row : rr) t.rows.push_back(std::move(row));
            t.emit(os, format);
            if (stiff) {
                std::cerr << "numerical failure: integrator exceeded its step budget on "
                             "flagged rows\n";
                return kExitNumerical;
            }
            return 0;
        }

        if (cmd_bound->parsed()) {
            const auto p = sb::load_potential(potential_arg);
            const Grid grid = parse_grid(energy_arg);
            std::vector<std::string> ids;
            if (bounds_arg == "all") {
                ids = kAllBoundIds;
            } else {
                std::istringstream is(bounds_arg);
                std::string id;
                while (std::getline(is, id, ',')) {
                    if (std::find(kAllBoundIds.begin(), kAllBoundIds.end(), id) ==
                        kAllBoundIds.end())
                        throw sb::UnsupportedFamily("unknown bound id '" + id + "'");
                    ids.push_back(id);
                }
            }
            std::sort(ids.begin(), ids.end());
            Table t;
            t.header = {"E", "boundId", "value", "valid", "quadErr"};
            auto rows = parallel_rows(grid.n, [&](int i) {
                const double E = grid.at(i);
                const auto d = sb::build_dispersion(p, E);
                std::vector<std::vector<std::string>> out;
                for (const auto& id : ids) {
                    try {
                        const auto b = eval_bound(id, d);
                        out.push_back({fmt(E), id, fmt(b.value), b.valid ? "true" : "false",
                                       fmt(b.quad_err)});
                    } catch (const std::invalid_argument&) {
                        // precondition not met at this potential/energy: invalid row
                        out.push_back({fmt(E), id, fmt(0.0), "false", fmt(0.0)});
                    } catch (const std::domain_error&) {
                        out.push_back({fmt(E), id, fmt(0.0), "false", fmt(0.0)});
                    }
                }
                return out;
            });
            for (auto& rr : rows)
                for (auto& row : rr) t.rows.push_back(std::move(row));
            t.emit(os, format);
            return 0;
        }

        if (cmd_greybody->parsed()) {
            Grid grid;
            if (!gb_sweep.empty()) {
                grid = parse_grid(gb_sweep);
            } else {
                grid.lo = grid.hi = gb_omega;
                grid.n = 1;
            }
            Table t;
            t.header = {"omega", "bound1", "bound2", "T_numeric"};
            auto rows = parallel_rows(grid.n, [&](int i) {
                sb::GreybodyQuery q{gb_mass, gb_spin, gb_ell, grid.at(i)};
                const auto b1 = sb::greybody_bound_1(q);
                const auto b2 = sb::greybody_bound_2(q);
                const auto r = sb::greybody_numeric(q, scfg);
                return std::vector<std::vector<std::string>>{
                    {fmt(q.omega), fmt(b1.value), fmt(b2.valid ? b2.value : 0.0), fmt(r.T)}};
            });
            for (auto& rr : rows)
                for (auto& row : rr) t.rows.push_back(std::move(row));
            t.emit(os, format);
            return 0;
        }

        if (cmd_compare->parsed()) {
            const auto target = sb::load_potential(potential_arg);
            const auto refspec = sb::load_potential(reference_arg);
            const Grid grid = parse_grid(energy_arg);
            Table t;
            t.header = {"E", "lowerT", "upperT", "upper_valid", "T_numeric"};
            auto rows = parallel_rows(grid.n, [&](int i) {
                const double E = grid.at(i);
                const auto ref = sb::make_reference(refspec, E);
                const auto d = sb::build_dispersion(target, E);
                const auto budget = sb::theta_bound(ref, d);
                const auto [lo, hi] = sb::bracket_transmission(ref, budget);
                const auto r = sb::solve_scattering(d, scfg);
                return std::vector<std::vector<std::string>>{
                    {fmt(E), fmt(lo.value), fmt(hi.value), hi.valid ? "true" : "false",
                     fmt(r.T)}};
            });
            for (auto& rr : rows)
                for (auto& row : rr) t.rows.push_back(std::move(row));
            t.emit(os, format);
            return 0;
        }

        if (cmd_sweep->parsed()) {
            const Grid pgrid = parse_grid(sweep_grid);
            const Grid egrid = parse_grid(energy_arg);
            Table t;
            t.header = {"param", "E", "T", "R"};
            const int total = pgrid.n * egrid.n;
            auto rows = parallel_rows(total, [&](int idx) {
                const int ip = idx / egrid.n;
                const int ie = idx % egrid.n;
                const double pv = pgrid.at(ip);
                // swept parameter overrides the base description (last assignment
                // wins in both document and inline form)
                sb::PotentialSpec p;
                std::ifstream doc(potential_arg);
                if (doc.good()) {
                    std::ostringstream ss;
                    ss << doc.rdbuf();
                    ss << "\n" << sweep_param << " = " << fmt(pv) << "\n";
                    p = sb::parse_potential_document(ss.str());
                } else {
                    p = sb::parse_potential_inline(potential_arg + "," + sweep_param + "=" +
                                                   fmt(pv));
                }
                const double E = egrid.at(ie);
                const auto d = sb::build_dispersion(p, E);
                const auto r = sb::solve_scattering(d, scfg);
                return std::vector<std::vector<std::string>>{
                    {fmt(pv), fmt(E), fmt(r.T), fmt(r.R)}};
            });
            for (auto& rr : rows)
                for (auto& row : rr) t.rows.push_back(std::move(row));
            t.emit(os, format);
            return 0;
        }
    } catch (const sb::UnsupportedFamily& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return kExitUnsupported;
    } catch (const sb::BelowAsymptote& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return kExitUnsupported;
    } catch (const sb::StiffFailure& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const sb::QuadratureFailure& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return 0;
}
