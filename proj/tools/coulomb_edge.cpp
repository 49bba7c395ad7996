// coulomb-edge: sampling and edge-fluctuation experiments for 2D radial
// Coulomb gases at beta = 2.
//
// Exit codes: 0 success, 2 validation failure, 3 numeric failure.

#include "coulomb/equilibrium.hpp"
#include "coulomb/errors.hpp"
#include "coulomb/experiment.hpp"

#include "CLI11.hpp"

#include <iostream>

namespace {

using namespace coulomb;

void print_csv(const CsvTable& t, std::ostream& os) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        if (i) os << ',';
        os << t.columns[i];
    }
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ',';
            os << format_real17(row[i]);
        }
        os << '\n';
    }
}

void deliver_csv(const CsvTable& t, const std::string& path) {
    if (path.empty())
        print_csv(t, std::cout);
    else
        emit_csv(t, path);
}

void deliver_json(const nlohmann::ordered_json& j, const std::string& path) {
    if (path.empty())
        std::cout << j.dump(2) << '\n';
    else
        emit_json(j, path);
}

int run(int argc, char** argv) {
    CLI::App app{"Exact moduli sampler and edge statistics for 2D determinantal "
                 "Coulomb gases with radial potentials (beta = 2)"};
    app.require_subcommand(1);

    std::string potential = "power:alpha=2";
    std::uint64_t n = 1000;
    std::uint64_t replicas = 100;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::string out, report;

    auto add_common = [&](CLI::App* cmd, bool with_replicas) {
        cmd->add_option("--potential", potential,
                        "power:alpha=A | logconfining:c=C | quartic | hardwall | "
                        "custom:poly=CxP+...[;log=D]");
        cmd->add_option("--n", n, "number of particles");
        if (with_replicas) cmd->add_option("--replicas", replicas, "number of replicas");
        cmd->add_option("--seed", seed, "master seed");
        cmd->add_option("--threads", threads,
                        "worker threads (default: COULOMB_EDGE_THREADS or hardware)");
        cmd->add_option("--out", out, "CSV output path (default: stdout)");
        cmd->add_option("--report", report, "JSON report path");
    };

    CLI::App* cmd_sample = app.add_subcommand("sample", "draw replica gases as CSV");
    add_common(cmd_sample, true);

    CLI::App* cmd_equilibrium =
        app.add_subcommand("equilibrium", "equilibrium radial density/CDF on a grid");
    double beta = 2.0;
    std::size_t points = 201;
    add_common(cmd_equilibrium, false);
    cmd_equilibrium->add_option("--beta", beta, "inverse temperature (profile only)");
    cmd_equilibrium->add_option("--points", points, "grid points")->check(CLI::PositiveNumber);

    CLI::App* cmd_scaling = app.add_subcommand("scaling", "edge scaling constants as JSON");
    std::string regime = "auto";
    add_common(cmd_scaling, false);
    cmd_scaling->add_option("--regime", regime, "auto | power | general")
        ->check(CLI::IsMember({"auto", "power", "general"}));

    CLI::App* cmd_edge =
        app.add_subcommand("edge", "replica maxima vs a reference law (KS report)");
    std::string law = "exact";
    add_common(cmd_edge, true);
    cmd_edge->add_option("--law", law, "gumbel | exact | heavytail");

    CLI::App* cmd_bulk = app.add_subcommand("bulk", "one gas vs the equilibrium radial CDF");
    add_common(cmd_bulk, false);

    CLI::App* cmd_heavy =
        app.add_subcommand("heavy-tail", "hardwall maxima vs the exact product CDF");
    std::vector<double> grid = {1.5, 2.0, 3.0};
    add_common(cmd_heavy, true);
    cmd_heavy->add_option("--grid", grid, "t values for the comparison table");

    CLI::App* cmd_exact = app.add_subcommand("exact-cdf", "exact max-CDF on a t grid");
    double tmin = -1.0, tmax = -1.0;
    std::size_t cdf_points = 201;
    add_common(cmd_exact, false);
    cmd_exact->add_option("--tmin", tmin, "grid start (default: near the lower edge)");
    cmd_exact->add_option("--tmax", tmax, "grid end (default: 1.5 x edge radius)");
    cmd_exact->add_option("--points", cdf_points, "grid points")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // bad flags are validation failures
    }

    ExperimentConfig cfg;
    cfg.potential_spec = potential;
    cfg.n = n;
    cfg.replicas = replicas;
    cfg.master_seed = seed;
    cfg.threads = threads;
    cfg.out_csv = out;
    cfg.report_json = report;

    if (cmd_sample->parsed()) {
        if (out.empty()) {
            cfg.out_csv.clear();
            print_csv(sample_csv(run_sample(cfg)), std::cout);
        } else {
            run_sample(cfg);
        }
        return 0;
    }

    if (cmd_equilibrium->parsed()) {
        const EquilibriumProfile profile(parse_potential(potential, n), beta);
        CsvTable t;
        t.columns = {"r", "density", "cdf"};
        for (std::size_t i = 0; i < points; ++i) {
            const double r = profile.r0() + (profile.R0() - profile.r0()) *
                                                static_cast<double>(i) /
                                                static_cast<double>(points - 1);
            t.rows.push_back({r, profile.density(r), profile.cdf(r)});
        }
        deliver_csv(t, out);
        return 0;
    }

    if (cmd_scaling->parsed()) {
        const Potential p = parse_potential(potential, n);
        ScalingConstants sc;
        if (regime == "power")
            sc = power_scaling(p.power_alpha(), n);
        else if (regime == "general")
            sc = general_scaling(p, n);
        else
            sc = scaling_for(p, n);
        deliver_json(to_json(sc), report);
        return 0;
    }

    if (cmd_edge->parsed()) {
        cfg.law = parse_law(law);
        const EdgeExperimentResult r = run_edge_experiment(cfg);
        std::cout << "law=" << r.report.law << " n=" << r.report.n << " m=" << r.report.m
                  << " D=" << format_real17(r.report.d)
                  << " p=" << format_real17(r.report.p_value) << '\n';
        return 0;
    }

    if (cmd_bulk->parsed()) {
        const BulkReport r = run_bulk_experiment(cfg);
        std::cout << "n=" << r.n << " sup_distance=" << format_real17(r.sup_distance) << '\n';
        return 0;
    }

    if (cmd_heavy->parsed()) {
        cfg.potential_spec = "hardwall";
        cfg.law = ReferenceLaw::HeavyTailFormal;
        cfg.heavy_tail_grid = grid;
        const EdgeExperimentResult r = run_edge_experiment(cfg);
        if (out.empty()) print_csv(heavy_tail_csv(r), std::cout);
        std::cout << "law=heavytail n=" << r.report.n << " m=" << r.report.m
                  << " D=" << format_real17(r.report.d)
                  << " p=" << format_real17(r.report.p_value) << '\n';
        return 0;
    }

    if (cmd_exact->parsed()) {
        const Potential p = parse_potential(potential, n);
        double lo = tmin, hi = tmax;
        if (hi <= 0.0) {
            if (p.family() == PotentialFamily::HardWallPareto) {
                hi = 3.0;
            } else {
                hi = 1.5 * support_radii(p, 2.0).second;
            }
        }
        if (lo < 0.0) lo = p.family() == PotentialFamily::HardWallPareto ? 1.0 : 0.5 * hi;
        if (!(lo < hi)) throw ParameterError("exact-cdf: need tmin < tmax");
        CsvTable t;
        t.columns = {"t", "max_cdf"};
        for (std::size_t i = 0; i < cdf_points; ++i) {
            const double x =
                lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(cdf_points - 1);
            t.rows.push_back({x, exact_max_cdf(p, n, x)});
        }
        deliver_csv(t, out);
        return 0;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const coulomb::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return 2;
    } catch (const coulomb::NumericError& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return 3;
    } catch (const coulomb::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
