#include "coulomb/experiment.hpp"

#include "coulomb/equilibrium.hpp"
#include "coulomb/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <thread>

namespace coulomb {

namespace {

const char* kPolicyNote =
    "fixed-n tolerances are artifact policy: the limit laws carry no finite-n error bars";

/// Runs work(i) for i in [0, m) across `threads` workers. Each index owns
/// its output slot, so scheduling order cannot affect results.
void parallel_replicas(std::uint64_t m, unsigned threads,
                       const std::function<void(std::uint64_t)>& work) {
    if (threads <= 1 || m <= 1) {
        for (std::uint64_t i = 0; i < m; ++i) work(i);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto body = [&] {
        for (;;) {
            const std::uint64_t i = next.fetch_add(1);
            if (i >= m) return;
            try {
                work(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const unsigned count = static_cast<unsigned>(std::min<std::uint64_t>(threads, m));
    pool.reserve(count);
    for (unsigned t = 0; t < count; ++t) pool.emplace_back(body);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

std::vector<QuantileRow> quantile_table(const std::vector<double>& sorted,
                                        const std::function<double(double)>& ref) {
    std::vector<QuantileRow> rows;
    const double m = static_cast<double>(sorted.size());
    for (int q = 1; q <= 9; ++q) {
        const double prob = q / 10.0;
        const std::size_t idx = std::min<std::size_t>(
            sorted.size() - 1,
            static_cast<std::size_t>(std::ceil(prob * m)) - 1);
        const double x = sorted[idx];
        rows.push_back(QuantileRow{prob, x, (static_cast<double>(idx) + 1.0) / m, ref(x)});
    }
    return rows;
}

} // namespace

std::string to_string(ReferenceLaw law) {
    switch (law) {
        case ReferenceLaw::Gumbel: return "gumbel";
        case ReferenceLaw::ExactFiniteN: return "exact";
        case ReferenceLaw::HeavyTailFormal: return "heavytail";
    }
    throw ParameterError("unreachable law");
}

ReferenceLaw parse_law(const std::string& name) {
    if (name == "gumbel") return ReferenceLaw::Gumbel;
    if (name == "exact") return ReferenceLaw::ExactFiniteN;
    if (name == "heavytail") return ReferenceLaw::HeavyTailFormal;
    throw ParameterError("unknown reference law '" + name + "' (gumbel | exact | heavytail)");
}

unsigned resolve_thread_count(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("COULOMB_EDGE_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v < 1) throw ParameterError("");
            return static_cast<unsigned>(v);
        } catch (...) {
            throw ParameterError("COULOMB_EDGE_THREADS must be a positive integer, got '" +
                                 std::string(env) + "'");
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

EdgeExperimentResult run_edge_experiment(const ExperimentConfig& cfg) {
    if (cfg.replicas < 50)
        throw ParameterError("edge experiment needs at least 50 replicas for p-value reporting");
    const Potential pot = parse_potential(cfg.potential_spec, cfg.n);
    const unsigned threads = resolve_thread_count(cfg.threads);

    const bool heavy = cfg.law == ReferenceLaw::HeavyTailFormal;
    if (heavy && pot.family() != PotentialFamily::HardWallPareto)
        throw ParameterError("the heavy-tail law applies to the hardwall potential only");
    if (!heavy && pot.family() == PotentialFamily::HardWallPareto)
        throw ParameterError("the hardwall potential has no Gumbel scaling; use --law heavytail");

    std::optional<ScalingConstants> sc;
    if (!heavy) sc = scaling_for(pot, cfg.n);  // fail early on subcritical n

    const GasSampler sampler(pot, cfg.n);
    EdgeExperimentResult result;
    result.maxima.resize(cfg.replicas);
    parallel_replicas(cfg.replicas, threads, [&](std::uint64_t i) {
        RngStream rng = substream(cfg.master_seed, i);
        result.maxima[i] = sampler.draw_max(rng);
    });

    GofReport rep;
    rep.law = to_string(cfg.law);
    rep.m = cfg.replicas;
    rep.n = cfg.n;
    rep.potential_spec = pot.spec_string();
    rep.scaling = sc;
    rep.tolerance_policy = kPolicyNote;

    if (heavy) {
        std::vector<double> sorted = result.maxima;
        std::sort(sorted.begin(), sorted.end());
        auto ref = [&](double t) { return exact_max_cdf(pot, cfg.n, t); };
        const KsResult ks = ks_statistic(sorted, ref);
        rep.d = ks.d;
        rep.p_value = ks.p_value;
        rep.quantiles = quantile_table(sorted, ref);

        for (double t : cfg.heavy_tail_grid) {
            const double exact = exact_max_cdf(pot, cfg.n, t);
            const double emp =
                static_cast<double>(std::upper_bound(sorted.begin(), sorted.end(), t) -
                                    sorted.begin()) /
                static_cast<double>(cfg.replicas);
            result.heavy_tail.push_back(
                HeavyTailRow{t, emp, exact, heavytail_limit_cdf(t),
                             std::sqrt(exact * (1.0 - exact) / static_cast<double>(cfg.replicas))});
        }
    } else {
        result.standardized.resize(cfg.replicas);
        for (std::uint64_t i = 0; i < cfg.replicas; ++i)
            result.standardized[i] = standardize_max(result.maxima[i], *sc);
        std::vector<double> sorted = result.standardized;
        std::sort(sorted.begin(), sorted.end());

        std::function<double(double)> ref;
        if (cfg.law == ReferenceLaw::Gumbel) {
            ref = [](double x) { return gumbel_cdf(x); };
        } else {
            ref = [&, consts = *sc](double x) {
                return exact_max_cdf(pot, cfg.n, consts.b_n + x / consts.a_n);
            };
        }
        const KsResult ks = ks_statistic(sorted, ref);
        rep.d = ks.d;
        rep.p_value = ks.p_value;
        rep.quantiles = quantile_table(sorted, ref);
    }
    result.report = rep;

    // outputs only after the full run succeeded
    if (!cfg.out_csv.empty()) emit_csv(heavy ? heavy_tail_csv(result) : edge_csv(result), cfg.out_csv);
    if (!cfg.report_json.empty()) emit_json(to_json(result), cfg.report_json);
    return result;
}

BulkReport run_bulk_experiment(const ExperimentConfig& cfg) {
    const Potential pot = parse_potential(cfg.potential_spec, cfg.n);
    const EquilibriumProfile profile(pot, 2.0);

    RngStream rng = substream(cfg.master_seed, 0);
    ModuliSample gas = sample_gas(pot, cfg.n, rng);

    BulkReport rep;
    rep.n = cfg.n;
    rep.potential_spec = pot.spec_string();
    rep.tolerance_policy = kPolicyNote;
    rep.radii_ascending.assign(gas.moduli.rbegin(), gas.moduli.rend());
    rep.reference_cdf.reserve(cfg.n);
    for (double r : rep.radii_ascending) rep.reference_cdf.push_back(profile.cdf(r));
    rep.sup_distance =
        ks_statistic(rep.radii_ascending, [&](double r) { return profile.cdf(r); }).d;

    if (!cfg.out_csv.empty()) emit_csv(bulk_csv(rep), cfg.out_csv);
    if (!cfg.report_json.empty()) emit_json(to_json(rep), cfg.report_json);
    return rep;
}

std::vector<ModuliSample> run_sample(const ExperimentConfig& cfg) {
    const Potential pot = parse_potential(cfg.potential_spec, cfg.n);
    const GasSampler sampler(pot, cfg.n);
    const unsigned threads = resolve_thread_count(cfg.threads);
    std::vector<ModuliSample> gases(cfg.replicas);
    parallel_replicas(cfg.replicas, threads, [&](std::uint64_t i) {
        RngStream rng = substream(cfg.master_seed, i);
        gases[i] = sampler.draw_gas(rng);
    });
    if (!cfg.out_csv.empty()) emit_csv(sample_csv(gases), cfg.out_csv);
    return gases;
}

CsvTable edge_csv(const EdgeExperimentResult& r) {
    CsvTable t;
    const bool with_std = !r.standardized.empty();
    t.columns = {"replica_id", "max_modulus"};
    if (with_std) t.columns.push_back("standardized_max");
    for (std::size_t i = 0; i < r.maxima.size(); ++i) {
        std::vector<double> row{static_cast<double>(i), r.maxima[i]};
        if (with_std) row.push_back(r.standardized[i]);
        t.rows.push_back(std::move(row));
    }
    return t;
}

CsvTable heavy_tail_csv(const EdgeExperimentResult& r) {
    CsvTable t;
    t.columns = {"t", "empirical", "exact_product", "formal_limit", "binom_se"};
    for (const HeavyTailRow& row : r.heavy_tail)
        t.rows.push_back({row.t, row.empirical, row.exact_product, row.formal_limit,
                          row.binom_se});
    return t;
}

CsvTable bulk_csv(const BulkReport& r) {
    CsvTable t;
    t.columns = {"r", "empirical_cdf", "reference_cdf"};
    const double n = static_cast<double>(r.radii_ascending.size());
    for (std::size_t i = 0; i < r.radii_ascending.size(); ++i)
        t.rows.push_back(
            {r.radii_ascending[i], (static_cast<double>(i) + 1.0) / n, r.reference_cdf[i]});
    return t;
}

CsvTable sample_csv(const std::vector<ModuliSample>& gases) {
    CsvTable t;
    t.columns = {"replica_id", "rank", "modulus"};
    for (const ModuliSample& gas : gases)
        for (std::size_t j = 0; j < gas.moduli.size(); ++j)
            t.rows.push_back({static_cast<double>(gas.replica_id), static_cast<double>(j + 1),
                              gas.moduli[j]});
    return t;
}

nlohmann::ordered_json to_json(const ScalingConstants& sc) {
    return nlohmann::ordered_json{
        {"regime", sc.regime == ScalingRegime::PowerCase ? "power" : "general"},
        {"n", sc.n},
        {"t0", sc.t0},
        {"C0", sc.C0},
        {"c_n", sc.c_n},
        {"a_n", sc.a_n},
        {"b_n", sc.b_n},
    };
}

nlohmann::ordered_json to_json(const GofReport& rep) {
    nlohmann::ordered_json quantiles = nlohmann::ordered_json::array();
    for (const QuantileRow& q : rep.quantiles)
        quantiles.push_back(nlohmann::ordered_json{
            {"prob", q.prob}, {"x", q.x}, {"empirical", q.empirical}, {"reference", q.reference}});
    nlohmann::ordered_json j{
        {"law", rep.law},
        {"m", rep.m},
        {"n", rep.n},
        {"potential", rep.potential_spec},
        {"D", rep.d},
        {"p_value", rep.p_value},
        {"quantiles", std::move(quantiles)},
        {"tolerance_policy", rep.tolerance_policy},
    };
    if (rep.scaling) j["scaling"] = to_json(*rep.scaling);
    return j;
}

nlohmann::ordered_json to_json(const EdgeExperimentResult& r) {
    nlohmann::ordered_json j = to_json(r.report);
    if (!r.heavy_tail.empty()) {
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const HeavyTailRow& row : r.heavy_tail)
            rows.push_back(nlohmann::ordered_json{{"t", row.t},
                                                  {"empirical", row.empirical},
                                                  {"exact_product", row.exact_product},
                                                  {"formal_limit", row.formal_limit},
                                                  {"binom_se", row.binom_se}});
        j["heavy_tail"] = std::move(rows);
    }
    return j;
}

nlohmann::ordered_json to_json(const BulkReport& r) {
    return nlohmann::ordered_json{
        {"n", r.n},
        {"potential", r.potential_spec},
        {"sup_distance", r.sup_distance},
        {"tolerance_policy", r.tolerance_policy},
    };
}

} // namespace coulomb
