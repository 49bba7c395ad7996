#pragma once

#include "coulomb/edge.hpp"
#include "coulomb/emit.hpp"
#include "coulomb/layers.hpp"
#include "coulomb/stats.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace coulomb {

enum class ReferenceLaw { Gumbel, ExactFiniteN, HeavyTailFormal };

std::string to_string(ReferenceLaw law);
ReferenceLaw parse_law(const std::string& name);

struct ExperimentConfig {
    std::string potential_spec = "power:alpha=2";
    std::uint64_t n = 1000;
    std::uint64_t replicas = 100;
    std::uint64_t master_seed = 0;
    ReferenceLaw law = ReferenceLaw::ExactFiniteN;
    std::vector<double> heavy_tail_grid = {1.5, 2.0, 3.0};
    std::string out_csv;      // empty: no CSV written
    std::string report_json;  // empty: no JSON written
    unsigned threads = 0;     // 0: COULOMB_EDGE_THREADS, then hardware
};

struct QuantileRow {
    double prob;
    double x;          // empirical quantile
    double empirical;  // empirical CDF at x
    double reference;  // reference CDF at x
};

struct GofReport {
    std::string law;
    std::uint64_t m = 0;
    std::uint64_t n = 0;
    std::string potential_spec;
    double d = 0.0;
    double p_value = 1.0;
    std::vector<QuantileRow> quantiles;
    std::optional<ScalingConstants> scaling;
    std::string tolerance_policy;
};

struct HeavyTailRow {
    double t;
    double empirical;      // empirical P(max <= t)
    double exact_product;  // prod_k P(R_k <= t)
    double formal_limit;   // exp(-1/(t^2-1))
    double binom_se;       // sqrt(p(1-p)/m) at the exact product
};

struct EdgeExperimentResult {
    GofReport report;
    std::vector<double> maxima;        // indexed by replica id
    std::vector<double> standardized;  // empty for the heavy-tail law
    std::vector<HeavyTailRow> heavy_tail;
};

/// m replica maxima (all n layers drawn per replica), standardized and
/// tested against the configured reference law. Deterministic in
/// (cfg, master_seed) regardless of thread count; outputs are written
/// only after every replica succeeded.
EdgeExperimentResult run_edge_experiment(const ExperimentConfig& cfg);

struct BulkReport {
    std::uint64_t n = 0;
    std::string potential_spec;
    double sup_distance = 0.0;
    std::vector<double> radii_ascending;
    std::vector<double> reference_cdf;
    std::string tolerance_policy;
};

/// One gas; sup-distance between the empirical radial CDF and the
/// equilibrium CDF.
BulkReport run_bulk_experiment(const ExperimentConfig& cfg);

/// Replica gases for the `sample` subcommand.
std::vector<ModuliSample> run_sample(const ExperimentConfig& cfg);

unsigned resolve_thread_count(unsigned requested);

CsvTable edge_csv(const EdgeExperimentResult& r);
CsvTable heavy_tail_csv(const EdgeExperimentResult& r);
CsvTable bulk_csv(const BulkReport& r);
CsvTable sample_csv(const std::vector<ModuliSample>& gases);

nlohmann::ordered_json to_json(const ScalingConstants& sc);
nlohmann::ordered_json to_json(const GofReport& rep);
nlohmann::ordered_json to_json(const EdgeExperimentResult& r);
nlohmann::ordered_json to_json(const BulkReport& r);

} // namespace coulomb
