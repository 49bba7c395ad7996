#pragma once

#include <cstdint>

namespace coulomb {

/// Counter-based pseudo-random stream with explicit substream support.
///
/// The generator is a keyed SplitMix64 counter: draw i of stream s under
/// master seed m is
///
///     out_i = mix64(key(m, s) + i * 0x9E3779B97F4A7C15)
///     key(m, s) = mix64(mix64(m + 0x9E3779B97F4A7C15) ^ mix64(s + 0xD1B54A32D192ED03))
///
/// where mix64 is the SplitMix64 finalizer
///
///     z ^= z >> 30;  z *= 0xBF58476D1CE4E5B9;
///     z ^= z >> 27;  z *= 0x94D049BB133111EB;
///     z ^= z >> 31;
///
/// Every operation is exact 64-bit integer arithmetic, so streams are
/// bit-reproducible across platforms and independent of thread count.
/// A stream is single-owner: never share one across concurrent tasks;
/// give each replica its own substream instead.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

    /// Next raw 64-bit word.
    std::uint64_t next_u64();

    /// Uniform double in [0, 1), 53-bit resolution.
    double uniform();

    /// Uniform double in (0, 1]; safe to pass through log().
    double uniform_pos();

    std::uint64_t master_seed() const { return master_seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    /// Words consumed so far; handy for acceptance-rate diagnostics.
    std::uint64_t draws_consumed() const { return counter_; }

private:
    std::uint64_t master_seed_;
    std::uint64_t stream_id_;
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// Replica substream: deterministic function of (master_seed, replica_id).
RngStream substream(std::uint64_t master_seed, std::uint64_t replica_id);

/// Standard normal via Box-Muller; consumes exactly two uniforms per draw.
double sample_gaussian(double mean, double sd, RngStream& rng);

/// Gamma(shape, 1) via Marsaglia-Tsang squeeze; shape < 1 is boosted
/// through Gamma(shape+1) * U^(1/shape).
double sample_gamma(double shape, RngStream& rng);

/// Beta(a, b) as X/(X+Y) with independent Gamma draws.
double sample_beta(double a, double b, RngStream& rng);

} // namespace coulomb
