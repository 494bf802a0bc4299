#pragma once

#include <random>

#include "three_omega/config.hpp"
#include "three_omega/fitter.hpp"

namespace three_omega {

/// The single generator behind every random draw.
using Rng = std::mt19937_64;

/// Noiseless sweep of `config.specimen` at the planned frequencies using the
/// spectral phasor (n_max, radial loss) or the time-domain oracle. Frequency
/// points run concurrently; output order follows frequency. Engine failures
/// are rethrown with the frequency index in the message.
SweepDataset simulate_sweep(const RunConfig& config, Engine engine);

/// Multiplies each amplitude by (1 + amplitude N(0,1)) and adds phase N(0,1)
/// to each phase, drawing sequentially in point order (amplitude then phase).
/// With amplitude noise the points carry sigma = amplitude * V.
void apply_noise(SweepDataset& data, const NoiseSpec& noise, Rng& rng);

/// simulate_sweep + apply_noise with a generator seeded from noise.seed,
/// plus provenance metadata (engine, n_max, grid, loss, seed, noise).
SweepDataset generate_sweep(const RunConfig& config, const NoiseSpec& noise, Engine engine);

/// Total radial loss rate for the configured loss model (0 for none).
double configured_loss(const RunConfig& config, const Specimen& specimen);

}  // namespace three_omega
