#pragma once

#include <span>

#include "three_omega/fdm.hpp"

namespace three_omega {

/// k-th harmonic of a sampled signal against a sin(k omega t) reference.
struct Demodulated {
  int harmonic = 0;
  double amplitude_rms = 0.0;
  double phase = 0.0;      ///< (-pi, pi]; A sin(k w t + p) reads as phase p
  double in_phase = 0.0;   ///< X, rms units
  double quadrature = 0.0; ///< Y, rms units
};

/// Rectangular-window quadrature over an integer number of periods.
/// `samples` are uniformly spaced with the first one at t = 0 (mod the period).
/// Throws DemodError when the length is not a whole number of periods or
/// the sampling cannot resolve harmonic k.
Demodulated demodulate(std::span<const double> samples, int samples_per_period, int harmonic);

/// Demodulates TraceResult::voltage against sin(k omega t) at the trace's own sample times.
Demodulated demodulate(const fdm::TraceResult& trace, double omega, int harmonic);

}  // namespace three_omega
