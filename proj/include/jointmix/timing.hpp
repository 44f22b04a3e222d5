#pragma once

#include "jointmix/joint_em.hpp"
#include "jointmix/simulator.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace jointmix {

struct TimingRow {
    std::size_t patients = 0;
    std::size_t genes = 0;
    std::size_t cpgs = 0;
    double seconds = 0.0;  // mean wall-clock per fit over the repeats
    std::size_t n_outer_iters = 0;  // of the last repeat
};

// For each patient count: simulate with `base` (patients overridden, same G
// and seed), preprocess, then time `repeats` fits. Only the fit is timed.
std::vector<TimingRow> timing_probe(std::span<const std::size_t> patient_counts,
                                    const SimConfig& base, const FitOptions& fit_opts = {},
                                    std::size_t repeats = 1);

}  // namespace jointmix
