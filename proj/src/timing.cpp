#include "jointmix/timing.hpp"

#include "jointmix/error.hpp"
#include "jointmix/preprocess.hpp"

#include <chrono>

namespace jointmix {

std::vector<TimingRow> timing_probe(std::span<const std::size_t> patient_counts,
                                    const SimConfig& base, const FitOptions& fit_opts,
                                    std::size_t repeats) {
    if (repeats == 0) throw ParameterError("timing needs at least one repeat");
    std::vector<TimingRow> rows;
    for (std::size_t n : patient_counts) {
        SimConfig cfg = base;
        cfg.patients = n;
        const PairedDataset ds = to_dataset(preprocess(simulate(cfg).raw));

        TimingRow row;
        row.patients = n;
        row.genes = ds.n_genes();
        row.cpgs = ds.n_cpgs();
        double total = 0.0;
        for (std::size_t r = 0; r < repeats; ++r) {
            const auto start = std::chrono::steady_clock::now();
            const FitResult res = fit(ds, fit_opts);
            const auto stop = std::chrono::steady_clock::now();
            total += std::chrono::duration<double>(stop - start).count();
            row.n_outer_iters = res.n_outer_iters;
        }
        row.seconds = total / static_cast<double>(repeats);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace jointmix
