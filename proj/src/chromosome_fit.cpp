#include "jointmix/chromosome_fit.hpp"

#include "jointmix/error.hpp"
#include "jointmix/log.hpp"
#include "jointmix/parallel.hpp"

#include <algorithm>

namespace jointmix {

std::vector<ChromosomeFit> fit_all_chromosomes(const PairedDataset& ds, unsigned threads,
                                               FitOptions opts) {
    auto parts = split_by_chromosome(ds);
    std::vector<ChromosomeFit> out(parts.size());
    for (std::size_t i = 0; i < parts.size(); ++i) {
        out[i].chromosome = parts[i].gene(0).chromosome;
        out[i].data = std::move(parts[i]);
    }

    // Spend threads on chromosomes first; leftovers go to the per-gene E-step.
    threads = std::max(threads, 1u);
    const auto outer = static_cast<unsigned>(std::min<std::size_t>(threads, out.size()));
    opts.threads = outer == 0 ? 1 : std::max(1u, threads / outer);

    parallel_for(out.size(), outer, [&](std::size_t i) {
        auto& slot = out[i];
        try {
            slot.result = fit(slot.data, opts);
        } catch (const InputError& e) {
            slot.error = e.what();
            slot.input_error = true;
        } catch (const Error& e) {
            slot.error = e.what();
        }
        if (!slot.result) log::warn("chromosome {}: {}", slot.chromosome, slot.error);
    });
    return out;
}

}  // namespace jointmix
