#pragma once

#include "jointmix/dataset.hpp"
#include "jointmix/joint_em.hpp"

#include <optional>
#include <string>
#include <vector>

namespace jointmix {

struct ChromosomeFit {
    std::string chromosome;
    PairedDataset data;
    std::optional<FitResult> result;
    // Set when `result` is empty.
    std::string error;
    bool input_error = false;
};

// Fits every chromosome separately. A failing chromosome records its error
// and does not stop the others. Output order follows first appearance of the
// chromosome labels and is independent of `threads`.
std::vector<ChromosomeFit> fit_all_chromosomes(const PairedDataset& ds, unsigned threads,
                                               FitOptions opts = {});

}  // namespace jointmix
