#pragma once

#include <vector>

#include "circlepack/model.hpp"
#include "circlepack/optim.hpp"
#include "circlepack/relax.hpp"

namespace circlepack {

/// Circles of S3 and S4 ordered by pain, non-ascending; ties by index.
std::vector<std::size_t> pain_list(const EnergyReport& report, const PartitionSets& sets);

struct PerturbResult {
    Pattern pattern;
    double energy = 0.0;
    /// Some small circle found no action space and went to the container centre.
    bool fallback_placement = false;
};

/// Rebuilds the pattern without minimizing: pairwise swaps down the pain
/// list of the large circles, then best-match reinsertion of the small ones
/// in descending pain order.
PerturbResult perturb_layout(const Pattern& pattern, const PartitionSets& sets);

/// perturb_layout followed by one minimization.
PerturbResult perturb(const Pattern& pattern, const PartitionSets& sets, const MinimizeConfig& cfg = {});

}  // namespace circlepack
