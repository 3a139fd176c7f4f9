#pragma once

#include "circlepack/model.hpp"
#include "circlepack/optim.hpp"

namespace circlepack {

struct Relaxed {
    Pattern pattern;
    double energy;
    Termination reason;
    int iterations;
};

/// Minimizes the elastic energy of `pattern` at its container size.
Relaxed relax(const Pattern& pattern, const MinimizeConfig& cfg = {});

}  // namespace circlepack
