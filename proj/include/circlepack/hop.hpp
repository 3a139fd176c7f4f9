#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "circlepack/actionspace.hpp"
#include "circlepack/model.hpp"

namespace circlepack {

using Rng = std::mt19937_64;

/// Which block of the neighbor generator produced a pattern.
enum class MoveKind {
    RelocateLargestL1,
    RelocateLargestL2,
    RelocateBestL1,
    RelocateBestL2,
    RelocateRandomL1,
    RelocateRandomL2,
    NsoS1PairLargest,
    NsoS1PairBestMatch,
    NsoS1PairRandom,
    NsoS1S2Largest,
    NsoS1S2BestForS1,
    NsoS1S2BestForS2,
    CrossSetPairSwap,
    AdjacentSwap,
    RandomSwapInSet,
};

std::string_view to_string(MoveKind kind);

struct Neighbor {
    Pattern pattern;
    MoveKind kind;
};

struct HopBatch {
    std::vector<Neighbor> patterns;
    std::vector<std::size_t> jammers;  // relocated circles, tabued for the next step
};

struct HopConfig {
    int tabu_tenure = 1;
    /// Omit the four random in-set swaps, giving 39 moves per pattern
    /// instead of 43.
    bool omit_random_set_swaps = false;
};

/// Moves circle i to the centre of `space`.
Pattern place_item_in_space(const Pattern& pattern, std::size_t i, const ActionSpace& space);

/// Splits a narrow space and puts circle i in the lower/left half and j in
/// the other. Throws std::invalid_argument if i == j or the space is not narrow.
Pattern neighbour_space_occupy(const Pattern& pattern, std::size_t i, std::size_t j, const ActionSpace& narrow);

/// Exchanges the centres of i and j. Throws std::invalid_argument if i == j.
Pattern swap_circles(const Pattern& pattern, std::size_t i, std::size_t j);

/// Narrow members of l1 and l2 without duplicates, l1 order first.
std::vector<ActionSpace> narrow_spaces(const SpaceLists& lists);

/// One round of neighbor generation for a stuck pattern. Updates the tabu
/// state in `sets` (the round's jammers become tabu).
HopBatch generate_neighbors(const Pattern& pattern, PartitionSets& sets, const SpaceLists& lists, Rng& rng,
                            const HopConfig& cfg = {});

}  // namespace circlepack
