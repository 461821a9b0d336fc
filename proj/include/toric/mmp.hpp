#pragma once

// Birational surgery on simplicial fans: bistellar flips, divisorial
// contractions, regular triangulations, the kinetic flop sweep, relative MMP
// and terminalization.

#include <cstddef>
#include <optional>
#include <vector>

#include "toric/exact.hpp"
#include "toric/fan.hpp"
#include "toric/pair.hpp"
#include "toric/wall.hpp"

namespace toric {

/// A wall described by ray vectors, so it survives reindexing of the fan.
struct WallRef {
    std::vector<LatticeVector> shared;
    LatticeVector apex_a;
    LatticeVector apex_b;
};

/// The circuit relation by ray vectors (aligned lists).
struct RelationRef {
    std::vector<LatticeVector> rays;
    IntVec coeffs;
};

WallRef wall_ref(const Fan& fan, const Wall& wall);
RelationRef relation_ref(const Fan& fan, const WallRelation& rel);
/// Throws InputError when the fan has no such wall.
Wall find_wall(const Fan& fan, const WallRef& ref);

struct FlopStep {
    WallRef wall;
    RelationRef relation;
    Rat event_time;
    Rat k_defect_check;
};

enum class MmpKind { flip, divisorial_contraction };
const char* to_string(MmpKind k);

struct MmpStep {
    MmpKind kind = MmpKind::flip;
    WallRef wall;
    RelationRef relation;
    Rat psi_defect;
    std::optional<LatticeVector> removed_ray;
    std::vector<LatticeVector> center;  // image of the contracted divisor
};

struct ExtractionStep {
    LatticeVector ray;
    Rat psi_before;
};

/// Replace the cones (Z \ {i}) u L, i in s_plus, by (Z \ {j}) u L, j in s_minus,
/// where Z = s_plus u s_minus is the wall's circuit and L runs over its common link.
Fan bistellar_flip(const Fan& fan, const Wall& wall);

struct Contraction {
    Fan fan;
    std::size_t removed_index = 0;  // in the input fan
    LatticeVector removed_ray;
    IndexSet center;  // in the output fan: the rays of s_plus
};

Contraction divisorial_contract(const Fan& fan, const Wall& wall);

/// Heights with every wall defect strictly positive, maximizing the smallest
/// defect under |h_i| <= 1. Throws InputError when none exist.
HeightFunction find_ample_heights(const Fan& fan);

/// The fan on `rays` whose walls all have strictly positive defect for `heights`
/// (the lower hull). `seed` picks the generic point the search starts from.
Fan regular_triangulation(std::size_t dim, const std::vector<LatticeVector>& rays, const RatVec& heights,
                          unsigned seed = 0);

/// Default step budget: 10 * rays^2.
std::size_t default_budget(std::size_t rays);

std::vector<FlopStep> flop_decompose(const ToricPair& x, const ToricPair& y,
                                     std::optional<HeightFunction> ample_x = std::nullopt,
                                     std::optional<HeightFunction> ample_y = std::nullopt,
                                     std::optional<std::size_t> max_steps = std::nullopt);

struct MmpResult {
    ToricPair pair;
    std::vector<MmpStep> steps;
};

/// MMP for K+B over the affine base given by the cone spanned by `base`
/// (default: the support of the fan, which must be a convex cone).
MmpResult relative_mmp(const ToricPair& pair, const std::optional<std::vector<LatticeVector>>& base = std::nullopt,
                       std::optional<std::size_t> max_steps = std::nullopt);

struct TerminalizeResult {
    ToricPair pair;
    std::vector<ExtractionStep> steps;
};

TerminalizeResult terminalize(const ToricPair& pair, std::optional<std::size_t> max_steps = std::nullopt);

Fan replay_flops(const Fan& start, const std::vector<FlopStep>& steps);
ToricPair replay_mmp(const ToricPair& start, const std::vector<MmpStep>& steps);
ToricPair replay_extractions(const ToricPair& start, const std::vector<ExtractionStep>& steps);

}  // namespace toric
