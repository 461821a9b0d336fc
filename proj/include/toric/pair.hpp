#pragma once

#include <cstddef>
#include <vector>

#include "toric/exact.hpp"
#include "toric/fan.hpp"
#include "toric/lattice.hpp"
#include "toric/wall.hpp"

namespace toric {

/// A simplicial toric variety with a torus-invariant boundary sum d_i D_i,
/// 0 <= d_i < 1. Ray coordinates are taken in a basis of the lattice N;
/// `lattice` records that basis inside the ambient Q^n (standard when N = Z^n).
class ToricPair {
public:
    ToricPair(Fan fan, RatVec coeffs);
    ToricPair(Fan fan, RatVec coeffs, LatticeBasis lattice);

    const Fan& fan() const { return fan_; }
    const RatVec& coeffs() const { return coeffs_; }
    const LatticeBasis& lattice() const { return lattice_; }

    /// m with d = 1 - 1/m, or 0 when the coefficient is not standard.
    Int standard_order(std::size_t ray) const;

private:
    Fan fan_;
    RatVec coeffs_;
    LatticeBasis lattice_;
};

/// psi(v_i) = 1 - d_i.
HeightFunction psi_heights(const ToricPair& pair);

/// Value at p of the linear function on cone c agreeing with h on its rays.
Rat linear_extension(const Fan& fan, std::size_t cone, const HeightFunction& h, const RatVec& p);
Rat pl_eval(const Fan& fan, const HeightFunction& h, const RatVec& p);

struct DiscrepancyWitness {
    LatticeVector point;  // primitive, not a ray
    Rat psi;
    std::size_t cone = 0;  // a maximal cone containing the point
};

/// Primitive non-ray lattice points of the support with psi <= bound (or < bound
/// when `strict`), sorted by psi then lexicographically.
std::vector<DiscrepancyWitness> low_discrepancy_points(const ToricPair& pair, const Rat& bound, bool strict);

bool is_terminal(const ToricPair& pair);
bool is_canonical(const ToricPair& pair);

/// Equal rays, coefficients and pulled-back log canonical divisors.
bool k_equivalent(const ToricPair& x, const ToricPair& y);

/// Divisor order of K_X+B against K_Y+C. X_ge_Y means K_X+B >= K_Y+C,
/// which is psi_X <= psi_Y pointwise.
enum class KOrder { equal, x_ge_y, y_ge_x, incomparable };
const char* to_string(KOrder k);

KOrder k_compare(const ToricPair& x, const ToricPair& y);

/// All wall defects of h are >= 0 (relative to the support for non-complete fans).
bool is_nef(const Fan& fan, const HeightFunction& h);

/// K+B is nef over the support: every wall defect of psi is <= 0.
bool is_log_canonical_nef(const ToricPair& pair);

}  // namespace toric
