#pragma once

// Exact lattice algebra: Hermite/Smith normal forms, primitive vectors,
// overlattices of Z^n, cone multiplicities and box points.

#include <cstddef>
#include <span>
#include <vector>

#include "toric/exact.hpp"

namespace toric {

using LatticeVector = IntVec;
using RationalVector = RatVec;

struct HermiteResult {
    IntMatrix h;  // canonical lower-triangular (row-style) Hermite form
    IntMatrix u;  // unimodular, u * m == h
};

/// Row-style Hermite normal form of a full-row-rank integer matrix.
/// Row i has its last nonzero entry (the pivot, positive) in column p_i with
/// p_0 < p_1 < ...; entries below a pivot are reduced into [0, pivot).
/// For square input this is lower triangular. Throws InputError when rank-deficient.
HermiteResult hermite_normal_form(const IntMatrix& m);

struct SmithResult {
    IntMatrix d;  // diagonal, d_i | d_{i+1}, nonnegative
    IntMatrix u;  // unimodular rows x rows
    IntMatrix v;  // unimodular cols x cols; u * m * v == d
};

SmithResult smith_normal_form(const IntMatrix& m);

/// Invariant factors (the diagonal of the Smith form).
IntVec invariant_factors(const IntMatrix& m);

/// v / gcd(v). Throws InputError on the zero vector.
LatticeVector primitive(const LatticeVector& v);

/// A full-rank lattice N in Q^n containing a finite-index sublattice of Z^n,
/// stored as (1/denominator) * rowspan(hnf) with the minimal denominator, so that
/// equal lattices compare equal structurally.
class LatticeBasis {
public:
    LatticeBasis() = default;
    static LatticeBasis standard(std::size_t n);
    /// Lattice generated by the given rational vectors (must span Q^n).
    static LatticeBasis from_generators(const std::vector<RatVec>& gens);

    std::size_t dim() const { return hnf_.size(); }
    const Int& denominator() const { return denominator_; }
    const IntMatrix& hnf() const { return hnf_; }
    RatMatrix basis() const;  // rows, ambient coordinates

    /// |det(basis)|.
    Rat covolume() const;
    bool contains(const RatVec& x) const;
    /// Coordinates of x in the basis rows (integral iff x is in the lattice).
    RatVec coordinates(const RatVec& x) const;
    RatVec to_ambient(const IntVec& coords) const;
    bool is_standard() const;

    friend bool operator==(const LatticeBasis& a, const LatticeBasis& b) {
        return a.denominator_ == b.denominator_ && a.hnf_ == b.hnf_;
    }

private:
    Int denominator_ = 1;
    IntMatrix hnf_;
};

/// Index of the sublattice spanned by the rays inside the lattice. Rays are given
/// in the ambient coordinates of `lattice`.
Int cone_multiplicity(const std::vector<RatVec>& rays, const LatticeBasis& lattice);
Int cone_multiplicity(const std::vector<IntVec>& rays, const LatticeBasis& lattice);

struct BoxPoint {
    RatVec point;        // ambient coordinates of the lattice
    RatVec barycentric;  // t_i in [0,1), point = sum t_i * ray_i
};

/// Nonzero lattice points in the half-open parallelepiped of the rays,
/// enumerated through the Smith form of the ray matrix. Count = multiplicity - 1.
std::vector<BoxPoint> box_points(const std::vector<RatVec>& rays, const LatticeBasis& lattice);
std::vector<BoxPoint> box_points(const std::vector<IntVec>& rays, const LatticeBasis& lattice);

/// Box points of integer rays in Z^n (the fan's own lattice).
std::vector<BoxPoint> box_points(const std::vector<IntVec>& rays);

}  // namespace toric
