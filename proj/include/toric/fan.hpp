#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "toric/exact.hpp"
#include "toric/lattice.hpp"

namespace toric {

using IndexSet = std::vector<std::size_t>;  // always sorted

enum class SupportKind { complete, cone, other };

const char* to_string(SupportKind k);

/// A simplicial fan with full-dimensional maximal cones. Rays are primitive
/// integer vectors in a fixed basis of the lattice N. Validity (independence,
/// face-to-face intersections, no unused rays) is checked on construction and
/// instances are immutable afterwards.
class Fan {
public:
    Fan(std::size_t dim, std::vector<LatticeVector> rays, std::vector<IndexSet> cones);

    std::size_t dim() const { return dim_; }
    const std::vector<LatticeVector>& rays() const { return rays_; }
    const LatticeVector& ray(std::size_t i) const { return rays_[i]; }
    const std::vector<IndexSet>& cones() const { return cones_; }
    const IndexSet& cone(std::size_t c) const { return cones_[c]; }
    SupportKind support_kind() const { return support_kind_; }

    std::optional<std::size_t> ray_index(const LatticeVector& v) const;
    std::vector<LatticeVector> cone_rays(std::size_t c) const;

    /// Coefficients of p in the rays of cone c (not necessarily nonnegative).
    RatVec barycentric(std::size_t c, const RatVec& p) const;
    /// Linear functional of the cone c that is 1 on its k-th ray and 0 on the others.
    RatVec dual_functional(std::size_t c, std::size_t k) const;

    /// (n-1)-faces mapped to the maximal cones containing them.
    const std::map<IndexSet, IndexSet>& facet_incidence() const { return cache_->facets; }

private:
    struct Cache {
        std::vector<RatMatrix> inverses;
        std::map<IndexSet, IndexSet> facets;
    };

    void validate_pairs() const;
    bool cones_meet_in_face(std::size_t a, std::size_t b) const;

    std::size_t dim_;
    std::vector<LatticeVector> rays_;
    std::vector<IndexSet> cones_;
    SupportKind support_kind_ = SupportKind::other;
    std::shared_ptr<const Cache> cache_;
};

struct Wall {
    IndexSet shared;
    std::size_t cone_a = 0;
    std::size_t cone_b = 0;
    std::size_t apex_a = 0;
    std::size_t apex_b = 0;
};

/// Every (n-1)-face shared by two maximal cones, ordered by the shared index set.
std::vector<Wall> walls(const Fan& fan);

bool is_complete(const Fan& fan);

/// Insert primitive(w) as a new last ray and subdivide every cone containing it.
Fan star_subdivision(const Fan& fan, const LatticeVector& w);

struct Location {
    std::size_t cone = 0;
    RatVec barycentric;
};

/// First cone (in cone order) containing p. Throws InputError outside the support.
Location locate(const Fan& fan, const RatVec& p);
std::optional<Location> try_locate(const Fan& fan, const RatVec& p);

/// Equal ray sets as vector sets and equal cone sets under the induced bijection.
bool fans_equal(const Fan& a, const Fan& b);

/// A point in the common interior of two maximal cones, if their intersection
/// is full-dimensional.
std::optional<RatVec> interior_intersection_point(const Fan& a, std::size_t cone_a, const Fan& b,
                                                  std::size_t cone_b);

/// Primitive generators of the extreme rays of the intersection of two maximal cones.
std::vector<LatticeVector> intersection_extreme_rays(const Fan& a, std::size_t cone_a, const Fan& b,
                                                     std::size_t cone_b);

/// Whether two fans of the same dimension have the same support. Decided for
/// complete and convex-cone supports; other supports raise InputError.
bool same_support(const Fan& a, const Fan& b);

/// Minimal face (as sorted ray indices) of cone c containing p, or nullopt if p is not in it.
std::optional<IndexSet> carrier_face(const Fan& fan, std::size_t c, const RatVec& p);

}  // namespace toric
