#include "toric/wall.hpp"

#include <algorithm>

#include "toric/errors.hpp"

namespace toric {

Int WallRelation::coeff_of(std::size_t ray) const {
    auto it = std::lower_bound(ray_indices.begin(), ray_indices.end(), ray);
    if (it == ray_indices.end() || *it != ray) return 0;
    return coeffs[static_cast<std::size_t>(it - ray_indices.begin())];
}

WallRelation wall_relation(const Fan& fan, const Wall& wall) {
    const IndexSet& cone_a = fan.cone(wall.cone_a);
    RatVec lam = fan.barycentric(wall.cone_a, to_rat(fan.ray(wall.apex_b)));
    // apex_b = sum lam_k u_k, so  apex_b - sum lam_k u_k = 0.
    std::vector<std::pair<std::size_t, Rat>> terms;
    for (std::size_t k = 0; k < cone_a.size(); ++k) {
        if (cone_a[k] == wall.apex_a && lam[k] >= 0)
            throw InputError("wall_relation: apexes are not on opposite sides of the wall");
        terms.emplace_back(cone_a[k], -lam[k]);
    }
    terms.emplace_back(wall.apex_b, Rat(1));
    std::sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) { return x.first < y.first; });

    WallRelation rel;
    RatVec raw;
    for (const auto& [i, c] : terms) {
        rel.ray_indices.push_back(i);
        raw.push_back(c);
    }
    rel.coeffs = primitive_direction(raw);
    rel.apex_a = wall.apex_a;
    rel.apex_b = wall.apex_b;
    for (std::size_t k = 0; k < rel.ray_indices.size(); ++k) {
        const std::size_t i = rel.ray_indices[k];
        if (rel.coeffs[k] > 0)
            rel.s_plus.push_back(i);
        else if (rel.coeffs[k] < 0)
            rel.s_minus.push_back(i);
        else
            rel.s_zero.push_back(i);
    }
    return rel;
}

Rat defect(const WallRelation& relation, const HeightFunction& h) {
    Rat s = 0;
    for (std::size_t k = 0; k < relation.ray_indices.size(); ++k)
        s += relation.coeffs[k] * h.values.at(relation.ray_indices[k]);
    return s;
}

Classification classify(const WallRelation& relation) {
    if (relation.s_minus.empty()) return {ContractionKind::fiber, 0};
    if (relation.s_minus.size() == 1) return {ContractionKind::divisorial, relation.s_minus[0]};
    return {ContractionKind::flipping, 0};
}

const char* to_string(ContractionKind k) {
    switch (k) {
        case ContractionKind::fiber: return "fiber";
        case ContractionKind::divisorial: return "divisorial";
        case ContractionKind::flipping: return "flipping";
    }
    return "fiber";
}

}  // namespace toric
