#include "toric/fan.hpp"

#include <algorithm>
#include <set>

#include "toric/errors.hpp"
#include "toric/lp.hpp"

namespace toric {

const char* to_string(SupportKind k) {
    switch (k) {
        case SupportKind::complete: return "complete";
        case SupportKind::cone: return "cone-supported";
        case SupportKind::other: return "other";
    }
    return "other";
}

namespace {

RatMatrix ray_matrix(const std::vector<LatticeVector>& rays, const IndexSet& idx) {
    RatMatrix m;
    m.reserve(idx.size());
    for (auto i : idx) m.push_back(to_rat(rays[i]));
    return m;
}

IndexSet set_intersection(const IndexSet& a, const IndexSet& b) {
    IndexSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

}  // namespace

Fan::Fan(std::size_t dim, std::vector<LatticeVector> rays, std::vector<IndexSet> cones)
    : dim_(dim), rays_(std::move(rays)), cones_(std::move(cones)) {
    if (dim_ == 0) throw InputError("fan: dimension must be at least 1");
    if (cones_.empty()) throw InputError("fan: no maximal cones");
    std::set<LatticeVector> seen;
    for (const auto& r : rays_) {
        if (r.size() != dim_) throw InputError("fan: ray " + to_string(r) + " has wrong dimension");
        if (gcd_of(r) != 1) throw InputError("fan: ray " + to_string(r) + " is not primitive");
        if (!seen.insert(r).second) throw InputError("fan: duplicate ray " + to_string(r));
    }
    std::vector<bool> used(rays_.size(), false);
    for (auto& c : cones_) {
        std::sort(c.begin(), c.end());
        if (c.size() != dim_)
            throw InputError("fan: cone of size " + std::to_string(c.size()) + " in dimension " +
                             std::to_string(dim_) + " (only full-dimensional simplicial cones)");
        if (std::adjacent_find(c.begin(), c.end()) != c.end()) throw InputError("fan: repeated ray in a cone");
        for (auto i : c) {
            if (i >= rays_.size()) throw InputError("fan: cone references missing ray " + std::to_string(i));
            used[i] = true;
        }
    }
    for (std::size_t i = 0; i < rays_.size(); ++i)
        if (!used[i]) throw InputError("fan: ray " + to_string(rays_[i]) + " is not used by any cone");
    std::sort(cones_.begin(), cones_.end());
    if (std::adjacent_find(cones_.begin(), cones_.end()) != cones_.end())
        throw InputError("fan: duplicate maximal cone");

    auto cache = std::make_shared<Cache>();
    for (const auto& c : cones_) {
        auto inv = inverse(ray_matrix(rays_, c));
        if (!inv) throw InputError("fan: cone with linearly dependent rays");
        cache->inverses.push_back(std::move(*inv));
    }
    for (std::size_t ci = 0; ci < cones_.size(); ++ci) {
        for (std::size_t k = 0; k < dim_; ++k) {
            IndexSet face = cones_[ci];
            face.erase(face.begin() + static_cast<std::ptrdiff_t>(k));
            auto& inc = cache->facets[face];
            inc.push_back(ci);
            if (inc.size() > 2) throw InputError("fan: a facet is shared by more than two cones");
        }
    }
    cache_ = std::move(cache);
    validate_pairs();

    bool complete = true;
    bool convex = true;
    for (const auto& [face, inc] : cache_->facets) {
        if (inc.size() == 2) continue;
        complete = false;
        const std::size_t c = inc[0];
        std::size_t k = 0;
        while (k < dim_ && std::binary_search(face.begin(), face.end(), cones_[c][k])) ++k;
        RatVec f = dual_functional(c, k);
        for (const auto& r : rays_) {
            if (dot(f, r) < 0) {
                convex = false;
                break;
            }
        }
    }
    support_kind_ = complete ? SupportKind::complete : (convex ? SupportKind::cone : SupportKind::other);
}

std::optional<std::size_t> Fan::ray_index(const LatticeVector& v) const {
    for (std::size_t i = 0; i < rays_.size(); ++i)
        if (rays_[i] == v) return i;
    return std::nullopt;
}

std::vector<LatticeVector> Fan::cone_rays(std::size_t c) const {
    std::vector<LatticeVector> out;
    for (auto i : cones_[c]) out.push_back(rays_[i]);
    return out;
}

RatVec Fan::barycentric(std::size_t c, const RatVec& p) const {
    return row_times(p, cache_->inverses[c]);
}

RatVec Fan::dual_functional(std::size_t c, std::size_t k) const {
    const auto& inv = cache_->inverses[c];
    RatVec f(dim_);
    for (std::size_t i = 0; i < dim_; ++i) f[i] = inv[i][k];
    return f;
}

bool Fan::cones_meet_in_face(std::size_t a, std::size_t b) const {
    const IndexSet common = set_intersection(cones_[a], cones_[b]);
    // Certificate: a facet hyperplane of one cone weakly separates the other and
    // cuts it exactly in the common rays.
    auto separated_by_facet_of = [&](std::size_t x, std::size_t y) {
        for (std::size_t k = 0; k < dim_; ++k) {
            if (std::binary_search(common.begin(), common.end(), cones_[x][k])) continue;
            RatVec f = dual_functional(x, k);
            bool ok = true;
            for (auto j : cones_[y]) {
                Rat v = dot(f, rays_[j]);
                bool is_common = std::binary_search(common.begin(), common.end(), j);
                if (is_common ? v != 0 : v >= 0) {
                    ok = false;
                    break;
                }
            }
            if (ok) return true;
        }
        return false;
    };
    if (separated_by_facet_of(a, b) || separated_by_facet_of(b, a)) return true;

    // Exact feasibility: a point of cone a outside the common face that also lies in cone b.
    LinearProgram lp;
    lp.num_vars = 2 * dim_;
    for (std::size_t d = 0; d < dim_; ++d) {
        RatVec row(2 * dim_, 0);
        for (std::size_t k = 0; k < dim_; ++k) {
            row[k] = rays_[cones_[a][k]][d];
            row[dim_ + k] = -rays_[cones_[b][k]][d];
        }
        lp.add(std::move(row), Sense::eq, 0);
    }
    RatVec norm(2 * dim_, 0);
    for (std::size_t k = 0; k < dim_; ++k)
        if (!std::binary_search(common.begin(), common.end(), cones_[a][k])) norm[k] = 1;
    lp.add(std::move(norm), Sense::eq, 1);
    return solve_lp(lp).status == LpStatus::infeasible;
}

void Fan::validate_pairs() const {
    for (std::size_t a = 0; a < cones_.size(); ++a)
        for (std::size_t b = a + 1; b < cones_.size(); ++b)
            if (!cones_meet_in_face(a, b))
                throw InputError("fan: cones " + to_string(IntVec(cones_[a].begin(), cones_[a].end())) + " and " +
                                 to_string(IntVec(cones_[b].begin(), cones_[b].end())) +
                                 " overlap outside a common face");
}

std::vector<Wall> walls(const Fan& fan) {
    std::vector<Wall> out;
    for (const auto& [face, inc] : fan.facet_incidence()) {
        if (inc.size() != 2) continue;
        Wall w;
        w.shared = face;
        w.cone_a = inc[0];
        w.cone_b = inc[1];
        for (auto i : fan.cone(w.cone_a))
            if (!std::binary_search(face.begin(), face.end(), i)) w.apex_a = i;
        for (auto i : fan.cone(w.cone_b))
            if (!std::binary_search(face.begin(), face.end(), i)) w.apex_b = i;
        out.push_back(std::move(w));
    }
    return out;
}

bool is_complete(const Fan& fan) {
    return fan.support_kind() == SupportKind::complete;
}

std::optional<Location> try_locate(const Fan& fan, const RatVec& p) {
    if (p.size() != fan.dim()) throw InputError("locate: dimension mismatch");
    for (std::size_t c = 0; c < fan.cones().size(); ++c) {
        RatVec lam = fan.barycentric(c, p);
        if (std::all_of(lam.begin(), lam.end(), [](const Rat& x) { return x >= 0; }))
            return Location{c, std::move(lam)};
    }
    return std::nullopt;
}

Location locate(const Fan& fan, const RatVec& p) {
    auto loc = try_locate(fan, p);
    if (!loc) throw InputError("locate: point " + to_string(p) + " is outside the support");
    return *loc;
}

std::optional<IndexSet> carrier_face(const Fan& fan, std::size_t c, const RatVec& p) {
    RatVec lam = fan.barycentric(c, p);
    IndexSet face;
    for (std::size_t k = 0; k < lam.size(); ++k) {
        if (lam[k] < 0) return std::nullopt;
        if (lam[k] > 0) face.push_back(fan.cone(c)[k]);
    }
    return face;
}

Fan star_subdivision(const Fan& fan, const LatticeVector& w_in) {
    if (w_in.size() != fan.dim()) throw InputError("star_subdivision: dimension mismatch");
    LatticeVector w = primitive(w_in);
    if (fan.ray_index(w)) throw InputError("star_subdivision: " + to_string(w) + " is already a ray");
    const std::size_t new_index = fan.rays().size();
    std::vector<IndexSet> cones;
    bool hit = false;
    for (std::size_t c = 0; c < fan.cones().size(); ++c) {
        RatVec lam = fan.barycentric(c, to_rat(w));
        if (!std::all_of(lam.begin(), lam.end(), [](const Rat& x) { return x >= 0; })) {
            cones.push_back(fan.cone(c));
            continue;
        }
        hit = true;
        for (std::size_t k = 0; k < lam.size(); ++k) {
            if (lam[k] == 0) continue;
            IndexSet nc = fan.cone(c);
            nc[k] = new_index;
            std::sort(nc.begin(), nc.end());
            cones.push_back(std::move(nc));
        }
    }
    if (!hit) throw InputError("star_subdivision: " + to_string(w) + " is outside the support");
    std::vector<LatticeVector> rays = fan.rays();
    rays.push_back(std::move(w));
    return Fan(fan.dim(), std::move(rays), std::move(cones));
}

bool fans_equal(const Fan& a, const Fan& b) {
    if (a.dim() != b.dim() || a.rays().size() != b.rays().size() || a.cones().size() != b.cones().size())
        return false;
    std::vector<std::size_t> map(a.rays().size());
    for (std::size_t i = 0; i < a.rays().size(); ++i) {
        auto j = b.ray_index(a.ray(i));
        if (!j) return false;
        map[i] = *j;
    }
    std::vector<IndexSet> mapped;
    for (const auto& c : a.cones()) {
        IndexSet m;
        for (auto i : c) m.push_back(map[i]);
        std::sort(m.begin(), m.end());
        mapped.push_back(std::move(m));
    }
    std::sort(mapped.begin(), mapped.end());
    return mapped == b.cones();
}

namespace {

// A facet hyperplane of cone x (in fan fx) with cone y (in fan fy) weakly on the other side.
bool facet_separates(const Fan& fx, std::size_t x, const Fan& fy, std::size_t y) {
    for (std::size_t k = 0; k < fx.dim(); ++k) {
        RatVec f = fx.dual_functional(x, k);
        bool ok = true;
        for (auto j : fy.cone(y)) {
            if (dot(f, fy.ray(j)) > 0) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    }
    return false;
}

}  // namespace

std::optional<RatVec> interior_intersection_point(const Fan& a, std::size_t ca, const Fan& b, std::size_t cb) {
    const std::size_t n = a.dim();
    {
        auto ra = a.cone_rays(ca), rb = b.cone_rays(cb);
        std::sort(ra.begin(), ra.end());
        std::sort(rb.begin(), rb.end());
        if (ra == rb) {
            RatVec p(n, 0);
            for (const auto& r : ra)
                for (std::size_t d = 0; d < n; ++d) p[d] += r[d];
            return p;
        }
    }
    if (facet_separates(a, ca, b, cb) || facet_separates(b, cb, a, ca)) return std::nullopt;

    // maximize s : lambda_i >= s, mu_j >= s, sum lambda = 1, sum lambda u = sum mu w.
    LinearProgram lp;
    lp.num_vars = 2 * n + 1;
    const std::size_t s = 2 * n;
    for (std::size_t d = 0; d < n; ++d) {
        RatVec row(lp.num_vars, 0);
        for (std::size_t k = 0; k < n; ++k) {
            row[k] = a.ray(a.cone(ca)[k])[d];
            row[n + k] = -b.ray(b.cone(cb)[k])[d];
        }
        lp.add(std::move(row), Sense::eq, 0);
    }
    {
        RatVec row(lp.num_vars, 0);
        for (std::size_t k = 0; k < n; ++k) row[k] = 1;
        lp.add(std::move(row), Sense::eq, 1);
    }
    for (std::size_t k = 0; k < 2 * n; ++k) {
        RatVec row(lp.num_vars, 0);
        row[k] = 1;
        row[s] = -1;
        lp.add(std::move(row), Sense::ge, 0);
    }
    lp.objective.assign(lp.num_vars, 0);
    lp.objective[s] = 1;
    LpResult res = solve_lp(lp);
    if (res.status != LpStatus::optimal || res.value <= 0) return std::nullopt;
    RatVec p(n, 0);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t d = 0; d < n; ++d) p[d] += res.x[k] * a.ray(a.cone(ca)[k])[d];
    return p;
}

std::vector<LatticeVector> intersection_extreme_rays(const Fan& a, std::size_t ca, const Fan& b, std::size_t cb) {
    const std::size_t n = a.dim();
    std::vector<RatVec> functionals;
    for (std::size_t k = 0; k < n; ++k) functionals.push_back(a.dual_functional(ca, k));
    for (std::size_t k = 0; k < n; ++k) functionals.push_back(b.dual_functional(cb, k));
    std::set<LatticeVector> found;
    if (n == 1) {
        for (const auto& r : a.cone_rays(ca)) {
            bool ok = true;
            for (const auto& f : functionals) ok = ok && dot(f, r) >= 0;
            if (ok) found.insert(r);
        }
        return {found.begin(), found.end()};
    }
    const std::size_t m = functionals.size();
    std::vector<bool> pick(m, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(n - 1), true);
    do {
        RatMatrix cols(n, RatVec(n - 1));
        std::size_t c = 0;
        for (std::size_t k = 0; k < m; ++k) {
            if (!pick[k]) continue;
            for (std::size_t d = 0; d < n; ++d) cols[d][c] = functionals[k][d];
            ++c;
        }
        auto dir = left_kernel_line(cols);
        if (!dir) continue;
        for (int sign : {1, -1}) {
            LatticeVector x = *dir;
            if (sign < 0)
                for (auto& v : x) v = -v;
            bool ok = true;
            for (const auto& f : functionals) {
                if (dot(f, x) < 0) {
                    ok = false;
                    break;
                }
            }
            if (ok) found.insert(x);
        }
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return {found.begin(), found.end()};
}

bool same_support(const Fan& a, const Fan& b) {
    if (a.dim() != b.dim()) return false;
    if (a.support_kind() == SupportKind::other || b.support_kind() == SupportKind::other)
        throw InputError("support comparison is only decided for complete or convex-cone supports");
    if (a.support_kind() != b.support_kind()) return false;
    if (a.support_kind() == SupportKind::complete) return true;
    for (const auto& r : a.rays())
        if (!try_locate(b, to_rat(r))) return false;
    for (const auto& r : b.rays())
        if (!try_locate(a, to_rat(r))) return false;
    return true;
}

}  // namespace toric
