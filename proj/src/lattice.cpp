#include "toric/lattice.hpp"

#include <algorithm>

#include "toric/errors.hpp"

namespace toric {

namespace {

void add_row_multiple(IntMatrix& m, std::size_t dst, std::size_t src, const Int& q) {
    // m[dst] -= q * m[src]
    if (q == 0) return;
    for (std::size_t j = 0; j < m[dst].size(); ++j) {
        if (m[src][j] != 0) m[dst][j] -= q * m[src][j];
    }
}

void add_col_multiple(IntMatrix& m, std::size_t dst, std::size_t src, const Int& q) {
    if (q == 0) return;
    for (auto& row : m) {
        if (row[src] != 0) row[dst] -= q * row[src];
    }
}

// Shared HNF routine. Rank-deficient rows end up zero at the top when allowed.
HermiteResult hnf_impl(const IntMatrix& m, bool allow_deficient) {
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    HermiteResult res{m, identity_int(rows)};
    IntMatrix& h = res.h;
    IntMatrix& u = res.u;

    std::size_t c = cols;
    for (std::size_t rr = rows; rr-- > 0;) {
        // Find a pivot column at or left of c with a nonzero among rows 0..rr.
        bool placed = false;
        while (c > 0 && !placed) {
            --c;
            for (;;) {
                std::size_t best = rows;
                for (std::size_t i = 0; i <= rr; ++i) {
                    if (h[i][c] == 0) continue;
                    if (best == rows || abs(h[i][c]) < abs(h[best][c])) best = i;
                }
                if (best == rows) break;
                if (best != rr) {
                    std::swap(h[best], h[rr]);
                    std::swap(u[best], u[rr]);
                }
                bool clean = true;
                for (std::size_t i = 0; i < rr; ++i) {
                    if (h[i][c] == 0) continue;
                    Int q;
                    mpz_tdiv_q(q.get_mpz_t(), h[i][c].get_mpz_t(), h[rr][c].get_mpz_t());
                    add_row_multiple(h, i, rr, q);
                    add_row_multiple(u, i, rr, q);
                    if (h[i][c] != 0) clean = false;
                }
                if (clean) {
                    placed = true;
                    break;
                }
            }
        }
        if (!placed) {
            if (!allow_deficient) throw InputError("hermite_normal_form: matrix is rank-deficient");
            break;
        }
        if (h[rr][c] < 0) {
            for (auto& x : h[rr]) x = -x;
            for (auto& x : u[rr]) x = -x;
        }
        for (std::size_t i = rr + 1; i < rows; ++i) {
            Int q = floor_div(h[i][c], h[rr][c]);
            add_row_multiple(h, i, rr, q);
            add_row_multiple(u, i, rr, q);
        }
    }
    return res;
}

}  // namespace

HermiteResult hermite_normal_form(const IntMatrix& m) {
    if (m.empty()) throw InputError("hermite_normal_form: empty matrix");
    const std::size_t cols = m[0].size();
    for (const auto& row : m)
        if (row.size() != cols) throw InputError("hermite_normal_form: ragged matrix");
    if (m.size() > cols) throw InputError("hermite_normal_form: more rows than columns cannot have full row rank");
    return hnf_impl(m, false);
}

SmithResult smith_normal_form(const IntMatrix& m) {
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    for (const auto& row : m)
        if (row.size() != cols) throw InputError("smith_normal_form: ragged matrix");
    SmithResult res{m, identity_int(rows), identity_int(cols)};
    IntMatrix& d = res.d;
    const std::size_t diag = std::min(rows, cols);
    for (std::size_t t = 0; t < diag; ++t) {
        for (;;) {
            std::size_t bi = rows, bj = cols;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j) {
                    if (d[i][j] == 0) continue;
                    if (bi == rows || abs(d[i][j]) < abs(d[bi][bj])) {
                        bi = i;
                        bj = j;
                    }
                }
            if (bi == rows) return res;  // remaining block is zero
            if (bi != t) {
                std::swap(d[bi], d[t]);
                std::swap(res.u[bi], res.u[t]);
            }
            if (bj != t) {
                for (auto& row : d) std::swap(row[bj], row[t]);
                for (auto& row : res.v) std::swap(row[bj], row[t]);
            }
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (d[i][t] == 0) continue;
                Int q;
                mpz_tdiv_q(q.get_mpz_t(), d[i][t].get_mpz_t(), d[t][t].get_mpz_t());
                add_row_multiple(d, i, t, q);
                add_row_multiple(res.u, i, t, q);
                if (d[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (d[t][j] == 0) continue;
                Int q;
                mpz_tdiv_q(q.get_mpz_t(), d[t][j].get_mpz_t(), d[t][t].get_mpz_t());
                add_col_multiple(d, j, t, q);
                add_col_multiple(res.v, j, t, q);
                if (d[t][j] != 0) clean = false;
            }
            if (!clean) continue;
            std::size_t bad = rows;
            for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
                for (std::size_t j = t + 1; j < cols; ++j) {
                    if (!mpz_divisible_p(d[i][j].get_mpz_t(), d[t][t].get_mpz_t())) {
                        bad = i;
                        break;
                    }
                }
            if (bad == rows) break;
            add_row_multiple(d, t, bad, Int(-1));
            add_row_multiple(res.u, t, bad, Int(-1));
        }
        if (d[t][t] < 0) {
            for (auto& x : d[t]) x = -x;
            for (auto& x : res.u[t]) x = -x;
        }
    }
    return res;
}

IntVec invariant_factors(const IntMatrix& m) {
    SmithResult s = smith_normal_form(m);
    IntVec out;
    const std::size_t diag = std::min(s.d.size(), s.d.empty() ? 0 : s.d[0].size());
    for (std::size_t i = 0; i < diag; ++i) out.push_back(s.d[i][i]);
    return out;
}

LatticeVector primitive(const LatticeVector& v) {
    Int g = gcd_of(v);
    if (g == 0) throw InputError("primitive: zero vector");
    LatticeVector out = v;
    for (auto& x : out) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    return out;
}

LatticeBasis LatticeBasis::standard(std::size_t n) {
    LatticeBasis b;
    b.denominator_ = 1;
    b.hnf_ = identity_int(n);
    return b;
}

LatticeBasis LatticeBasis::from_generators(const std::vector<RatVec>& gens) {
    if (gens.empty()) throw InputError("lattice: no generators");
    const std::size_t n = gens[0].size();
    Int den = 1;
    for (const auto& g : gens) {
        if (g.size() != n) throw InputError("lattice: generator dimension mismatch");
        Int l = lcm_of_denominators(g);
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), l.get_mpz_t());
    }
    IntMatrix m;
    m.reserve(gens.size());
    for (const auto& g : gens) {
        IntVec row;
        row.reserve(n);
        for (const auto& x : g) {
            Rat s = x * den;
            row.push_back(s.get_num());
        }
        m.push_back(std::move(row));
    }
    HermiteResult hr = hnf_impl(m, true);
    IntMatrix basis(hr.h.end() - static_cast<std::ptrdiff_t>(std::min(n, hr.h.size())), hr.h.end());
    if (basis.size() != n || std::any_of(basis.begin(), basis.end(), [](const IntVec& r) {
            return std::all_of(r.begin(), r.end(), [](const Int& x) { return x == 0; });
        }))
        throw InputError("lattice: generators do not span a full-rank lattice");
    // Minimal denominator: divide out the common factor of den and all entries.
    Int g = den;
    for (const auto& row : basis)
        for (const auto& x : row) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    for (auto& row : basis)
        for (auto& x : row) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den.get_mpz_t(), den.get_mpz_t(), g.get_mpz_t());
    LatticeBasis b;
    b.denominator_ = den;
    b.hnf_ = std::move(basis);
    return b;
}

RatMatrix LatticeBasis::basis() const {
    RatMatrix out;
    for (const auto& row : hnf_) {
        RatVec r;
        for (const auto& x : row) r.push_back(make_rat(x, denominator_));
        out.push_back(std::move(r));
    }
    return out;
}

Rat LatticeBasis::covolume() const {
    Int det = abs(determinant(hnf_));
    Int denpow;
    mpz_pow_ui(denpow.get_mpz_t(), denominator_.get_mpz_t(), hnf_.size());
    return make_rat(det, denpow);
}

RatVec LatticeBasis::coordinates(const RatVec& x) const {
    if (x.size() != dim()) throw InputError("lattice: dimension mismatch");
    // x = y * (H / D) with H lower triangular: solve from the last column back.
    const std::size_t n = dim();
    RatVec y(n, Rat(0));
    for (std::size_t j = n; j-- > 0;) {
        Rat s = x[j] * denominator_;
        for (std::size_t i = j + 1; i < n; ++i) s -= y[i] * hnf_[i][j];
        y[j] = s / hnf_[j][j];
    }
    return y;
}

bool LatticeBasis::contains(const RatVec& x) const {
    return is_integral(coordinates(x));
}

RatVec LatticeBasis::to_ambient(const IntVec& coords) const {
    IntVec s = row_times(coords, hnf_);
    RatVec out;
    for (const auto& x : s) out.push_back(make_rat(x, denominator_));
    return out;
}

bool LatticeBasis::is_standard() const {
    return denominator_ == 1 && hnf_ == identity_int(hnf_.size());
}

namespace {

IntMatrix rays_in_lattice(const std::vector<RatVec>& rays, const LatticeBasis& lattice) {
    if (rays.size() != lattice.dim())
        throw InputError("cone: expected " + std::to_string(lattice.dim()) + " rays, got " +
                         std::to_string(rays.size()));
    IntMatrix out;
    for (const auto& r : rays) {
        RatVec c = lattice.coordinates(r);
        if (!is_integral(c)) throw InputError("cone: ray " + to_string(r) + " is not in the lattice");
        out.push_back(to_int(c));
    }
    return out;
}

std::vector<RatVec> as_rat(const std::vector<IntVec>& rays) {
    std::vector<RatVec> out;
    for (const auto& r : rays) out.push_back(to_rat(r));
    return out;
}

std::vector<BoxPoint> enumerate_box(const IntMatrix& a) {
    const std::size_t n = a.size();
    auto a_inv = inverse(to_rat(a));
    if (!a_inv) throw InputError("cone: rays are linearly dependent");
    SmithResult s = smith_normal_form(a);
    auto v_inv_rat = inverse(to_rat(s.v));
    IntMatrix v_inv;
    for (const auto& row : *v_inv_rat) v_inv.push_back(to_int(row));

    std::vector<BoxPoint> out;
    IntVec q(n, 0);
    for (;;) {
        // advance odometer over 0 <= q_i < d_i
        std::size_t i = 0;
        for (; i < n; ++i) {
            ++q[i];
            if (q[i] < s.d[i][i]) break;
            q[i] = 0;
        }
        if (i == n) break;
        IntVec p = row_times(q, v_inv);
        RatVec t = row_times(to_rat(p), *a_inv);
        for (auto& x : t) x = frac(x);
        RatVec point = row_times(t, a);
        out.push_back({std::move(point), std::move(t)});
    }
    std::sort(out.begin(), out.end(), [](const BoxPoint& x, const BoxPoint& y) {
        return std::lexicographical_compare(x.barycentric.begin(), x.barycentric.end(), y.barycentric.begin(),
                                            y.barycentric.end());
    });
    return out;
}

}  // namespace

Int cone_multiplicity(const std::vector<RatVec>& rays, const LatticeBasis& lattice) {
    IntMatrix a = rays_in_lattice(rays, lattice);
    Int det = abs(determinant(a));
    if (det == 0) throw InputError("cone_multiplicity: rays are linearly dependent");
    return det;
}

Int cone_multiplicity(const std::vector<IntVec>& rays, const LatticeBasis& lattice) {
    return cone_multiplicity(as_rat(rays), lattice);
}

std::vector<BoxPoint> box_points(const std::vector<RatVec>& rays, const LatticeBasis& lattice) {
    IntMatrix a = rays_in_lattice(rays, lattice);
    std::vector<BoxPoint> pts = enumerate_box(a);
    for (auto& p : pts) p.point = lattice.to_ambient(to_int(p.point));
    return pts;
}

std::vector<BoxPoint> box_points(const std::vector<IntVec>& rays, const LatticeBasis& lattice) {
    return box_points(as_rat(rays), lattice);
}

std::vector<BoxPoint> box_points(const std::vector<IntVec>& rays) {
    if (rays.empty()) return {};
    for (const auto& r : rays)
        if (r.size() != rays.size()) throw InputError("box_points: expected a square ray matrix");
    return enumerate_box(rays);
}

}  // namespace toric
