#include "toric/lp.hpp"

#include "toric/errors.hpp"

namespace toric {

namespace {

struct Tableau {
    std::size_t rows = 0;
    std::size_t cols = 0;  // excluding rhs
    RatMatrix t;           // rows x (cols + 1)
    RatVec z;              // reduced costs, cols + 1 (last = objective value)
    std::vector<std::size_t> basis;
    std::vector<bool> blocked;  // columns that may not enter

    void pivot(std::size_t r, std::size_t c) {
        Rat p = t[r][c];
        for (auto& x : t[r]) {
            if (x != 0) x /= p;
        }
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || t[i][c] == 0) continue;
            Rat f = t[i][c];
            for (std::size_t j = 0; j <= cols; ++j) {
                if (t[r][j] != 0) t[i][j] -= f * t[r][j];
            }
        }
        if (z[c] != 0) {
            Rat f = z[c];
            for (std::size_t j = 0; j <= cols; ++j) {
                if (t[r][j] != 0) z[j] -= f * t[r][j];
            }
        }
        basis[r] = c;
    }

    // z_j = sum_i c_B(i) t_ij - c_j  (maximization)
    void price(const RatVec& cost) {
        z.assign(cols + 1, 0);
        for (std::size_t j = 0; j < cols; ++j) z[j] = -cost[j];
        for (std::size_t i = 0; i < rows; ++i) {
            const Rat& cb = cost[basis[i]];
            if (cb == 0) continue;
            for (std::size_t j = 0; j <= cols; ++j) {
                if (t[i][j] != 0) z[j] += cb * t[i][j];
            }
        }
    }

    // Returns false when unbounded.
    bool optimize() {
        for (;;) {
            std::size_t enter = cols;
            for (std::size_t j = 0; j < cols; ++j) {
                if (!blocked[j] && z[j] < 0) {
                    enter = j;
                    break;
                }
            }
            if (enter == cols) return true;
            std::size_t leave = rows;
            Rat best;
            for (std::size_t i = 0; i < rows; ++i) {
                if (t[i][enter] <= 0) continue;
                Rat ratio = t[i][cols] / t[i][enter];
                if (leave == rows || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == rows) return false;
            pivot(leave, enter);
        }
    }
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
    const std::size_t n = lp.num_vars;
    auto is_free = [&](std::size_t i) { return !lp.free_var.empty() && lp.free_var[i]; };

    // Column layout: structural (split for free vars), slacks, artificials.
    std::vector<std::size_t> pos_col(n), neg_col(n, SIZE_MAX);
    std::size_t cols = 0;
    for (std::size_t i = 0; i < n; ++i) {
        pos_col[i] = cols++;
        if (is_free(i)) neg_col[i] = cols++;
    }
    const std::size_t structural = cols;
    const std::size_t m = lp.constraints.size();

    struct Row {
        RatVec a;
        Sense sense;
        Rat rhs;
    };
    std::vector<Row> rows;
    rows.reserve(m);
    for (const auto& c : lp.constraints) {
        if (c.coeffs.size() != n) throw InvariantError("LP constraint width mismatch");
        Row r{RatVec(structural, 0), c.sense, c.rhs};
        for (std::size_t i = 0; i < n; ++i) {
            r.a[pos_col[i]] = c.coeffs[i];
            if (neg_col[i] != SIZE_MAX) r.a[neg_col[i]] = -c.coeffs[i];
        }
        if (r.rhs < 0) {
            for (auto& x : r.a) x = -x;
            r.rhs = -r.rhs;
            if (r.sense == Sense::le)
                r.sense = Sense::ge;
            else if (r.sense == Sense::ge)
                r.sense = Sense::le;
        }
        rows.push_back(std::move(r));
    }

    std::vector<std::size_t> slack_col(m, SIZE_MAX), art_col(m, SIZE_MAX);
    for (std::size_t i = 0; i < m; ++i)
        if (rows[i].sense != Sense::eq) slack_col[i] = cols++;
    const std::size_t first_art = cols;
    for (std::size_t i = 0; i < m; ++i)
        if (rows[i].sense != Sense::le) art_col[i] = cols++;

    Tableau tab;
    tab.rows = m;
    tab.cols = cols;
    tab.t.assign(m, RatVec(cols + 1, 0));
    tab.basis.assign(m, 0);
    tab.blocked.assign(cols, false);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < structural; ++j) tab.t[i][j] = rows[i].a[j];
        if (slack_col[i] != SIZE_MAX) tab.t[i][slack_col[i]] = rows[i].sense == Sense::le ? 1 : -1;
        if (art_col[i] != SIZE_MAX) {
            tab.t[i][art_col[i]] = 1;
            tab.basis[i] = art_col[i];
        } else {
            tab.basis[i] = slack_col[i];
        }
        tab.t[i][cols] = rows[i].rhs;
    }

    LpResult result;
    if (first_art < cols) {
        RatVec cost(cols, 0);
        for (std::size_t j = first_art; j < cols; ++j) cost[j] = -1;
        tab.price(cost);
        tab.optimize();
        if (tab.z[cols] != 0) {
            result.status = LpStatus::infeasible;
            return result;
        }
        // Drive zero-level artificials out of the basis; drop redundant rows.
        for (std::size_t i = 0; i < tab.rows;) {
            if (tab.basis[i] < first_art) {
                ++i;
                continue;
            }
            std::size_t enter = first_art;
            for (std::size_t j = 0; j < first_art; ++j) {
                if (tab.t[i][j] != 0) {
                    enter = j;
                    break;
                }
            }
            if (enter < first_art) {
                tab.pivot(i, enter);
                ++i;
            } else {
                tab.t.erase(tab.t.begin() + static_cast<std::ptrdiff_t>(i));
                tab.basis.erase(tab.basis.begin() + static_cast<std::ptrdiff_t>(i));
                --tab.rows;
            }
        }
        for (std::size_t j = first_art; j < cols; ++j) tab.blocked[j] = true;
    }

    RatVec cost(cols, 0);
    if (!lp.objective.empty()) {
        for (std::size_t i = 0; i < n; ++i) {
            cost[pos_col[i]] = lp.objective[i];
            if (neg_col[i] != SIZE_MAX) cost[neg_col[i]] = -lp.objective[i];
        }
    }
    tab.price(cost);
    if (!tab.optimize()) {
        result.status = LpStatus::unbounded;
        return result;
    }

    RatVec col_value(cols, 0);
    std::vector<bool> col_basic(cols, false);
    for (std::size_t i = 0; i < tab.rows; ++i) {
        col_value[tab.basis[i]] = tab.t[i][cols];
        col_basic[tab.basis[i]] = true;
    }
    result.status = LpStatus::optimal;
    result.x.assign(n, 0);
    result.basic.assign(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        result.x[i] = col_value[pos_col[i]];
        if (neg_col[i] != SIZE_MAX) result.x[i] -= col_value[neg_col[i]];
        result.basic[i] = col_basic[pos_col[i]];
    }
    result.value = lp.objective.empty() ? Rat(0) : dot(lp.objective, result.x);
    return result;
}

}  // namespace toric
