#include "toric/exact.hpp"

#include <algorithm>
#include <sstream>

#include "toric/errors.hpp"

namespace toric {

Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw InputError("zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

Rat parse_rat(const std::string& text) {
    if (text.empty()) throw InputError("empty rational");
    Rat r;
    if (r.set_str(text, 10) != 0) throw InputError("malformed rational '" + text + "'");
    if (r.get_den() == 0) throw InputError("zero denominator in '" + text + "'");
    r.canonicalize();
    return r;
}

Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Rat floor(const Rat& x) {
    return Rat(floor_div(x.get_num(), x.get_den()));
}

Rat frac(const Rat& x) {
    Rat r = x - floor(x);
    return r;
}

Int gcd_of(const IntVec& v) {
    Int g = 0;
    for (const auto& x : v) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    }
    return g;
}

Int lcm_of_denominators(const RatVec& v) {
    Int l = 1;
    for (const auto& x : v) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    }
    return l;
}

RatVec to_rat(const IntVec& v) {
    return RatVec(v.begin(), v.end());
}

RatMatrix to_rat(const IntMatrix& m) {
    RatMatrix out;
    out.reserve(m.size());
    for (const auto& row : m) out.push_back(to_rat(row));
    return out;
}

bool is_integral(const RatVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x.get_den() == 1; });
}

IntVec to_int(const RatVec& v) {
    IntVec out;
    out.reserve(v.size());
    for (const auto& x : v) {
        if (x.get_den() != 1) throw InvariantError("expected integral vector, got " + to_string(v));
        out.push_back(x.get_num());
    }
    return out;
}

IntMatrix identity_int(std::size_t n) {
    IntMatrix m(n, IntVec(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

RatMatrix identity_rat(std::size_t n) {
    RatMatrix m(n, RatVec(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

Int dot(const IntVec& a, const IntVec& b) {
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rat dot(const RatVec& a, const RatVec& b) {
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rat dot(const RatVec& a, const IntVec& b) {
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
    const std::size_t cols = b.empty() ? 0 : b[0].size();
    IntMatrix out(a.size(), IntVec(cols, 0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < cols; ++j) out[i][j] += a[i][k] * b[k][j];
        }
    return out;
}

RatMatrix multiply(const RatMatrix& a, const RatMatrix& b) {
    const std::size_t cols = b.empty() ? 0 : b[0].size();
    RatMatrix out(a.size(), RatVec(cols, 0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < cols; ++j) out[i][j] += a[i][k] * b[k][j];
        }
    return out;
}

RatVec row_times(const RatVec& x, const RatMatrix& m) {
    const std::size_t cols = m.empty() ? 0 : m[0].size();
    RatVec out(cols, 0);
    for (std::size_t k = 0; k < m.size(); ++k) {
        if (x[k] == 0) continue;
        for (std::size_t j = 0; j < cols; ++j) out[j] += x[k] * m[k][j];
    }
    return out;
}

RatVec row_times(const RatVec& x, const IntMatrix& m) {
    const std::size_t cols = m.empty() ? 0 : m[0].size();
    RatVec out(cols, 0);
    for (std::size_t k = 0; k < m.size(); ++k) {
        if (x[k] == 0) continue;
        for (std::size_t j = 0; j < cols; ++j) out[j] += x[k] * m[k][j];
    }
    return out;
}

IntVec row_times(const IntVec& x, const IntMatrix& m) {
    const std::size_t cols = m.empty() ? 0 : m[0].size();
    IntVec out(cols, 0);
    for (std::size_t k = 0; k < m.size(); ++k) {
        if (x[k] == 0) continue;
        for (std::size_t j = 0; j < cols; ++j) out[j] += x[k] * m[k][j];
    }
    return out;
}

IntMatrix transpose(const IntMatrix& m) {
    if (m.empty()) return {};
    IntMatrix t(m[0].size(), IntVec(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[0].size(); ++j) t[j][i] = m[i][j];
    return t;
}

RatMatrix transpose(const RatMatrix& m) {
    if (m.empty()) return {};
    RatMatrix t(m[0].size(), RatVec(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[0].size(); ++j) t[j][i] = m[i][j];
    return t;
}

Int determinant(const IntMatrix& input) {
    const std::size_t n = input.size();
    if (n == 0) return 1;
    IntMatrix a = input;
    Int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Int v = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

namespace {

// In-place row reduction; returns rank and accumulates the determinant sign/product.
std::size_t eliminate(RatMatrix& a, Rat* det) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    std::size_t r = 0;
    if (det) *det = 1;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) {
            if (det) *det = 0;
            continue;
        }
        if (p != r) {
            std::swap(a[p], a[r]);
            if (det) *det = -*det;
        }
        if (det) *det *= a[r][c];
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (a[i][c] == 0) continue;
            Rat f = a[i][c] / a[r][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        ++r;
    }
    return r;
}

}  // namespace

Rat determinant(const RatMatrix& m) {
    if (m.empty()) return 1;
    RatMatrix a = m;
    Rat det;
    std::size_t r = eliminate(a, &det);
    return r == m.size() ? det : Rat(0);
}

std::size_t rank(const RatMatrix& m) {
    RatMatrix a = m;
    return eliminate(a, nullptr);
}

std::optional<RatMatrix> inverse(const RatMatrix& m) {
    const std::size_t n = m.size();
    RatMatrix a = m;
    RatMatrix inv = identity_rat(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) return std::nullopt;
        std::swap(a[p], a[c]);
        std::swap(inv[p], inv[c]);
        Rat piv = a[c][c];
        for (std::size_t j = 0; j < n; ++j) {
            a[c][j] /= piv;
            inv[c][j] /= piv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a[i][c] == 0) continue;
            Rat f = a[i][c];
            for (std::size_t j = 0; j < n; ++j) {
                a[i][j] -= f * a[c][j];
                inv[i][j] -= f * inv[c][j];
            }
        }
    }
    return inv;
}

std::optional<IntVec> left_kernel_line(const RatMatrix& m) {
    // Left kernel of M = right kernel of M^T.
    RatMatrix a = transpose(m);
    const std::size_t rows = a.size();
    const std::size_t cols = m.size();
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        Rat piv = a[r][c];
        for (std::size_t j = 0; j < cols; ++j) a[r][j] /= piv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rat f = a[i][c];
            for (std::size_t j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        pivot_col.push_back(c);
        ++r;
    }
    if (cols - r != 1) return std::nullopt;
    std::size_t free_col = 0;
    {
        std::size_t k = 0;
        for (std::size_t c = 0; c < cols; ++c) {
            if (k < pivot_col.size() && pivot_col[k] == c) {
                ++k;
                continue;
            }
            free_col = c;
            break;
        }
    }
    RatVec x(cols, 0);
    x[free_col] = 1;
    for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = -a[i][free_col];
    return primitive_direction(x);
}

IntVec primitive_direction(const RatVec& v) {
    Int l = lcm_of_denominators(v);
    IntVec out;
    out.reserve(v.size());
    for (const auto& x : v) {
        Rat s = x * l;
        out.push_back(s.get_num());
    }
    Int g = gcd_of(out);
    if (g == 0) throw InputError("zero vector has no primitive direction");
    for (auto& x : out) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    return out;
}

bool lex_less(const IntVec& a, const IntVec& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::string to_string(const Int& x) {
    return x.get_str();
}

std::string to_string(const Rat& x) {
    return x.get_str();
}

std::string to_string(const IntVec& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
    os << ')';
    return os.str();
}

std::string to_string(const RatVec& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
    os << ')';
    return os.str();
}

}  // namespace toric
