#pragma once

// Exact integer / rational vectors and matrices on top of GMP.
// Matrices are row-major; vectors are rows unless noted.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace toric {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;
using IntMatrix = std::vector<IntVec>;
using RatMatrix = std::vector<RatVec>;

Rat make_rat(const Int& num, const Int& den);
Rat parse_rat(const std::string& text);  // "p", "p/q", "-p/q"

Int floor_div(const Int& a, const Int& b);
Rat floor(const Rat& x);
Rat frac(const Rat& x);  // x - floor(x), in [0,1)

Int gcd_of(const IntVec& v);
Int lcm_of_denominators(const RatVec& v);

RatVec to_rat(const IntVec& v);
RatMatrix to_rat(const IntMatrix& m);
bool is_integral(const RatVec& v);
IntVec to_int(const RatVec& v);  // throws InvariantError if not integral

IntMatrix identity_int(std::size_t n);
RatMatrix identity_rat(std::size_t n);

Int dot(const IntVec& a, const IntVec& b);
Rat dot(const RatVec& a, const RatVec& b);
Rat dot(const RatVec& a, const IntVec& b);

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
RatMatrix multiply(const RatMatrix& a, const RatMatrix& b);
/// x·M for a row vector x.
RatVec row_times(const RatVec& x, const RatMatrix& m);
RatVec row_times(const RatVec& x, const IntMatrix& m);
IntVec row_times(const IntVec& x, const IntMatrix& m);

IntMatrix transpose(const IntMatrix& m);
RatMatrix transpose(const RatMatrix& m);

/// Fraction-free Bareiss elimination.
Int determinant(const IntMatrix& m);
Rat determinant(const RatMatrix& m);
std::size_t rank(const RatMatrix& m);
std::optional<RatMatrix> inverse(const RatMatrix& m);

/// A nonzero vector spanning the left kernel {a : a·M = 0} when it is
/// one-dimensional; nullopt otherwise. Scaled to a primitive integer vector.
std::optional<IntVec> left_kernel_line(const RatMatrix& m);

/// Reduce a rational vector to the primitive integer vector on the same ray.
IntVec primitive_direction(const RatVec& v);

bool lex_less(const IntVec& a, const IntVec& b);

std::string to_string(const Int& x);
std::string to_string(const Rat& x);
std::string to_string(const IntVec& v);
std::string to_string(const RatVec& v);

}  // namespace toric
