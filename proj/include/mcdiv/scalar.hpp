#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace mcdiv {

// Exact rational. mpq_class keeps numerator/denominator coprime with a
// positive denominator as long as every value is canonicalized on entry.
using Scalar = mpq_class;
using Integer = mpz_class;

Scalar parse_scalar(std::string_view text);
std::string to_string(const Scalar& x);

bool is_integer(const Scalar& x);
Integer floor_of(const Scalar& x);
Integer ceil_of(const Scalar& x);
std::int64_t to_int64(const Integer& x);
std::int64_t to_int64(const Scalar& x);  // requires an integer value

}  // namespace mcdiv
