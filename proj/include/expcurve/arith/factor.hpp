#pragma once

#include <utility>
#include <vector>

#include "expcurve/arith/rational.hpp"

namespace expcurve {

/// Prime factorization of |n| (n != 0), primes ascending.
std::vector<std::pair<Integer, int>> factorize(const Integer& n);

std::vector<Integer> prime_divisors(const Integer& n);

/// Signed squarefree part: n = s * m^2 with s squarefree.
Integer squarefree_part(const Integer& n);

bool is_prime(const Integer& n);

}  // namespace expcurve
