#pragma once

#include <vector>

#include "unilab/rational.hpp"
#include "unilab/util.hpp"

namespace unilab {

/// Exact solve of A x = b: per-row denominators are cleared to integers,
/// the augmented system is reduced by fraction-free (Bareiss)
/// elimination, and back substitution runs over rationals. Throws
/// singular_system_error when no nonzero pivot exists.
std::vector<Rational> solve_dense(const Matrix<Rational>& a, const std::vector<Rational>& b);

/// Expected steps to reach the target set from every state of a
/// row-stochastic chain (`rows` is (n+1)x(n+1), is_target flags the
/// absorbing set). Uses state elimination with the pivot computed as the
/// positive sum of the row's outflow, so no subtraction ever occurs and
/// results keep full relative accuracy even when they dwarf 1/epsilon.
/// Entries overflow to +infinity past double range. Throws
/// singular_system_error when a state has no outflow at all (target
/// unreachable).
std::vector<double> absorbing_hitting_times(const Matrix<double>& rows,
                                            const std::vector<char>& is_target);

}  // namespace unilab
