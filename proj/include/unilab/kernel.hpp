#pragma once

#include <vector>

#include "unilab/rational.hpp"
#include "unilab/util.hpp"

namespace unilab {

/// Row-stochastic offspring-unitation transition matrix under bitwise
/// mutation at rate q: rows(i, j) = P(offspring has j ones | parent has i).
/// Rows for i > n/2 are mirrors of rows for n-i (bit-complement symmetry),
/// so rows(i, j) == rows(n-i, n-j) holds bit-exactly in both backends.
template <class T>
struct MutationKernel {
  int n = 0;
  T q{};
  Matrix<T> rows;
};

/// Row i of the kernel, by exact enumeration over the number of flipped
/// ones (a) and flipped zeros (b):
///   P(j) = sum_{a-b = i-j} C(i,a) C(n-i,b) q^(a+b) (1-q)^(n-a-b).
std::vector<Rational> transition_pmf(int n, int i, const Rational& q);

/// Float backend: the same sum with binomial terms accumulated in the log
/// domain, so entries stay accurate far below double underflow of the
/// individual factors.
std::vector<double> transition_pmf(int n, int i, double q);

MutationKernel<Rational> build_kernel(int n, const Rational& q);
MutationKernel<double> build_kernel(int n, double q);

}  // namespace unilab
