#pragma once

#include "arreg/algebra.hpp"

namespace arreg {

/// Monic characteristic polynomial det(tI - A) by the division-free Berkowitz
/// scheme; returns coefficients c with c[0] = 1 and deg t^{n-k} at c[k].
std::vector<Scalar> charpoly(const Matrix& a);

/// Jacobson radical (largest nilpotent two-sided ideal).  Over Q this is the
/// kernel of the regular trace form; over F_p the trace form is refined by
/// the characteristic coefficients c_{p^i}, which are linear on the shrinking
/// chain of ideals.  The result is verified to be a nilpotent ideal.
Subspace radical(const StructureAlgebra& a);

/// Smallest k with s^k = 0 under span products, or 0 if s is not nilpotent.
std::size_t nilpotency_index(const StructureAlgebra& a, const Subspace& s);

}  // namespace arreg
