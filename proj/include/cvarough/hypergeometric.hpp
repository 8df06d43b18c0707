#pragma once

namespace cvarough {

/// Gauss hypergeometric function 2F1(a, b; c; z) for real arguments and z < 1.
///
/// |z| <= 1/2 uses the power series directly. Negative z is mapped into [0, 1)
/// by the Pfaff transformation z -> z / (z - 1). Arguments in (1/2, 1) are summed
/// directly up to 0.9 and beyond that through the connection formula around
/// z = 1, which requires c - a - b not to be an integer.
///
/// Throws std::domain_error for z >= 1, c a non-positive integer, or when no
/// convergent evaluation path is available.
double gauss_2f1(double a, double b, double c, double z);

}  // namespace cvarough
