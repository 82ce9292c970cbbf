#pragma once

#include "lafed/chart.hpp"
#include "lafed/section.hpp"

namespace lafed {

// delta = xi^i d/dy^i. On chains it differentiates every group.
Section delta_diff(const Section& s);
// Contracting homotopy: y^k d/dxi^k (left derivative) divided by p + q on a
// monomial of y-degree p and xi-degree q. Not defined on chains.
Section kappa(const Section& s);
// s at y = xi = 0.
Section h_projection(const Section& s);
// E-de Rham differential on the base coefficients, fiber data as parameters.
Section e_d(const AlgebroidChart& chart, const Section& s);

// The generator of delta as a T^0-valued 1-form, sum_i xi^i d/dy^i.
Section delta_generator(int r);

}  // namespace lafed
