#pragma once

#include "lafed/connection.hpp"
#include "lafed/forms.hpp"
#include "lafed/section.hpp"

namespace lafed {

// -xi^i Gamma_ij^k y^j d/dy^k
Section connection_field(const Connection& g);
// -1/2 xi^i xi^j (R_ij)_k^l y^k d/dy^l
Section curvature_field(const AlgebroidChart& chart, const Connection& g);

// nabla = E-d + Gamma. on any bundle. Rejects torsionful connections.
Section nabla_apply(const AlgebroidChart& chart, const Connection& g, const Section& s);

struct FedosovData {
  AlgebroidChart chart;
  Connection connection;
  int order = 0;  // N
  Section gamma;  // connection field
  Section curvature;
  Section a;      // y-degree >= 2, exact up to y-degree N
  int certified_order = -1;
  int rounds = 0;
};

// A <- kappa R + kappa(nabla A + 1/2 [A, A]) for N - 1 rounds or until it
// stops changing.
FedosovData build_fedosov(const AlgebroidChart& chart, const Connection& g, int order);

// C = R + nabla A - delta A + 1/2 [A, A] for an arbitrary A.
Section fedosov_residual(const FedosovData& fd, const Section& a);
// Largest m such that the terms of s of y-degree <= m vanish and are exact.
int vanishing_order(const Section& s);

// nabla with the data's connection, no torsion check.
Section fedosov_nabla(const FedosovData& fd, const Section& s);
// D = nabla - delta + A.
Section fedosov_D(const FedosovData& fd, const Section& s);
// D with a replacement A, for residual and transport checks.
Section fedosov_D_with(const FedosovData& fd, const Section& a, const Section& s);

// Chart data as y-constant fiber data and back (the y = xi = 0 part).
Section fiber_polyvector(const EPolyvector& u);  // e_I -> d/dy^I
Section fiber_form(const EForm& w);              // xi^I -> dy^I
EPolyvector base_polyvector(const Section& t);
EForm base_form(const Section& a);
// Coefficient of xi^i, i.e. the contraction with e_i of the E-form part.
Section xi_component(const Section& s, int i);

// Flat lift of a delta-closed section of xi-degree 0 and y-degree 0.
Section lift_lambda(const FedosovData& fd, const Section& u);

}  // namespace lafed
