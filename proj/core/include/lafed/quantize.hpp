#pragma once

#include <string>
#include <vector>

#include "lafed/cohomology.hpp"
#include "lafed/forms.hpp"
#include "lafed/jets.hpp"
#include "lafed/polyop.hpp"
#include "lafed/polyvector.hpp"

namespace lafed {

// Formal series in hbar; entry s is the coefficient of hbar^s.
using PolyvectorSeries = std::vector<EPolyvector>;
using OperatorSeries = std::vector<EPolyOp>;
using PbwSeries = std::vector<PbwElement>;

struct PoissonReport {
  EPolyvector jacobi;  // [pi, pi]
  bool ok = false;
};
PoissonReport poisson_validate(const AlgebroidChart& chart, const EPolyvector& pi);

// Coefficient of hbar^s in [pi_h, pi_h] for s <= max_order.
PolyvectorSeries jacobi_series(const AlgebroidChart& chart, const PolyvectorSeries& pi_h, int max_order);

struct Deformation {
  OperatorSeries coeffs;  // Pi_0 .. Pi_m
  int order() const { return static_cast<int>(coeffs.size()) - 1; }
};

// Pi = sum_s hbar^s / (2^s s!) pi^{i1 j1} .. pi^{is js} e_i1 .. e_is (x) e_j1 .. e_js
// for a constant bivector on an abelian chart.
Deformation moyal_deform(const AlgebroidChart& chart, const EPolyvector& pi, int m);

struct ClassicalLimitReport {
  bool unit = false;           // Pi_0 = 1 (x) 1
  bool antisymmetric = false;  // (Pi_1 - t Pi_1) / 2 = V(pi)
};
ClassicalLimitReport classical_limit(const Deformation& d, const EPolyvector& pi);

// Coefficients of [Pi, Pi]_G up to hbar^order.
OperatorSeries associativity_residual(const Enveloping& U, const Deformation& d);

struct EquivalenceReport {
  OperatorSeries residual;  // (Delta Psi) Pi' - Pi (Psi (x) Psi), per hbar order
  int leading_order = -1;   // first nonzero order, -1 if none up to m
  bool equivalent() const { return leading_order < 0; }
};
EquivalenceReport equivalence_check(const Enveloping& U, const Deformation& pi, const Deformation& pi2,
                                    const PbwSeries& psi, int m);

// Series product in UE[[hbar]] truncated at hbar^m.
PbwSeries series_mul(const Enveloping& U, const PbwSeries& a, const PbwSeries& b, int m);

// [u, pi_h] for u = sum hbar^s u_s with u_0 = 0, truncated at hbar^max_order.
PolyvectorSeries gauge_direction(const AlgebroidChart& chart, const PolyvectorSeries& u,
                                 const PolyvectorSeries& pi_h, int max_order);

struct DeformationComplexes {
  ComplexSlice polyvectors;  // ([pi_h, .], E-polyvectors[hbar] / hbar^K)
  ComplexSlice forms;        // (E-L_{pi_h}, E-forms[hbar] / hbar^K)
  std::vector<HomologyRow> polyvector_homology;
  std::vector<HomologyRow> form_homology;
};

// Basis: hbar^s x^a e_I (resp. xi^I) with s < K and |a| <= xcap. Rejects
// pi_h failing [pi_h, pi_h] = 0 mod hbar^(K+1) and differentials that leave
// the x-degree cap.
DeformationComplexes deformation_complexes(const AlgebroidChart& chart, const PolyvectorSeries& pi_h, int K,
                                           int xcap);

// A trace is tr(x^a) = sum_k hbar^k tau_k(x^a); the unknowns are the values
// tau_k(x^a) for k < K and |a| <= fcap.
struct TraceSpace {
  int K = 0;
  std::vector<XMono> monomials;     // function basis, |a| <= fcap
  std::vector<Vec> constraints;     // annihilated vectors (k, a) -> coefficient
  std::vector<Vec> basis;           // kernel: independent traces
  int index(int k, int a) const { return k * static_cast<int>(monomials.size()) + a; }
  // tr(F) for F given per hbar order; entry n is the hbar^n coefficient.
  std::vector<Q> apply(const Vec& tr, const std::vector<Poly>& f) const;
  // Coordinates of a function inside the capped space, or empty if it leaves it.
  bool in_space(const Poly& f) const;
};

// Flat jets of degree 1 are lifted from a basis of degree 0 chains x^b e^m*
// with |m| <= jet_cap and |b| <= fcap + jet_cap. The values j(pi_h) (through
// the HKR map) that stay inside x-degree <= fcap span the constraints.
TraceSpace trace_space(const Enveloping& U, const PolyvectorSeries& pi_h, int K, int fcap, int jet_cap);

// j(V(pi_h)) per hbar order for a degree 1 jet.
std::vector<Poly> evaluate_on_series(const EJet& j, const PolyvectorSeries& pi_h, int K);

}  // namespace lafed
