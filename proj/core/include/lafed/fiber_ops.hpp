#pragma once

#include "lafed/section.hpp"

namespace lafed {

// Graded product: S acts on every bundle, A and T use the wedge product, D the
// cup product. (xi^I P)(xi^J Q) = (-1)^{|P||J|} xi^I xi^J (PQ) with |P| the
// unshifted payload degree.
Section fw_mul(const Section& a, const Section& b);
Section fw_wedge(const Section& u, const Section& v);
Section fw_cup(const Section& p, const Section& q);

// Schouten-Nijenhuis bracket on formal fiber polyvectors (bundle T), following
// [u, v ^ w] = [u, v] ^ w + (-1)^{k(l+1)} v ^ [u, w].
Section fw_schouten(const Section& u, const Section& v);

// Fiber Cartan calculus on bundle A.
Section fw_de_rham(const Section& w);
Section fw_contract(const Section& u, const Section& w);
Section fw_lie(const Section& u, const Section& w);

// Hochschild structures on fiber polydifferential operators (bundle D).
Section fw_multiplication(int cap = kExact);  // m = 1 (x) 1
Section fw_bullet(const Section& p, const Section& q);
Section fw_gerstenhaber(const Section& p, const Section& q);
Section fw_cochain_d(const Section& p);
// Composition of unary operators.
Section fw_compose(const Section& p, const Section& q);

// Fiber polyvector of degree <= 0 as an operator: functions stay functions,
// vector fields become unary operators.
Section as_operator(const Section& t);
// Fiber function as the unary multiplication operator.
Section as_multiplication(const Section& f);

// Hochschild chains of the fiber (bundle J).
Section fw_chain_action(const Section& p, const Section& c);
Section fw_chain_b(const Section& c);
// P applied to the groups of a chain of matching length, then restricted to
// the diagonal y_0 = .. = y_k = y. Lands in S.
Section fw_pair(const Section& p, const Section& c);
// a_0 (x) .. (x) a_k from fiber functions.
Section fw_chain(const std::vector<Section>& groups, int cap = kExact);

// Action of a T^0-valued form V (fiber vector fields) on any bundle.
Section vf_act(const Section& v, const Section& s);

}  // namespace lafed
