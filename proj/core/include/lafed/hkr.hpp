#pragma once

#include "lafed/forms.hpp"
#include "lafed/jets.hpp"
#include "lafed/polyop.hpp"
#include "lafed/polyvector.hpp"

namespace lafed {

// v_0 ^ .. ^ v_k -> 1/(k+1)! sum_sigma sign(sigma) v_sigma0 (x) .. (x) v_sigmak
EPolyOp hkr_V(const EPolyvector& u);

// C(c)(v) = c(V(v)): a chain of degree -m becomes an m-form, a function chain
// stays a function. r is the rank of E. Throws BudgetExhausted if the chain's cap is below m.
EForm connes_C(const EChain& c, int r);

}  // namespace lafed
