#pragma once

#include "provel/syntax.hpp"

namespace provel {

/// The n-level diamond-chain benchmark TBox: per level i, A_{i-1} reaches A_i
/// either through B_i (labels u_i, v_i) or through C_i (labels w_i, x_i).
/// A0 <= An consequently carries 2^n monomials.
AnnotatedTBox sword_tbox(int n);

}  // namespace provel
