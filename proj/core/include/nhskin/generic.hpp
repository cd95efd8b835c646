#pragma once

#include "nhskin/chain.hpp"

namespace nhskin {

/// Scaled boundary determinant for a candidate eigenvalue of a chain with offsets up to +-2.
///
/// The bulk recurrence is solved by psi_n = sum_i c_i x_i^n over the roots of the
/// characteristic polynomial at lambda; the boundary rows of (H - lambda) applied to each
/// basis vector form a square matrix whose column- and row-normalised determinant is
/// returned. Repeated roots switch to the confluent basis n x^n.
double verify_generic(const ChainStencil& stencil, cplx lambda, cplx delta);

/// Same with the deformation already stored in the stencil.
double verify_generic(const ChainStencil& stencil, cplx lambda);

}  // namespace nhskin
