#pragma once

#include "k3lat/matrix.hpp"

namespace k3lat {

// Smith normal form U*M*V = D with U, V unimodular, D diagonal with
// d_1 | d_2 | ... and nonnegative diagonal entries.
struct SmithForm {
    IMat d;  // same shape as input
    IMat u;  // rows(M) x rows(M)
    IMat v;  // cols(M) x cols(M)
};

SmithForm smith_normal_form(const IMat& m);

// Basis of the integer kernel {x : M x = 0}, returned as columns.
// The basis is saturated: it generates the full kernel sublattice of Z^cols.
std::vector<IVec> integer_kernel(const IMat& m);

}  // namespace k3lat
