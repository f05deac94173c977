#pragma once

#include <optional>
#include <string>
#include <vector>

#include "k3lat/lattice.hpp"

namespace k3lat {

// Rank-2 even lattice [[2a, b], [b, 2c]]; det = 4ac - b^2.
struct BinaryEvenLattice {
    Int a, b, c;

    BinaryEvenLattice(Int a_, Int b_, Int c_) : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)) {}
    static BinaryEvenLattice from_gram(const IMat& g);

    IMat gram() const { return {{2 * a, b}, {b, 2 * c}}; }
    Int det() const { return 4 * a * c - b * b; }
    bool positive_definite() const { return a > 0 && det() > 0; }
    bool negative_definite() const { return a < 0 && det() > 0; }
    bool definite() const { return det() > 0 && a != 0; }
    bool reduced() const;
    BinaryEvenLattice negated() const { return {-a, -b, -c}; }
    IntegerLattice lattice() const { return IntegerLattice(gram()); }

    auto operator<=>(const BinaryEvenLattice&) const = default;
};

struct ReduceResult {
    BinaryEvenLattice reduced;
    IMat basis_change;  // W with W^T gram W = reduced gram
    bool negated;       // input was negative definite and handled via -gram
};

ReduceResult gauss_reduce(const BinaryEvenLattice& l);

// Complete list of reduced even lattices [[2a,b],[b,2c]] with 4ac - b^2 = det,
// positive definite for sign > 0 (negated output for sign < 0), ordered by
// (a, |b|, sign of b).
std::vector<BinaryEvenLattice> enumerate_even(const Int& det, int sign = +1);

struct RepresentResult {
    bool represented;
    std::optional<std::pair<Int, Int>> witness;
};

RepresentResult represents(const BinaryEvenLattice& l, const Int& n);

struct GenusClass {
    std::vector<BinaryEvenLattice> members;
    std::string fingerprint;
};

std::vector<GenusClass> genus_partition(const Int& det, int sign = +1);

struct MazurPair {
    BinaryEvenLattice a, b;  // negative definite, same genus, not isometric,
    Int det;                 // neither represents -2
};

std::vector<MazurPair> mazur_search(const Int& det_lo, const Int& det_hi);

}  // namespace k3lat
