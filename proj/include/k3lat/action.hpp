#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "k3lat/lattice.hpp"

namespace k3lat {

// Cyclic action on the Mukai lattice: generator matrix, declared order and
// 2-form eigenvalue exponent (the Hodge-theoretic datum the matrix alone
// cannot determine).
struct K3Action {
    long order = 1;          // N
    long two_form_exponent = 0;  // s, eigenvalue on the 2-form is zeta_N^s
    IMat mukai_matrix;       // 24x24
    std::optional<IMat> pic_gram;
    std::optional<IMat> pic_matrix;
};

struct ValidationReport {
    bool valid;
    std::vector<std::string> violations;
};

ValidationReport validate_action(const K3Action& a);

struct Factorization {
    long n, m;  // N = n * m; n the symplectic kernel order
    bool symplectic() const { return m == 1; }
    bool purely_nonsymplectic() const { return n == 1; }
};

Factorization factorization(const K3Action& a);
Factorization factorization_parts(long order, long two_form_exponent);

// chi(sigma^r) = Tr(M^r) for every r | N.
using TraceSequence = std::map<long, Int>;
TraceSequence trace_sequence(const K3Action& a);

struct InvariantComparison {
    std::string name;
    std::string lhs, rhs;
    bool match;
};

struct PartnerReport {
    std::vector<InvariantComparison> invariants;
    bool compatible;  // all necessary invariants match
    std::string integral_search;  // outcome of the budgeted equivariant search
};

PartnerReport derived_partner_check(const K3Action& a, const K3Action& b,
                                    long long search_budget = 1'000'000);

// Budgeted search for W preserving the Mukai pairing with W M_a = M_b W,
// entries in [-entry_bound, entry_bound].
IsometryResult equivariant_isometry_boxed(const K3Action& a, const K3Action& b,
                                          const Int& entry_bound, long long node_budget);

struct AdmissibilityVerdict {
    bool admissible;
    std::string rule;  // violated rule, or annotation when admissible
};

AdmissibilityVerdict order_admissibility(long n, long m);

struct EnriquesVerdict {
    bool match;
    std::vector<std::string> checks;  // per-invariant results
};

// Invariant-level test against U(2) + E8(2); set full_isometry to also demand
// an explicit discriminant-form isomorphism within the budget.
EnriquesVerdict enriques_signature(const IntegerLattice& fixed, bool full_isometry = false,
                                   Int order_limit = Int(1) << 16);

enum class DiscActionClass { PlusOne, MinusOne, Other };

struct DiscriminantActionResult {
    std::vector<IVec> generator_images;  // coefficients over f.generators()
    DiscActionClass classification;
};

DiscriminantActionResult discriminant_action(const IntegerLattice& l, const IMat& w);

// Reproduction of the degree-two double-cover example: Pic = [[2,5],[5,2]],
// covering involutions iota_1, iota_2, and the discriminant-group obstruction
// to a Mukai-lattice automorphism conjugating them.
struct CompatibleReport {
    IVec invariant_factors;             // {21}
    IVec glue_class_1, glue_class_2;    // classes of (2f2-5f1)/21, (2f1-5f2)/21 over (d1, d2)
    Int eigenvector_square_1, eigenvector_square_2;
    bool classes_equal_up_to_sign;      // false drives the contradiction
    DiscActionClass iota1_disc_class, iota2_disc_class;
    bool compatible;                    // final verdict (false)
    std::vector<std::string> log;
};

CompatibleReport example_compatible_report();

// The genus-mates construction: Pic(X) = Zf + A, Pic(Y) = Zg + B with
// A = -[[4,1],[1,12]], B = -[[6,1],[1,8]], involutions fixing f resp. g.
struct MazurPairReport {
    IntegerLattice pic_x, pic_y;
    IMat involution;                    // diag(1,-1,-1) on both
    bool a_b_isometric;                 // false
    bool same_genus;                    // true
    bool represents_minus_two_a, represents_minus_two_b;  // both false
    Int f_square, g_square;             // both 2
    std::vector<std::string> log;
};

MazurPairReport mazur_action_pair();

}  // namespace k3lat
