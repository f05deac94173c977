#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "k3lat/matrix.hpp"
#include "k3lat/snf.hpp"

namespace k3lat {

struct DegenerateLatticeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NotGlueVectorError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Finite-rank free Z-module with a symmetric integer Gram matrix.
class IntegerLattice {
public:
    IntegerLattice(IMat gram, std::string label = "", bool allow_degenerate = false);

    std::size_t rank() const { return gram_.size(); }
    const IMat& gram() const { return gram_; }
    const std::string& label() const { return label_; }

    Int det() const { return det_; }
    bool degenerate() const { return det_ == 0; }
    bool even() const;

    // (positive, negative) inertia indices; throws DegenerateLatticeError.
    std::pair<int, int> signature() const;
    bool positive_definite() const;
    bool negative_definite() const;
    bool definite() const { return positive_definite() || negative_definite(); }

    void require_nondegenerate(const std::string& op) const;

private:
    IMat gram_;
    std::string label_;
    Int det_;
};

struct FiniteAbelianGroup {
    IVec invariant_factors;  // d_1 | d_2 | ... , each > 1

    Int order() const {
        Int n = 1;
        for (const auto& d : invariant_factors) n *= d;
        return n;
    }
    Int exponent() const {
        return invariant_factors.empty() ? Int(1) : invariant_factors.back();
    }
};

struct GlueVector {
    QVec coordinates;  // in the lattice basis
    Int order;         // order of its class in d(L)
};

// d(L) = L*/L with its Q/Z bilinear and (for even L) Q/2Z quadratic form.
class DiscriminantForm {
public:
    const FiniteAbelianGroup& group() const { return group_; }
    const IMat& gram() const { return gram_; }
    bool even() const { return even_; }

    // Generators of the prime-power cyclic decomposition, sorted by
    // increasing order.
    const std::vector<GlueVector>& generators() const { return gens_; }
    // One generator per invariant factor (the SNF decomposition).
    const std::vector<GlueVector>& canonical_generators() const { return canon_gens_; }

    Int quadratic_den() const { return even_ ? Int(2) : Int(1); }
    // q(v) = v^T G v mod 2 (even case); b(v, w) = v^T G w mod 1.
    Rat q_value(const QVec& v) const;
    Rat b_value(const QVec& v, const QVec& w) const;

    bool is_glue_vector(const QVec& v) const;
    // Canonical coordinates of the class of v, one entry per invariant factor,
    // each in [0, d_i). Throws NotGlueVectorError if v is not in L*.
    IVec class_coords(const QVec& v) const;
    QVec element(const IVec& coords) const;

    // All group elements as canonical coordinate tuples; |d(L)| entries.
    std::vector<IVec> all_elements() const;
    Int element_order(const IVec& coords) const;

    friend DiscriminantForm discriminant_group(const IntegerLattice& l);

private:
    IMat gram_;
    bool even_ = false;
    FiniteAbelianGroup group_;
    std::vector<GlueVector> gens_;
    std::vector<GlueVector> canon_gens_;
    IMat ug_;  // U * gram, maps dual vectors to SNF coordinates
};

DiscriminantForm discriminant_group(const IntegerLattice& l);

// Express the class of v as integer coefficients over the given generators,
// reduced to the balanced range modulo each generator's order.
IVec reduce_glue_vector(const DiscriminantForm& f, const QVec& v);
IVec express_in_generators(const DiscriminantForm& f, const std::vector<GlueVector>& gens,
                           const QVec& v);

IntegerLattice direct_sum(const IntegerLattice& a, const IntegerLattice& b);
IntegerLattice twist(const IntegerLattice& l, const Int& k);

// {x in ambient : <x, s> = 0 for all s in span}, on a saturated basis.
// Also returns the basis vectors (columns) in ambient coordinates.
struct ComplementResult {
    IntegerLattice lattice;
    std::vector<IVec> basis;
};
ComplementResult orthogonal_complement(const IntegerLattice& ambient,
                                       const std::vector<IVec>& span);

// name in {"U", "E8", "E8minus", "K3", "Mukai"}.
IntegerLattice standard_lattice(const std::string& name);

enum class Verdict { Yes, No, BudgetExceeded };

struct IsometryResult {
    Verdict verdict;
    std::optional<IMat> witness;  // W with W^T G1 W = G2
    long long nodes = 0;
};

// Definite lattices only, rank <= 10 intended. The parallel variant splits
// the first-column candidates across OpenMP threads; both are deterministic.
IsometryResult is_isometric_definite(const IntegerLattice& a, const IntegerLattice& b,
                                     long long node_budget = 10'000'000);
IsometryResult is_isometric_definite_serial(const IntegerLattice& a, const IntegerLattice& b,
                                            long long node_budget = 10'000'000);

// Budgeted witness search for possibly indefinite lattices: backtracks over
// integer columns with entries in [-entry_bound, entry_bound]. A Yes verdict
// carries an exact witness; No only means no witness within the box.
IsometryResult find_isometry_boxed(const IntegerLattice& a, const IntegerLattice& b,
                                   const Int& entry_bound, long long node_budget = 10'000'000);

enum class FormCompare { Quadratic, NegatedQuadratic, Bilinear };

struct FormIsoResult {
    Verdict verdict;
    // images of f1's canonical generators as canonical coordinates in f2
    std::optional<std::vector<IVec>> witness;
};

FormIsoResult discriminant_forms_isomorphic(const DiscriminantForm& f1,
                                            const DiscriminantForm& f2,
                                            FormCompare mode = FormCompare::Quadratic,
                                            Int order_limit = Int(1) << 16);

// Genus criterion for even lattices: equal signatures and isomorphic
// discriminant quadratic forms.
struct StableEquivalenceResult {
    bool equivalent;
    std::string reason;
};
StableEquivalenceResult stable_equivalence_check(const IntegerLattice& a,
                                                 const IntegerLattice& b);

// Multiset fingerprint of (element order, q value) over all of d(L);
// a genus invariant used as the independent certificate.
std::string discriminant_fingerprint(const DiscriminantForm& f);

// All vectors x with x^T G x = norm in a positive definite lattice,
// in lexicographic order.
std::vector<IVec> vectors_of_norm(const IMat& gram, const Int& norm);

}  // namespace k3lat
