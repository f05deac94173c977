#include "k3lat/lattice.hpp"

#include <algorithm>
#include <map>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace k3lat {

IntegerLattice::IntegerLattice(IMat gram, std::string label, bool allow_degenerate)
    : gram_(std::move(gram)), label_(std::move(label)) {
    if (!imat_is_symmetric(gram_)) throw std::invalid_argument("Gram matrix must be symmetric");
    det_ = imat_det(gram_);
    if (det_ == 0 && !allow_degenerate) throw DegenerateLatticeError("degenerate Gram matrix");
}

bool IntegerLattice::even() const {
    for (std::size_t i = 0; i < rank(); ++i)
        if (gram_[i][i] % 2 != 0) return false;
    return true;
}

std::pair<int, int> IntegerLattice::signature() const {
    require_nondegenerate("signature");
    return k3lat::signature(gram_);
}

bool IntegerLattice::positive_definite() const {
    auto [p, n] = signature();
    return n == 0;
}

bool IntegerLattice::negative_definite() const {
    auto [p, n] = signature();
    return p == 0;
}

void IntegerLattice::require_nondegenerate(const std::string& op) const {
    if (det_ == 0) throw DegenerateLatticeError("degenerate Gram matrix (" + op + ")");
}

namespace {

std::vector<std::pair<Int, int>> factorize(Int n) {
    std::vector<std::pair<Int, int>> out;
    for (Int p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

Int ipow(const Int& b, int e) {
    Int r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

}  // namespace

DiscriminantForm discriminant_group(const IntegerLattice& l) {
    l.require_nondegenerate("discriminant_group");
    DiscriminantForm f;
    f.gram_ = l.gram();
    f.even_ = l.even();

    SmithForm s = smith_normal_form(l.gram());
    std::size_t n = l.rank();
    f.ug_ = imat_mul(s.u, l.gram());

    for (std::size_t i = 0; i < n; ++i) {
        Int d = s.d[i][i];
        if (d <= 1) continue;
        f.group_.invariant_factors.push_back(d);
        // generator: (column i of V) / d
        QVec g(n);
        for (std::size_t k = 0; k < n; ++k) g[k] = Rat(s.v[k][i], d);
        f.canon_gens_.push_back({g, d});
    }

    // Split each invariant-factor generator into prime-power pieces.
    for (const auto& cg : f.canon_gens_) {
        for (const auto& [p, e] : factorize(cg.order)) {
            Int q = ipow(p, e);
            Int c = cg.order / q;
            QVec g(n);
            for (std::size_t k = 0; k < n; ++k) g[k] = cg.coordinates[k] * Rat(c);
            f.gens_.push_back({g, q});
        }
    }
    std::stable_sort(f.gens_.begin(), f.gens_.end(),
                     [](const GlueVector& a, const GlueVector& b) { return a.order < b.order; });
    return f;
}

Rat DiscriminantForm::q_value(const QVec& v) const {
    return rat_mod(gram_pair_q(gram_, v, v), quadratic_den());
}

Rat DiscriminantForm::b_value(const QVec& v, const QVec& w) const {
    return rat_mod(gram_pair_q(gram_, v, w), Int(1));
}

bool DiscriminantForm::is_glue_vector(const QVec& v) const {
    for (std::size_t i = 0; i < ug_.size(); ++i) {
        Rat s(0);
        for (std::size_t j = 0; j < v.size(); ++j) s += Rat(gram_[i][j]) * v[j];
        if (!is_integer(s)) return false;
    }
    return true;
}

IVec DiscriminantForm::class_coords(const QVec& v) const {
    std::size_t n = ug_.size();
    if (v.size() != n) throw std::invalid_argument("glue vector has wrong dimension");
    IVec w(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rat s(0);
        for (std::size_t j = 0; j < n; ++j) s += Rat(ug_[i][j]) * v[j];
        if (!is_integer(s)) throw NotGlueVectorError("not a glue vector");
        w[i] = s.numerator();
    }
    // U G v lands in Z^n; its i-th coordinate lives mod d_i. The divisibility
    // chain puts the trivial factors (d = 1) first, so the informative
    // coordinates are the trailing ones.
    std::size_t trivial = n - group_.invariant_factors.size();
    IVec coords(group_.invariant_factors.size());
    for (std::size_t k = 0; k < coords.size(); ++k)
        coords[k] = mod_floor(w[trivial + k], group_.invariant_factors[k]);
    return coords;
}

QVec DiscriminantForm::element(const IVec& coords) const {
    std::size_t n = gram_.size();
    QVec v(n, Rat(0));
    for (std::size_t k = 0; k < coords.size(); ++k)
        for (std::size_t j = 0; j < n; ++j)
            v[j] += Rat(coords[k]) * canon_gens_[k].coordinates[j];
    return v;
}

std::vector<IVec> DiscriminantForm::all_elements() const {
    std::vector<IVec> out;
    IVec cur(group_.invariant_factors.size(), Int(0));
    for (;;) {
        out.push_back(cur);
        std::size_t i = 0;
        while (i < cur.size()) {
            cur[i] += 1;
            if (cur[i] < group_.invariant_factors[i]) break;
            cur[i] = 0;
            ++i;
        }
        if (i == cur.size()) break;
        if (cur.empty()) break;
    }
    return out;
}

Int DiscriminantForm::element_order(const IVec& coords) const {
    Int ord = 1;
    for (std::size_t k = 0; k < coords.size(); ++k) {
        Int d = group_.invariant_factors[k];
        Int c = mod_floor(coords[k], d);
        if (c == 0) continue;
        ord = lcm(ord, d / gcd(d, c));
    }
    return ord;
}

IVec express_in_generators(const DiscriminantForm& f, const std::vector<GlueVector>& gens,
                           const QVec& v) {
    IVec target = f.class_coords(v);
    std::size_t k = gens.size();
    std::vector<IVec> gen_coords(k);
    Int combos = 1;
    for (std::size_t i = 0; i < k; ++i) {
        gen_coords[i] = f.class_coords(gens[i].coordinates);
        combos *= gens[i].order;
        if (combos > (Int(1) << 24)) throw std::invalid_argument("generator search too large");
    }
    const auto& inv = f.group().invariant_factors;

    IVec c(k, Int(0));
    for (;;) {
        // test sum c_i * gen_i == target
        bool ok = true;
        for (std::size_t j = 0; j < inv.size() && ok; ++j) {
            Int s = 0;
            for (std::size_t i = 0; i < k; ++i) s += c[i] * gen_coords[i][j];
            if (mod_floor(s - target[j], inv[j]) != 0) ok = false;
        }
        if (ok) {
            IVec out(k);
            for (std::size_t i = 0; i < k; ++i) out[i] = mod_balanced(c[i], gens[i].order);
            return out;
        }
        std::size_t i = 0;
        while (i < k) {
            c[i] += 1;
            if (c[i] < gens[i].order) break;
            c[i] = 0;
            ++i;
        }
        if (i == k || k == 0) break;
    }
    throw NotGlueVectorError("class not expressible in the given generators");
}

IVec reduce_glue_vector(const DiscriminantForm& f, const QVec& v) {
    return express_in_generators(f, f.generators(), v);
}

IntegerLattice direct_sum(const IntegerLattice& a, const IntegerLattice& b) {
    std::size_t n = a.rank(), m = b.rank();
    IMat g = imat_zero(n + m, n + m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g[i][j] = a.gram()[i][j];
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) g[n + i][n + j] = b.gram()[i][j];
    std::string label = a.label().empty() || b.label().empty()
                            ? std::string()
                            : a.label() + " + " + b.label();
    return IntegerLattice(std::move(g), label, true);
}

IntegerLattice twist(const IntegerLattice& l, const Int& k) {
    if (k == 0) throw std::invalid_argument("twist by zero");
    IMat g = l.gram();
    for (auto& row : g)
        for (auto& x : row) x *= k;
    std::string label = l.label().empty() ? "" : l.label() + "(" + k.str() + ")";
    return IntegerLattice(std::move(g), label, true);
}

ComplementResult orthogonal_complement(const IntegerLattice& ambient,
                                       const std::vector<IVec>& span) {
    ambient.require_nondegenerate("orthogonal_complement");
    std::size_t n = ambient.rank();
    IMat pairing;  // one row <s, -> per span vector
    for (const auto& s : span) {
        if (s.size() != n) throw std::invalid_argument("span vector has wrong dimension");
        IVec row(n);
        for (std::size_t j = 0; j < n; ++j) {
            row[j] = 0;
            for (std::size_t i = 0; i < n; ++i) row[j] += s[i] * ambient.gram()[i][j];
        }
        pairing.push_back(row);
    }
    std::vector<IVec> basis =
        span.empty() ? [&] {
            std::vector<IVec> full;
            for (std::size_t i = 0; i < n; ++i) {
                IVec e(n, Int(0));
                e[i] = 1;
                full.push_back(e);
            }
            return full;
        }()
                     : integer_kernel(pairing);
    std::size_t r = basis.size();
    IMat g = imat_zero(r, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) g[i][j] = gram_pair(ambient.gram(), basis[i], basis[j]);
    return {IntegerLattice(std::move(g), ambient.label().empty() ? "" : ambient.label() + "^perp",
                           /*allow_degenerate=*/true),
            basis};
}

IntegerLattice standard_lattice(const std::string& name) {
    if (name == "U") return IntegerLattice({{0, 1}, {1, 0}}, "U");
    if (name == "E8" || name == "E8minus") {
        // Cartan matrix of E8 (Bourbaki node numbering); positive definite, det 1.
        IMat g = imat_zero(8, 8);
        for (std::size_t i = 0; i < 8; ++i) g[i][i] = 2;
        auto edge = [&](int i, int j) { g[i][j] = g[j][i] = -1; };
        edge(0, 2); edge(2, 3); edge(3, 4); edge(4, 5); edge(5, 6); edge(6, 7); edge(1, 3);
        IntegerLattice e8(std::move(g), "E8");
        if (name == "E8") return e8;
        return twist(e8, Int(-1));
    }
    if (name == "K3") {
        auto u = standard_lattice("U");
        auto e8m = standard_lattice("E8minus");
        auto l = direct_sum(direct_sum(u, u), direct_sum(u, direct_sum(e8m, e8m)));
        return IntegerLattice(l.gram(), "K3");
    }
    if (name == "Mukai") {
        auto u = standard_lattice("U");
        auto k3 = standard_lattice("K3");
        auto l = direct_sum(u, k3);
        return IntegerLattice(l.gram(), "Mukai");
    }
    throw std::invalid_argument("unknown standard lattice: " + name);
}

std::vector<IVec> vectors_of_norm(const IMat& gram, const Int& norm) {
    std::size_t n = gram.size();
    if (norm < 0) return {};
    if (norm == 0) return {IVec(n, Int(0))};

    // Rational LDL: Q(x) = sum_i d[i] * (x_i + sum_{j>i} l[i][j] x_j)^2.
    QMat a(n, QVec(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = Rat(gram[i][j]);
    QVec d(n);
    QMat l(n, QVec(n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i) {
        d[i] = a[i][i];
        if (d[i] <= Rat(0)) throw std::invalid_argument("vectors_of_norm: not positive definite");
        for (std::size_t j = i + 1; j < n; ++j) l[i][j] = a[i][j] / d[i];
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = i + 1; k < n; ++k) a[j][k] -= a[i][j] * a[i][k] / d[i];
    }

    std::vector<IVec> out;
    IVec x(n, Int(0));
    // enumerate from the last coordinate down
    auto rec = [&](auto&& self, std::size_t i_plus1, const Rat& remaining) -> void {
        if (i_plus1 == 0) {
            if (remaining == Rat(0)) out.push_back(x);
            return;
        }
        std::size_t i = i_plus1 - 1;
        Rat center(0);
        for (std::size_t j = i + 1; j < n; ++j) center += l[i][j] * Rat(x[j]);
        // |x_i + center| <= sqrt(remaining / d_i)
        Rat bound2 = remaining / d[i];
        Int b = boost::multiprecision::sqrt(ceil_rat(bound2));
        while (Rat(b * b) < bound2) b += 1;
        Int lo = ceil_rat(-center) - b, hi = floor_rat(-center) + b;
        for (Int xi = lo; xi <= hi; ++xi) {
            Rat t = Rat(xi) + center;
            Rat used = d[i] * t * t;
            if (used > remaining) continue;
            x[i] = xi;
            self(self, i, remaining - used);
        }
        x[i] = 0;
    };
    rec(rec, n, Rat(norm));
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

struct ColumnSearch {
    const IMat& g1;
    const IMat& g2;
    std::size_t n;
    std::map<Int, std::vector<IVec>> by_norm;
    long long nodes = 0;
    long long budget;
    bool exhausted = false;

    const std::vector<IVec>& candidates(const Int& norm) {
        auto it = by_norm.find(norm);
        if (it == by_norm.end()) it = by_norm.emplace(norm, vectors_of_norm(g1, norm)).first;
        return it->second;
    }

    bool extend(std::vector<IVec>& cols, std::size_t j) {
        if (j == n) return true;
        for (const auto& cand : candidates(g2[j][j])) {
            if (++nodes > budget) {
                exhausted = true;
                return false;
            }
            bool ok = true;
            for (std::size_t i = 0; i < j && ok; ++i)
                if (gram_pair(g1, cols[i], cand) != g2[i][j]) ok = false;
            if (!ok) continue;
            cols.push_back(cand);
            if (extend(cols, j + 1)) return true;
            cols.pop_back();
            if (exhausted) return false;
        }
        return false;
    }
};

IMat columns_to_matrix(const std::vector<IVec>& cols, std::size_t n) {
    IMat w = imat_zero(n, n);
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < n; ++i) w[i][j] = cols[j][i];
    return w;
}

void check_definite_pair(const IntegerLattice& a, const IntegerLattice& b, bool& negate) {
    if (!a.definite() || !b.definite())
        throw std::invalid_argument("definite only; use stable_equivalence_check");
    negate = a.negative_definite();
}

}  // namespace

IsometryResult is_isometric_definite_serial(const IntegerLattice& a, const IntegerLattice& b,
                                            long long node_budget) {
    bool neg_a = false, neg_b = false;
    check_definite_pair(a, b, neg_a);
    check_definite_pair(b, a, neg_b);
    if (a.rank() != b.rank() || a.det() != b.det() || neg_a != neg_b)
        return {Verdict::No, std::nullopt, 0};
    IMat g1 = a.gram(), g2 = b.gram();
    if (neg_a) {
        for (auto& r : g1) for (auto& x : r) x = -x;
        for (auto& r : g2) for (auto& x : r) x = -x;
    }
    ColumnSearch cs{g1, g2, a.rank(), {}, 0, node_budget};
    std::vector<IVec> cols;
    if (cs.extend(cols, 0)) {
        IMat w = columns_to_matrix(cols, a.rank());
        return {Verdict::Yes, w, cs.nodes};
    }
    if (cs.exhausted) return {Verdict::BudgetExceeded, std::nullopt, cs.nodes};
    return {Verdict::No, std::nullopt, cs.nodes};
}

IsometryResult is_isometric_definite(const IntegerLattice& a, const IntegerLattice& b,
                                     long long node_budget) {
    bool neg_a = false, neg_b = false;
    check_definite_pair(a, b, neg_a);
    check_definite_pair(b, a, neg_b);
    if (a.rank() != b.rank() || a.det() != b.det() || neg_a != neg_b)
        return {Verdict::No, std::nullopt, 0};
    IMat g1 = a.gram(), g2 = b.gram();
    if (neg_a) {
        for (auto& r : g1) for (auto& x : r) x = -x;
        for (auto& r : g2) for (auto& x : r) x = -x;
    }
    std::size_t n = a.rank();
    std::vector<IVec> first = vectors_of_norm(g1, g2[0][0]);
    if (first.empty()) return {Verdict::No, std::nullopt, 0};

    long long per_branch = std::max<long long>(1, node_budget / (long long)first.size());
    std::vector<int> status(first.size(), 0);  // 0 = no, 1 = found, 2 = exhausted
    std::vector<std::vector<IVec>> found(first.size());
    std::vector<long long> nodes(first.size(), 0);

    // Deterministic split over the first column; a shared lower bound on the
    // best success index lets later branches skip without affecting the result.
    long long best = (long long)first.size();
#pragma omp parallel for schedule(dynamic)
    for (long long idx = 0; idx < (long long)first.size(); ++idx) {
        long long seen;
#pragma omp atomic read
        seen = best;
        if (idx > seen) continue;
        ColumnSearch cs{g1, g2, n, {}, 0, per_branch};
        std::vector<IVec> cols{first[idx]};
        if (cs.extend(cols, 1)) {
            status[idx] = 1;
            found[idx] = cols;
#pragma omp critical
            { if (idx < best) best = idx; }
        } else if (cs.exhausted) {
            status[idx] = 2;
        }
        nodes[idx] = cs.nodes;
    }

    long long total = 0;
    for (long long v : nodes) total += v;
    for (std::size_t i = 0; i < first.size(); ++i)
        if (status[i] == 1) return {Verdict::Yes, columns_to_matrix(found[i], n), total};
    for (std::size_t i = 0; i < first.size(); ++i)
        if (status[i] == 2) return {Verdict::BudgetExceeded, std::nullopt, total};
    return {Verdict::No, std::nullopt, total};
}

IsometryResult find_isometry_boxed(const IntegerLattice& a, const IntegerLattice& b,
                                   const Int& entry_bound, long long node_budget) {
    a.require_nondegenerate("find_isometry_boxed");
    b.require_nondegenerate("find_isometry_boxed");
    if (a.rank() != b.rank() || a.det() != b.det()) return {Verdict::No, std::nullopt, 0};
    std::size_t n = a.rank();
    const IMat& g1 = a.gram();
    const IMat& g2 = b.gram();

    // all box vectors of a given g1-norm, cached per norm
    std::map<Int, std::vector<IVec>> by_norm;
    auto candidates = [&](const Int& norm) -> const std::vector<IVec>& {
        auto it = by_norm.find(norm);
        if (it != by_norm.end()) return it->second;
        std::vector<IVec> list;
        IVec x(n, -entry_bound);
        for (;;) {
            if (gram_pair(g1, x, x) == norm) list.push_back(x);
            std::size_t i = 0;
            while (i < n) {
                x[i] += 1;
                if (x[i] <= entry_bound) break;
                x[i] = -entry_bound;
                ++i;
            }
            if (i == n) break;
        }
        return by_norm.emplace(norm, std::move(list)).first->second;
    };

    long long nodes = 0;
    bool exhausted = false;
    std::vector<IVec> cols;
    auto bt = [&](auto&& self, std::size_t j) -> bool {
        if (j == n) return true;
        for (const auto& cand : candidates(g2[j][j])) {
            if (++nodes > node_budget) { exhausted = true; return false; }
            bool ok = true;
            for (std::size_t i = 0; i < j && ok; ++i)
                if (gram_pair(g1, cols[i], cand) != g2[i][j]) ok = false;
            if (!ok) continue;
            cols.push_back(cand);
            if (self(self, j + 1)) return true;
            cols.pop_back();
            if (exhausted) return false;
        }
        return false;
    };
    if (bt(bt, 0)) {
        IMat w = imat_zero(n, n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) w[i][j] = cols[j][i];
        return {Verdict::Yes, w, nodes};
    }
    return {exhausted ? Verdict::BudgetExceeded : Verdict::No, std::nullopt, nodes};
}

namespace {

struct FormElement {
    IVec coords;
    Int order;
    Rat q;       // quadratic value mod 2 (or b(x,x) mod 1 in the odd case)
    QVec gv;     // gram * vector, for fast pairings
    QVec vec;
};

Rat pair_value(const FormElement& x, const FormElement& y) {
    Rat s(0);
    for (std::size_t i = 0; i < x.gv.size(); ++i) s += x.gv[i] * y.vec[i];
    return rat_mod(s, Int(1));
}

}  // namespace

FormIsoResult discriminant_forms_isomorphic(const DiscriminantForm& f1,
                                            const DiscriminantForm& f2, FormCompare mode,
                                            Int order_limit) {
    if (f1.group().order() != f2.group().order()) return {Verdict::No, std::nullopt};
    if (f1.group().order() > order_limit) return {Verdict::BudgetExceeded, std::nullopt};
    if (f1.group().invariant_factors != f2.group().invariant_factors)
        return {Verdict::No, std::nullopt};

    bool quad = mode != FormCompare::Bilinear;
    bool negate = mode == FormCompare::NegatedQuadratic;
    Int den = quad ? Int(2) : Int(1);

    auto build = [&](const DiscriminantForm& f) {
        std::vector<FormElement> els;
        for (auto& c : f.all_elements()) {
            FormElement e;
            e.coords = c;
            e.order = f.element_order(c);
            e.vec = f.element(c);
            std::size_t n = f.gram().size();
            e.gv.assign(n, Rat(0));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) e.gv[i] += Rat(f.gram()[i][j]) * e.vec[j];
            Rat raw(0);
            for (std::size_t i = 0; i < n; ++i) raw += e.gv[i] * e.vec[i];
            e.q = rat_mod(raw, den);
            els.push_back(std::move(e));
        }
        return els;
    };

    auto els2 = build(f2);

    // fast invariant: multiset of (order, value)
    auto fingerprint = [&](const DiscriminantForm& f, bool neg) {
        std::multiset<std::pair<std::string, std::string>> fp;
        for (auto& c : f.all_elements()) {
            QVec v = f.element(c);
            Rat raw = gram_pair_q(f.gram(), v, v);
            if (neg) raw = -raw;
            fp.insert({f.element_order(c).str(), rat_to_string(rat_mod(raw, den))});
        }
        return fp;
    };
    if (fingerprint(f1, negate) != fingerprint(f2, false)) return {Verdict::No, std::nullopt};

    // generator data on the source side
    std::vector<FormElement> gens1;
    for (const auto& g : f1.canonical_generators()) {
        FormElement e;
        e.coords = f1.class_coords(g.coordinates);
        e.order = g.order;
        e.vec = g.coordinates;
        std::size_t n = f1.gram().size();
        e.gv.assign(n, Rat(0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) e.gv[i] += Rat(f1.gram()[i][j]) * e.vec[j];
        Rat raw(0);
        for (std::size_t i = 0; i < n; ++i) raw += e.gv[i] * e.vec[i];
        if (negate) raw = -raw;
        e.q = rat_mod(raw, den);
        gens1.push_back(std::move(e));
    }

    std::size_t k = gens1.size();
    const auto& inv = f2.group().invariant_factors;

    auto add_coords = [&](const IVec& a, const IVec& b) {
        IVec c(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) c[i] = mod_floor(a[i] + b[i], inv[i]);
        return c;
    };
    auto spans_group = [&](const std::vector<const FormElement*>& imgs) {
        std::set<IVec> seen;
        seen.insert(IVec(inv.size(), Int(0)));
        std::vector<IVec> frontier(seen.begin(), seen.end());
        while (!frontier.empty()) {
            std::vector<IVec> next;
            for (const auto& x : frontier)
                for (auto* g : imgs) {
                    IVec y = add_coords(x, g->coords);
                    if (seen.insert(y).second) next.push_back(y);
                }
            frontier = std::move(next);
        }
        return Int(seen.size()) == f2.group().order();
    };

    std::vector<const FormElement*> imgs;
    auto bt = [&](auto&& self, std::size_t i) -> bool {
        if (i == k) return spans_group(imgs);
        for (const auto& cand : els2) {
            if (cand.order != gens1[i].order) continue;
            if (cand.q != gens1[i].q) continue;
            bool ok = true;
            for (std::size_t j = 0; j < i && ok; ++j) {
                Rat want = pair_value(gens1[i], gens1[j]);
                if (negate) want = rat_mod(-want, Int(1));
                if (pair_value(cand, *imgs[j]) != want) ok = false;
            }
            if (!ok) continue;
            imgs.push_back(&cand);
            if (self(self, i + 1)) return true;
            imgs.pop_back();
        }
        return false;
    };
    if (bt(bt, 0)) {
        std::vector<IVec> witness;
        for (auto* e : imgs) witness.push_back(e->coords);
        return {Verdict::Yes, witness};
    }
    return {Verdict::No, std::nullopt};
}

std::string discriminant_fingerprint(const DiscriminantForm& f) {
    std::multiset<std::string> fp;
    for (auto& c : f.all_elements()) {
        QVec v = f.element(c);
        fp.insert(f.element_order(c).str() + ":" + rat_to_string(f.q_value(v)));
    }
    std::string out;
    for (const auto& s : fp) out += s + ";";
    return out;
}

StableEquivalenceResult stable_equivalence_check(const IntegerLattice& a,
                                                 const IntegerLattice& b) {
    if (!a.even() || !b.even()) return {false, "both lattices must be even"};
    a.require_nondegenerate("stable_equivalence_check");
    b.require_nondegenerate("stable_equivalence_check");
    if (a.rank() != b.rank()) return {false, "rank mismatch"};
    if (a.det() != b.det()) return {false, "determinant mismatch"};
    if (a.signature() != b.signature()) return {false, "signature mismatch"};
    auto fa = discriminant_group(a);
    auto fb = discriminant_group(b);
    auto iso = discriminant_forms_isomorphic(fa, fb, FormCompare::Quadratic);
    if (iso.verdict == Verdict::Yes)
        return {true, "equal signatures and isomorphic discriminant forms"};
    return {false, "discriminant forms not isomorphic"};
}

}  // namespace k3lat
