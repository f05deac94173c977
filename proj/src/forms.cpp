#include "k3lat/forms.hpp"

#include <algorithm>

namespace k3lat {

BinaryEvenLattice BinaryEvenLattice::from_gram(const IMat& g) {
    if (g.size() != 2 || g[0].size() != 2 || g[0][1] != g[1][0])
        throw std::invalid_argument("expect a symmetric 2x2 Gram matrix");
    if (g[0][0] % 2 != 0 || g[1][1] % 2 != 0)
        throw std::invalid_argument("Gram matrix is not even");
    return BinaryEvenLattice(g[0][0] / 2, g[0][1], g[1][1] / 2);
}

bool BinaryEvenLattice::reduced() const {
    if (negative_definite()) return negated().reduced();
    if (!positive_definite()) return false;
    Int ab = abs(b);
    if (!(ab <= a && a <= c)) return false;
    if (b < 0 && (ab == a || a == c)) return false;
    return true;
}

ReduceResult gauss_reduce(const BinaryEvenLattice& input) {
    if (!input.definite()) throw std::invalid_argument("gauss_reduce: indefinite or degenerate form");
    bool negated = input.negative_definite();
    BinaryEvenLattice f = negated ? input.negated() : input;

    IMat w = imat_identity(2);
    auto apply = [&](const IMat& t) { w = imat_mul(w, t); };

    // Classical reduction on (a, b, c) for the form a x^2 + b xy + c y^2.
    for (;;) {
        if (abs(f.b) > f.a) {
            // translate: b -> b + 2ak with |b + 2ak| <= a
            Int k = -f.b / (2 * f.a);
            Int nb = f.b + 2 * f.a * k;
            if (nb > f.a) { k -= 1; nb -= 2 * f.a; }
            if (nb < -f.a) { k += 1; nb += 2 * f.a; }
            Int nc = f.a * k * k + f.b * k + f.c;
            apply({{1, k}, {0, 1}});
            f = BinaryEvenLattice(f.a, nb, nc);
        } else if (f.a > f.c) {
            apply({{0, -1}, {1, 0}});
            f = BinaryEvenLattice(f.c, -f.b, f.a);
        } else if (f.b < 0 && -f.b == f.a) {
            apply({{1, 1}, {0, 1}});
            f = BinaryEvenLattice(f.a, f.b + 2 * f.a, f.c);
        } else if (f.b < 0 && f.a == f.c) {
            apply({{0, -1}, {1, 0}});
            f = BinaryEvenLattice(f.c, -f.b, f.a);
        } else {
            break;
        }
    }
    if (negated) f = f.negated();
    return {f, w, negated};
}

std::vector<BinaryEvenLattice> enumerate_even(const Int& det, int sign) {
    std::vector<BinaryEvenLattice> out;
    if (det <= 0) return out;
    for (Int a = 1; 3 * a * a <= det; ++a) {
        for (Int b = -a; b <= a; ++b) {
            Int num = det + b * b;
            if (num % (4 * a) != 0) continue;
            Int c = num / (4 * a);
            if (c < a) continue;
            if (b < 0 && (-b == a || a == c)) continue;  // boundary convention: b >= 0
            out.emplace_back(a, b, c);
        }
    }
    std::sort(out.begin(), out.end(), [](const BinaryEvenLattice& x, const BinaryEvenLattice& y) {
        if (x.a != y.a) return x.a < y.a;
        if (abs(x.b) != abs(y.b)) return abs(x.b) < abs(y.b);
        if (x.b != y.b) return x.b > y.b;  // +b before -b
        return x.c < y.c;
    });
    if (sign < 0)
        for (auto& f : out) f = f.negated();
    return out;
}

RepresentResult represents(const BinaryEvenLattice& l, const Int& n) {
    if (!l.definite()) throw std::invalid_argument("represents: indefinite lattice (unbounded search)");
    if (n == 0) return {true, std::make_pair(Int(0), Int(0))};
    bool neg = l.negative_definite();
    if ((n > 0) == neg) return {false, std::nullopt};
    IMat g = neg ? l.negated().gram() : l.gram();
    auto vecs = vectors_of_norm(g, neg ? -n : n);
    if (vecs.empty()) return {false, std::nullopt};
    return {true, std::make_pair(vecs.front()[0], vecs.front()[1])};
}

std::vector<GenusClass> genus_partition(const Int& det, int sign) {
    auto all = enumerate_even(det, sign);
    std::vector<GenusClass> classes;
    for (const auto& f : all) {
        IntegerLattice l = f.lattice();
        bool placed = false;
        for (auto& cls : classes) {
            if (stable_equivalence_check(cls.members.front().lattice(), l).equivalent) {
                cls.members.push_back(f);
                placed = true;
                break;
            }
        }
        if (!placed) {
            GenusClass cls;
            cls.members.push_back(f);
            cls.fingerprint = discriminant_fingerprint(discriminant_group(l));
            classes.push_back(std::move(cls));
        }
    }
    return classes;
}

std::vector<MazurPair> mazur_search(const Int& det_lo, const Int& det_hi) {
    std::vector<MazurPair> out;
    for (Int d = det_lo; d <= det_hi; ++d) {
        auto genera = genus_partition(d, +1);
        for (const auto& cls : genera) {
            if (cls.members.size() < 2) continue;
            // split the genus into isometry classes
            std::vector<BinaryEvenLattice> reps;
            for (const auto& f : cls.members) {
                bool known = false;
                for (const auto& r : reps) {
                    auto iso = is_isometric_definite(r.lattice(), f.lattice());
                    if (iso.verdict == Verdict::Yes) { known = true; break; }
                }
                if (!known) reps.push_back(f);
            }
            for (std::size_t i = 0; i < reps.size(); ++i) {
                if (represents(reps[i], Int(2)).represented) continue;
                for (std::size_t j = i + 1; j < reps.size(); ++j) {
                    if (represents(reps[j], Int(2)).represented) continue;
                    out.push_back({reps[i].negated(), reps[j].negated(), d});
                }
            }
        }
    }
    return out;
}

}  // namespace k3lat
