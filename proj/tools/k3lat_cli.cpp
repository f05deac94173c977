#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "k3lat/json_io.hpp"

using namespace k3lat;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailed = 1;
constexpr int kExitInvalidInput = 2;
constexpr int kExitBudgetExhausted = 3;

long long default_budget() {
    if (const char* env = std::getenv("K3LAT_BUDGET")) return std::atoll(env);
    return 10'000'000;
}

// path, "-" for stdin, or inline JSON text
json read_json_input(const std::string& arg) {
    std::string text;
    if (arg == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
    } else if (!arg.empty() && (arg[0] == '{' || arg[0] == '[')) {
        text = arg;
    } else {
        std::ifstream in(arg);
        if (!in) throw std::invalid_argument("cannot open file: " + arg);
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    return json::parse(text);
}

std::vector<IVec> parse_span(const std::string& s) {
    std::vector<IVec> span;
    std::stringstream outer(s);
    std::string vec;
    while (std::getline(outer, vec, ';')) {
        IVec v;
        std::stringstream inner(vec);
        std::string entry;
        while (std::getline(inner, entry, ',')) v.push_back(Int(entry));
        if (!v.empty()) span.push_back(std::move(v));
    }
    return span;
}

void print_config_line(const FixedPointConfig& cfg) {
    std::cout << config_to_json(cfg).dump() << "\n";
}

int cmd_lattice_disc(const std::string& input, const std::string& format) {
    auto l = lattice_from_json(read_json_input(input));
    auto f = discriminant_group(l);
    if (format == "json") {
        std::cout << discriminant_form_to_json(f).dump(2) << "\n";
    } else {
        std::cout << "lattice: " << (l.label().empty() ? "(unlabeled)" : l.label())
                  << "  rank " << l.rank() << "  det " << l.det().str() << "\n";
        std::cout << "invariant factors:";
        if (f.group().invariant_factors.empty()) std::cout << " (trivial group)";
        for (const auto& d : f.group().invariant_factors) std::cout << " " << d.str();
        std::cout << "\n";
        for (const auto& g : f.generators()) {
            std::cout << "generator (order " << g.order.str() << "):";
            for (const auto& c : g.coordinates) std::cout << " " << rat_to_string(c);
            std::cout << "  q = " << rat_to_string(f.q_value(g.coordinates)) << " mod "
                      << (f.even() ? "2" : "1") << "\n";
        }
    }
    return kExitOk;
}

int cmd_lattice_complement(const std::string& input, const std::string& span_str,
                           const std::string& format) {
    auto l = lattice_from_json(read_json_input(input));
    auto res = orthogonal_complement(l, parse_span(span_str));
    json j{{"gram", imat_to_json(res.lattice.gram())},
           {"rank", res.lattice.rank()},
           {"det", int_to_json(res.lattice.det())},
           {"degenerate", res.lattice.degenerate()},
           {"basis", [&] {
                json b = json::array();
                for (const auto& v : res.basis) {
                    json row = json::array();
                    for (const auto& x : v) row.push_back(int_to_json(x));
                    b.push_back(row);
                }
                return b;
            }()}};
    if (format == "json") {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "complement rank " << res.lattice.rank() << ", det "
                  << res.lattice.det().str()
                  << (res.lattice.degenerate() ? " (degenerate)" : "") << "\n";
        for (const auto& row : res.lattice.gram()) {
            for (const auto& x : row) std::cout << x.str() << "\t";
            std::cout << "\n";
        }
    }
    return kExitOk;
}

void forms_table_row(const BinaryEvenLattice& f, const std::string& genus_id) {
    std::cout << f.a.str() << "\t" << f.b.str() << "\t" << f.c.str() << "\t" << f.det().str()
              << "\t" << (f.reduced() ? "yes" : "no") << "\t"
              << (represents(f, f.positive_definite() ? Int(2) : Int(-2)).represented ? "yes"
                                                                                      : "no")
              << "\t" << genus_id << "\n";
}

json forms_json_row(const BinaryEvenLattice& f, const std::string& genus_id) {
    return json{{"a", int_to_json(f.a)},
                {"b", int_to_json(f.b)},
                {"c", int_to_json(f.c)},
                {"det", int_to_json(f.det())},
                {"reduced", f.reduced()},
                {"represents_2",
                 represents(f, f.positive_definite() ? Int(2) : Int(-2)).represented},
                {"genus_id", genus_id}};
}

std::string genus_id_of(const std::vector<GenusClass>& genera, const BinaryEvenLattice& f) {
    for (std::size_t i = 0; i < genera.size(); ++i)
        for (const auto& m : genera[i].members)
            if (m == f) return "g" + std::to_string(i);
    return "?";
}

int cmd_forms_enumerate(long long det, int sign, const std::string& format) {
    auto list = enumerate_even(Int(det), sign);
    auto genera = genus_partition(Int(det), sign);
    if (format == "json") {
        json arr = json::array();
        for (const auto& f : list) arr.push_back(forms_json_row(f, genus_id_of(genera, f)));
        std::cout << arr.dump(2) << "\n";
    } else {
        std::cout << "a\tb\tc\tdet\treduced\trepresents_2\tgenus_id\n";
        for (const auto& f : list) forms_table_row(f, genus_id_of(genera, f));
    }
    return kExitOk;
}

int cmd_forms_reduce(const std::string& input, const std::string& format) {
    auto j = read_json_input(input);
    auto f = BinaryEvenLattice::from_gram(imat_from_json(j.at("gram")));
    auto res = gauss_reduce(f);
    json out{{"reduced_gram", imat_to_json(res.reduced.gram())},
             {"basis_change", imat_to_json(res.basis_change)},
             {"negated", res.negated}};
    if (format == "json") {
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "reduced: [[" << res.reduced.gram()[0][0].str() << ","
                  << res.reduced.gram()[0][1].str() << "],[" << res.reduced.gram()[1][0].str()
                  << "," << res.reduced.gram()[1][1].str() << "]]"
                  << (res.negated ? " (reduced after global negation)" : "") << "\n";
    }
    return kExitOk;
}

int cmd_forms_genus(long long det, int sign, const std::string& format) {
    auto genera = genus_partition(Int(det), sign);
    if (format == "json") {
        json arr = json::array();
        for (std::size_t i = 0; i < genera.size(); ++i) {
            json members = json::array();
            for (const auto& m : genera[i].members)
                members.push_back(forms_json_row(m, "g" + std::to_string(i)));
            arr.push_back(json{{"genus_id", "g" + std::to_string(i)},
                               {"fingerprint", genera[i].fingerprint},
                               {"members", members}});
        }
        std::cout << arr.dump(2) << "\n";
    } else {
        for (std::size_t i = 0; i < genera.size(); ++i) {
            std::cout << "genus g" << i << " (" << genera[i].members.size() << " classes)\n";
            for (const auto& m : genera[i].members) forms_table_row(m, "g" + std::to_string(i));
        }
    }
    return kExitOk;
}

int cmd_forms_mazur(const std::string& range, const std::string& format) {
    auto dots = range.find("..");
    Int lo, hi;
    if (dots == std::string::npos) {
        lo = hi = Int(range);
    } else {
        lo = Int(range.substr(0, dots));
        hi = Int(range.substr(dots + 2));
    }
    auto pairs = mazur_search(lo, hi);
    if (format == "json") {
        json arr = json::array();
        for (const auto& p : pairs)
            arr.push_back(json{{"det", int_to_json(p.det)},
                               {"A", imat_to_json(p.a.gram())},
                               {"B", imat_to_json(p.b.gram())}});
        std::cout << arr.dump(2) << "\n";
    } else {
        for (const auto& p : pairs)
            std::cout << "det " << p.det.str() << ": A = [[" << p.a.gram()[0][0].str() << ","
                      << p.a.gram()[0][1].str() << "],[" << p.a.gram()[1][0].str() << ","
                      << p.a.gram()[1][1].str() << "]]  B = [[" << p.b.gram()[0][0].str() << ","
                      << p.b.gram()[0][1].str() << "],[" << p.b.gram()[1][0].str() << ","
                      << p.b.gram()[1][1].str() << "]]\n";
        if (pairs.empty()) std::cout << "no pairs in range\n";
    }
    return kExitOk;
}

int cmd_lefschetz_verify(const std::string& input) {
    auto cfg = config_from_json(read_json_input(input));
    auto res = verify_config(cfg);
    if (res.balanced) {
        std::cout << "balanced\n";
        return kExitOk;
    }
    std::cout << "unbalanced, residual = " << res.residual.str() << "\n";
    return kExitVerificationFailed;
}

int cmd_lefschetz_search(long n, long s, long max_points) {
    auto configs = search_point_configs(n, s, max_points);
    for (const auto& cfg : configs) print_config_line(cfg);
    std::cout << "# " << configs.size() << " configuration(s) for N=" << n << " s=" << s
              << " max_points=" << max_points << "\n";
    std::cout << "# total\tweights\n";
    for (const auto& cfg : configs) {
        std::cout << "# " << cfg.total_points() << "\t";
        for (const auto& p : cfg.points)
            std::cout << p.multiplicity << "x(" << p.i << "," << p.j << ") ";
        std::cout << "\n";
    }
    return kExitOk;
}

int cmd_lefschetz_guarantee(long n, long m) {
    auto res = fixed_points_guaranteed(n, m);
    std::cout << "N = " << n * m << " = " << n << " * " << m << ": 1 + zeta_m^{-1} = "
              << res.lhs.str() << "\n";
    std::cout << (res.guaranteed ? "fixed points guaranteed\n" : "not guaranteed (m = 2)\n");
    return kExitOk;
}

int cmd_action_validate(const std::string& input) {
    auto a = action_from_json(read_json_input(input));
    auto rep = validate_action(a);
    if (rep.valid) {
        std::cout << "valid\n";
        return kExitOk;
    }
    for (const auto& v : rep.violations) std::cout << "violation: " << v << "\n";
    return kExitVerificationFailed;
}

int cmd_action_factor(const std::string& input) {
    auto a = action_from_json(read_json_input(input));
    auto f = factorization(a);
    std::cout << "N = " << a.order << " = " << f.n << " * " << f.m;
    if (f.symplectic()) std::cout << " (symplectic)";
    if (f.purely_nonsymplectic()) std::cout << " (purely nonsymplectic)";
    std::cout << "\n";
    return kExitOk;
}

int cmd_action_trace(const std::string& input) {
    auto a = action_from_json(read_json_input(input));
    for (const auto& [r, chi] : trace_sequence(a))
        std::cout << "chi(sigma^" << r << ") = " << chi.str() << "\n";
    return kExitOk;
}

int cmd_action_compare(const std::string& in_a, const std::string& in_b) {
    auto a = action_from_json(read_json_input(in_a));
    auto b = action_from_json(read_json_input(in_b));
    auto rep = derived_partner_check(a, b, default_budget());
    for (const auto& inv : rep.invariants)
        std::cout << inv.name << ": " << (inv.match ? "match" : "MISMATCH") << " (" << inv.lhs
                  << " vs " << inv.rhs << ")\n";
    std::cout << "integral search: " << rep.integral_search << "\n";
    std::cout << (rep.compatible ? "compatible with equivariant derived equivalence\n"
                                 : "incompatible\n");
    return rep.compatible ? kExitOk : kExitVerificationFailed;
}

int cmd_action_admissible(long n, long m) {
    auto v = order_admissibility(n, m);
    std::cout << "(n, m) = (" << n << ", " << m << "): "
              << (v.admissible ? "admissible" : "inadmissible") << " - " << v.rule << "\n";
    return v.admissible ? kExitOk : kExitVerificationFailed;
}

int cmd_action_enriques(const std::string& input, bool full) {
    auto l = lattice_from_json(read_json_input(input));
    auto v = enriques_signature(l, full);
    for (const auto& c : v.checks) std::cout << c << "\n";
    std::cout << (v.match ? "matches the Enriques fixed lattice U(2) + E8(2)\n"
                          : "does not match U(2) + E8(2)\n");
    return v.match ? kExitOk : kExitVerificationFailed;
}

int cmd_reproduce_compatible() {
    auto rep = example_compatible_report();
    for (const auto& line : rep.log) std::cout << line << "\n";
    std::cout << "glue classes over (d1, d2): (" << rep.glue_class_1[0].str() << ","
              << rep.glue_class_1[1].str() << ") and (" << rep.glue_class_2[0].str() << ","
              << rep.glue_class_2[1].str() << ")\n";
    if (!rep.compatible) {
        std::cout << "incompatible: no Mukai-lattice automorphism conjugates iota_1, iota_2\n";
        return kExitOk;
    }
    std::cout << "unexpected: compatible\n";
    return kExitVerificationFailed;
}

int cmd_reproduce_mazur() {
    bool ok = true;
    auto list = enumerate_even(Int(47), +1);
    std::cout << "even forms of Gram determinant 47: " << list.size() << " classes\n";
    ok = ok && list.size() == 5;
    int rep2 = 0;
    for (const auto& f : list)
        if (represents(f, Int(2)).represented) ++rep2;
    std::cout << "classes representing 2: " << rep2 << "\n";
    ok = ok && rep2 == 1;
    auto pair = mazur_action_pair();
    for (const auto& line : pair.log) std::cout << line << "\n";
    ok = ok && !pair.a_b_isometric && pair.same_genus && !pair.represents_minus_two_a &&
         !pair.represents_minus_two_b;
    std::cout << (ok ? "mazur reproduction: PASS\n" : "mazur reproduction: FAIL\n");
    return ok ? kExitOk : kExitVerificationFailed;
}

int cmd_reproduce_niktable() {
    bool ok = true;
    const std::map<long, long> expect = {{2, 8}, {3, 6}, {5, 4}, {7, 3}};
    for (const auto& [n, count] : expect) {
        auto configs = search_point_configs(n, 0, 24);
        bool unique = configs.size() == 1 && configs[0].total_points() == count;
        std::cout << "N=" << n << " s=0: " << configs.size() << " solution(s), minimal total "
                  << (configs.empty() ? -1 : configs.front().total_points()) << " (expect "
                  << count << " unique): " << (unique ? "PASS" : "FAIL") << "\n";
        ok = ok && unique;
    }
    for (long n : {4L, 6L, 8L}) {
        auto configs = search_point_configs(n, 0, 24);
        bool nonempty = !configs.empty();
        bool minimal = nonempty && configs.front().total_points() == niktable_fixed_points(n);
        bool powers = niktable_power_consistent(n);
        std::cout << "N=" << n << " s=0: minimal total "
                  << (nonempty ? configs.front().total_points() : -1) << " (expect "
                  << niktable_fixed_points(n) << "), power consistency "
                  << (powers ? "PASS" : "FAIL") << "\n";
        ok = ok && minimal && powers;
    }
    std::cout << (ok ? "niktable reproduction: PASS\n" : "niktable reproduction: FAIL\n");
    return ok ? kExitOk : kExitVerificationFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact lattice, binary-form and Lefschetz fixed-point computations"};
    app.require_subcommand(1);

    std::string input, input_b, span, format = "table", range;
    long long det = 0;
    int sign = +1;
    long n_arg = 0, m_arg = 0, big_n = 0, s_arg = 0, max_points = 24;
    bool full = false;

    auto* lattice = app.add_subcommand("lattice", "lattice reports");
    auto* ldisc = lattice->add_subcommand("disc", "discriminant form report");
    ldisc->add_option("input", input, "lattice JSON (file, inline or -)")->required();
    ldisc->add_option("--format", format, "json|table");
    auto* lcomp = lattice->add_subcommand("complement", "orthogonal complement");
    lcomp->add_option("input", input)->required();
    lcomp->add_option("--span", span, "vectors, e.g. \"1,0;0,1\"")->required();
    lcomp->add_option("--format", format);

    auto* forms = app.add_subcommand("forms", "binary quadratic form tables");
    auto* fenum = forms->add_subcommand("enumerate", "reduced even forms of given determinant");
    fenum->add_option("--det", det)->required();
    fenum->add_option("--sign", sign);
    fenum->add_option("--format", format);
    auto* fred = forms->add_subcommand("reduce", "Gauss reduction");
    fred->add_option("input", input)->required();
    fred->add_option("--format", format);
    auto* fgen = forms->add_subcommand("genus", "genus partition");
    fgen->add_option("--det", det)->required();
    fgen->add_option("--sign", sign);
    fgen->add_option("--format", format);
    auto* fmaz = forms->add_subcommand("mazur", "same-genus non-isometric pairs avoiding -2");
    fmaz->add_option("--det-range", range, "a..b")->required();
    fmaz->add_option("--format", format);

    auto* lef = app.add_subcommand("lefschetz", "holomorphic fixed point formula");
    auto* lver = lef->add_subcommand("verify", "check a configuration exactly");
    lver->add_option("input", input)->required();
    auto* lsearch = lef->add_subcommand("search", "enumerate point configurations");
    lsearch->add_option("--N", big_n)->required();
    lsearch->add_option("--s", s_arg)->required();
    lsearch->add_option("--max-points", max_points);
    auto* lguar = lef->add_subcommand("guarantee", "fixed point guarantee for N = n*m");
    lguar->add_option("--n", n_arg)->required();
    lguar->add_option("--m", m_arg)->required();

    auto* action = app.add_subcommand("action", "Mukai lattice action analysis");
    auto* avali = action->add_subcommand("validate", "check action invariants");
    avali->add_option("input", input)->required();
    auto* afact = action->add_subcommand("factor", "factorization N = n*m");
    afact->add_option("input", input)->required();
    auto* atrace = action->add_subcommand("trace", "trace sequence");
    atrace->add_option("input", input)->required();
    auto* acomp = action->add_subcommand("compare", "derived partner invariants");
    acomp->add_option("inputA", input)->required();
    acomp->add_option("inputB", input_b)->required();
    auto* aadm = action->add_subcommand("admissible", "order gate");
    aadm->add_option("--n", n_arg)->required();
    aadm->add_option("--m", m_arg)->required();
    auto* aenr = action->add_subcommand("enriques", "Enriques fixed-lattice test");
    aenr->add_option("input", input)->required();
    aenr->add_flag("--full", full, "also search for an explicit discriminant-form isomorphism");

    auto* repro = app.add_subcommand("reproduce", "worked examples");
    auto* rcomp = repro->add_subcommand("compatible", "double-cover involution obstruction");
    auto* rmaz = repro->add_subcommand("mazur", "determinant 47 genus pair");
    auto* rnik = repro->add_subcommand("niktable", "symplectic fixed point counts");

    CLI11_PARSE(app, argc, argv);

    try {
        if (ldisc->parsed()) return cmd_lattice_disc(input, format);
        if (lcomp->parsed()) return cmd_lattice_complement(input, span, format);
        if (fenum->parsed()) return cmd_forms_enumerate(det, sign, format);
        if (fred->parsed()) return cmd_forms_reduce(input, format);
        if (fgen->parsed()) return cmd_forms_genus(det, sign, format);
        if (fmaz->parsed()) return cmd_forms_mazur(range, format);
        if (lver->parsed()) return cmd_lefschetz_verify(input);
        if (lsearch->parsed()) return cmd_lefschetz_search(big_n, s_arg, max_points);
        if (lguar->parsed()) return cmd_lefschetz_guarantee(n_arg, m_arg);
        if (avali->parsed()) return cmd_action_validate(input);
        if (afact->parsed()) return cmd_action_factor(input);
        if (atrace->parsed()) return cmd_action_trace(input);
        if (acomp->parsed()) return cmd_action_compare(input, input_b);
        if (aadm->parsed()) return cmd_action_admissible(n_arg, m_arg);
        if (aenr->parsed()) return cmd_action_enriques(input, full);
        if (rcomp->parsed()) return cmd_reproduce_compatible();
        if (rmaz->parsed()) return cmd_reproduce_mazur();
        if (rnik->parsed()) return cmd_reproduce_niktable();
    } catch (const json::parse_error& e) {
        std::cerr << "invalid JSON: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    }
    return kExitInvalidInput;
}
