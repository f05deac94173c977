#pragma once

#include <json.hpp>

#include "k3lat/action.hpp"
#include "k3lat/forms.hpp"
#include "k3lat/lattice.hpp"
#include "k3lat/lefschetz.hpp"

namespace k3lat {

using json = nlohmann::json;

inline json int_to_json(const Int& v) {
    if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
        return v.convert_to<long long>();
    return v.str();
}

inline Int int_from_json(const json& j) {
    if (j.is_number_integer()) return Int(j.get<long long>());
    if (j.is_string()) return Int(j.get<std::string>());
    throw std::invalid_argument("expected an integer (number or string)");
}

inline json imat_to_json(const IMat& m) {
    json rows = json::array();
    for (const auto& r : m) {
        json row = json::array();
        for (const auto& x : r) row.push_back(int_to_json(x));
        rows.push_back(row);
    }
    return rows;
}

inline IMat imat_from_json(const json& j) {
    if (!j.is_array()) throw std::invalid_argument("expected a matrix (array of arrays)");
    IMat m;
    for (const auto& row : j) {
        IVec r;
        for (const auto& x : row) r.push_back(int_from_json(x));
        m.push_back(std::move(r));
    }
    return m;
}

inline IntegerLattice lattice_from_json(const json& j, bool allow_degenerate = false) {
    std::string label = j.value("label", "");
    return IntegerLattice(imat_from_json(j.at("gram")), label, allow_degenerate);
}

inline json lattice_to_json(const IntegerLattice& l) {
    return json{{"label", l.label()}, {"gram", imat_to_json(l.gram())}};
}

inline json discriminant_form_to_json(const DiscriminantForm& f) {
    json inv = json::array();
    for (const auto& d : f.group().invariant_factors) inv.push_back(int_to_json(d));
    json gens = json::array();
    json qvals = json::array();
    for (const auto& g : f.generators()) {
        json coords = json::array();
        for (const auto& c : g.coordinates) coords.push_back(rat_to_string(c));
        gens.push_back(coords);
        qvals.push_back(rat_to_string(f.q_value(g.coordinates)));
    }
    return json{{"invariant_factors", inv}, {"generators", gens}, {"q_values", qvals}};
}

inline json config_to_json(const FixedPointConfig& cfg) {
    json pts = json::array();
    for (const auto& p : cfg.points) pts.push_back(json::array({p.i, p.j, p.multiplicity}));
    json curves = json::array();
    for (const auto& c : cfg.curves)
        curves.push_back(json{{"g", c.g}, {"r", c.r}, {"c2", int_to_json(c.c2)}});
    return json{{"N", cfg.n}, {"s", cfg.s}, {"points", pts}, {"curves", curves}};
}

inline FixedPointConfig config_from_json(const json& j) {
    FixedPointConfig cfg;
    cfg.n = j.at("N").get<long>();
    cfg.s = j.at("s").get<long>();
    for (const auto& p : j.value("points", json::array())) {
        if (!p.is_array() || p.size() != 3)
            throw std::invalid_argument("points entries must be [i, j, multiplicity]");
        cfg.points.push_back({p[0].get<long>(), p[1].get<long>(), p[2].get<long>()});
    }
    for (const auto& c : j.value("curves", json::array()))
        cfg.curves.push_back({c.at("g").get<long>(), c.at("r").get<long>(), int_from_json(c.at("c2"))});
    cfg.normalize();
    return cfg;
}

inline K3Action action_from_json(const json& j) {
    K3Action a;
    a.order = j.at("N").get<long>();
    a.two_form_exponent = j.at("s").get<long>();
    a.mukai_matrix = imat_from_json(j.at("mukai_matrix"));
    if (j.contains("pic") && !j["pic"].is_null()) {
        a.pic_gram = imat_from_json(j["pic"].at("gram"));
        a.pic_matrix = imat_from_json(j["pic"].at("matrix"));
    }
    return a;
}

inline json action_to_json(const K3Action& a) {
    json j{{"N", a.order}, {"s", a.two_form_exponent}, {"mukai_matrix", imat_to_json(a.mukai_matrix)}};
    if (a.pic_gram && a.pic_matrix)
        j["pic"] = json{{"gram", imat_to_json(*a.pic_gram)}, {"matrix", imat_to_json(*a.pic_matrix)}};
    return j;
}

}  // namespace k3lat
