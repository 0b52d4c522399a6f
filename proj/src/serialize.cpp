#include "cubic/serialize.hpp"

#include "cubic/errors.hpp"

namespace cubic {

json int_json(const Int& v) {
    if (v.fits_slong_p()) return json(static_cast<std::int64_t>(v.get_si()));
    return json(v.get_str());
}

Int int_from(const json& j) {
    if (j.is_number_integer()) return Int(static_cast<long>(j.get<std::int64_t>()));
    if (j.is_string()) {
        Int v;
        if (v.set_str(j.get<std::string>(), 10) != 0) throw InvalidInput("bad integer " + j.dump());
        return v;
    }
    throw InvalidInput("expected an integer, got " + j.dump());
}

json poly_json(const CubicPolynomial& f) { return json::array({int_json(f.a1), int_json(f.a2), int_json(f.a3)}); }

CubicPolynomial poly_from(const json& j) {
    if (!j.is_array() || j.size() != 3) throw InvalidInput("polynomial must be [a1, a2, a3]");
    return {int_from(j[0]), int_from(j[1]), int_from(j[2])};
}

json field_json(const CubicField& F) {
    json b = json::array();
    for (const auto& row : F.basis_num)
        for (const auto& v : row) b.push_back(int_json(v));
    return {{"poly", poly_json(F.poly)}, {"d_K", int_json(F.d_K)}, {"k", int_json(F.k)}, {"basis_num", b},
            {"basis_den", int_json(F.basis_den)}};
}

CubicField field_from(const json& j) {
    CubicField F = maximal_order(poly_from(j.at("poly")));
    if (!(field_json(F) == j)) throw StaleCache("cached field record for " + F.poly.str() + " does not match recomputation");
    return F;
}

json lattice_json(const Lattice& L) {
    json m = json::array();
    for (const auto& row : L.mat)
        for (const auto& v : row) m.push_back(int_json(v));
    return {{"mat", m}, {"den", int_json(L.den)}};
}

Lattice lattice_from(const json& j) {
    const json& m = j.at("mat");
    if (!m.is_array() || m.size() != 9) throw InvalidInput("lattice matrix must have 9 entries");
    std::vector<Vec3> rows(3);
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) rows[i][k] = int_from(m[3 * i + k]);
    Lattice L = hnf(rows, int_from(j.at("den")));
    if (!(lattice_json(L) == j)) throw InvalidInput("lattice is not in normalized HNF");
    return L;
}

json order_json(const Order& O) {
    json j = lattice_json(O.lattice);
    j["f"] = int_json(O.f);
    json t = json::array();
    for (const auto& a : O.table.c)
        for (const auto& b : a)
            for (const auto& v : b) t.push_back(int_json(v));
    j["mult_table"] = t;
    return j;
}

json interval_json(const Interval& v) {
    auto [lo, hi] = v.exact_bounds();
    return json::array({lo, hi});
}

Interval interval_from(const json& j) {
    if (!j.is_array() || j.size() != 2) throw InvalidInput("interval must be [lo, hi]");
    return Interval::from_exact_bounds(j[0].get<std::string>(), j[1].get<std::string>());
}

json unit_json(const UnitData& u) {
    if (!u.eps.is_integral()) throw InternalInconsistency("unit with denominator");
    return {{"eps", json::array({int_json(u.eps.num[0]), int_json(u.eps.num[1]), int_json(u.eps.num[2])})},
            {"R_K", u.R_K.str(30)},
            {"R_K_enclosure", interval_json(u.R_K)},
            {"certificate", u.certificate},
            {"detail", u.detail},
            {"cycle_length", u.cycle_length}};
}

UnitData unit_from(const json& j) {
    UnitData u;
    const json& e = j.at("eps");
    u.eps = Element({int_from(e.at(0)), int_from(e.at(1)), int_from(e.at(2))});
    u.R_K = interval_from(j.at("R_K_enclosure"));
    u.certificate = j.at("certificate").get<std::string>();
    u.detail = j.at("detail").get<std::string>();
    u.cycle_length = j.at("cycle_length").get<std::size_t>();
    return u;
}

json splitting_json(const SplittingType& st) {
    json a = json::array();
    for (const auto& [e, f] : st.pairs) a.push_back(json::array({e, f}));
    return a;
}

json class_set_json(const ModuleClassSet& mc) {
    json reps = json::array();
    for (const auto& L : mc.representatives) reps.push_back(lattice_json(L));
    json hist = json::object();
    for (const auto& [k, v] : mc.by_multiplicator) hist[k] = v;
    return {{"h", mc.h}, {"representatives", reps}, {"by_multiplicator", hist}, {"all_invertible", mc.all_invertible},
            {"picard_sum", mc.picard_sum}};
}

json ideal_classes_json(const IdealClassSet& c) {
    json reps = json::array();
    for (const auto& L : c.representatives) reps.push_back(lattice_json(L));
    return {{"h", c.h}, {"representatives", reps}, {"ideals_examined", c.ideals_examined}};
}

json record_json(const OrderRecord& r) {
    return {{"field", r.field_key},
            {"d_K", int_json(r.d_K)},
            {"poly", poly_json(r.poly)},
            {"order", lattice_json(r.lattice)},
            {"f", int_json(r.f)},
            {"m", r.m},
            {"R", interval_json(r.R)},
            {"r", interval_json(r.r)},
            {"h", r.h},
            {"lambda", r.lambda},
            {"weight", r.weight},
            {"all_invertible", r.all_invertible},
            {"picard_sum", r.picard_sum}};
}

OrderRecord record_from(const json& j) {
    OrderRecord r;
    r.field_key = j.at("field").get<std::string>();
    r.d_K = int_from(j.at("d_K"));
    r.poly = poly_from(j.at("poly"));
    r.lattice = lattice_from(j.at("order"));
    r.f = int_from(j.at("f"));
    r.m = j.at("m").get<unsigned long>();
    r.R = interval_from(j.at("R"));
    r.r = interval_from(j.at("r"));
    r.h = j.at("h").get<unsigned long>();
    r.lambda = j.at("lambda").get<unsigned>();
    r.weight = j.at("weight").get<unsigned long>();
    r.all_invertible = j.at("all_invertible").get<bool>();
    r.picard_sum = j.at("picard_sum").get<unsigned long>();
    r.picard_identity = r.picard_sum == r.h;
    if (r.weight != r.h * r.lambda) throw StaleCache("cached record weight is not h * lambda");
    return r;
}

json outcome_json(const FieldOutcome& fo) {
    json recs = json::array();
    for (const auto& r : fo.records) recs.push_back(record_json(r));
    return {{"field", field_json(fo.field)},
            {"in_CS", fo.in_CS},
            {"unit", fo.unit ? unit_json(*fo.unit) : json(nullptr)},
            {"records", recs}};
}

FieldOutcome outcome_from(const json& j) {
    FieldOutcome fo;
    fo.field = field_from(j.at("field"));
    fo.in_CS = j.at("in_CS").get<bool>();
    if (!j.at("unit").is_null()) fo.unit = unit_from(j.at("unit"));
    for (const auto& r : j.at("records")) fo.records.push_back(record_from(r));
    return fo;
}

} // namespace cubic
