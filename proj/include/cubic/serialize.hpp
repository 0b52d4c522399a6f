#pragma once

#include <json.hpp>

#include "cubic/census.hpp"
#include "cubic/class_numbers.hpp"
#include "cubic/field.hpp"
#include "cubic/splitting.hpp"
#include "cubic/units.hpp"

namespace cubic {

using json = nlohmann::json;

// int64-sized integers become JSON numbers, larger ones decimal strings.
json int_json(const Int& v);
Int int_from(const json& j);

json poly_json(const CubicPolynomial& f);
CubicPolynomial poly_from(const json& j);

json field_json(const CubicField& F);
// Rebuilds the field from its polynomial and checks the stored basis.
CubicField field_from(const json& j);

json lattice_json(const Lattice& L);
Lattice lattice_from(const json& j);
json order_json(const Order& O);

json interval_json(const Interval& v);   // [lo, hi] as outward-rounded decimal strings
Interval interval_from(const json& j);

json unit_json(const UnitData& u);
UnitData unit_from(const json& j);

json splitting_json(const SplittingType& st);

json class_set_json(const ModuleClassSet& mc);
json ideal_classes_json(const IdealClassSet& c);

json record_json(const OrderRecord& r);
OrderRecord record_from(const json& j);

json outcome_json(const FieldOutcome& fo);
FieldOutcome outcome_from(const json& j);

} // namespace cubic
