#pragma once

#include <json.hpp>

#include <string>

#include "eps0/epsilon.hpp"
#include "eps0/reduction.hpp"
#include "eps0/swan.hpp"

namespace eps0 {

using Json = nlohmann::json;

// ---- value serialization ----

Json cyc_to_json(const CycNum& a);
// full object form {"level", "p", "coeffs"}; shorthand: a string "num/den"
// or an integer, both read at level 1 with the supplied banned prime
CycNum cyc_from_json(const Json& j, int64_t p);

Json kelement_to_json(const KElement& x);
KElement kelement_from_json(const Json& j, const LocalFieldSpec& field);

Json unit_group_to_json(const UnitGroup& ug);

// ---- job inputs ----

// {"field": "...", "cond": a, "pi_value": ..., "unit_exps": [...]}
MulChar char_from_json(const Json& j);
Json char_to_json(const MulChar& chi);

// psi: null/absent -> standard; integer k -> twist by pi^k; object
// {"twist": <KElement>} -> that twist
AddChar psi_from_json(const Json& j, const LocalFieldSpec& field);

// accepts the bare value or the {"vol": ...} wrapper
HaarMeasure vol_from_json(const Json& j, int64_t p);

// term list [{"coef": c, "atom": {"f": fprime, "char": {...}}}]; the atom's
// base field is the character's field with f divided by fprime
VirtualRep vrep_from_json(const Json& j);
Json vrep_to_json(const VirtualRep& v);

// ---- CLI-facing records ----

Json compute_record(const MulChar& chi, const AddChar& psi, const HaarMeasure& dx);
Json compute_virtual_record(const VirtualRep& v, const AddChar& psi,
                            const HaarMeasure& dx);

std::string table_csv(const LocalFieldSpec& field, int max_cond, const CycNum& pi_value,
                      const AddChar& psi, const HaarMeasure& dx, size_t cap);

Json swan_record_builtin(int64_t p, int n);
Json swan_record_from_fixture(const Json& fixture);

Json reduce_record(const MulChar& chi, const AddChar& psi, const HaarMeasure& dx,
                   int64_t l);

// deterministic, key-ordered dump used everywhere output stability matters
std::string dump_json(const Json& j);

} // namespace eps0
