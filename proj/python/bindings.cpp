#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "eps0/jobspec.hpp"
#include "eps0/verify.hpp"

namespace py = pybind11;
using namespace eps0;

namespace {

// nlohmann::json -> native python objects
py::object json_to_py(const Json& j)
{
    switch (j.type()) {
    case Json::value_t::null:
        return py::none();
    case Json::value_t::boolean:
        return py::bool_(j.get<bool>());
    case Json::value_t::number_integer:
        return py::int_(j.get<int64_t>());
    case Json::value_t::number_unsigned:
        return py::int_(j.get<uint64_t>());
    case Json::value_t::number_float:
        return py::float_(j.get<double>());
    case Json::value_t::string:
        return py::str(j.get<std::string>());
    case Json::value_t::array: {
        py::list out;
        for (const auto& v : j)
            out.append(json_to_py(v));
        return out;
    }
    case Json::value_t::object: {
        py::dict out;
        for (auto it = j.begin(); it != j.end(); ++it)
            out[py::str(it.key())] = json_to_py(it.value());
        return out;
    }
    default:
        throw Error("unsupported JSON payload");
    }
}

Json parse_json(const std::string& text, const char* what)
{
    try {
        return Json::parse(text);
    } catch (const std::exception& e) {
        throw Error(std::string("bad JSON for ") + what + ": " + e.what());
    }
}

struct Inputs {
    MulChar chi;
    AddChar psi;
    HaarMeasure dx;
};

Inputs make_inputs(const std::string& char_json, const std::string& psi_json,
                   const std::string& vol_json)
{
    MulChar chi = char_from_json(parse_json(char_json, "char"));
    LocalFieldSpec field = chi.field();
    AddChar psi = psi_from_json(
        psi_json.empty() ? Json() : parse_json(psi_json, "psi"), field);
    HaarMeasure dx =
        vol_from_json(vol_json.empty() ? Json() : parse_json(vol_json, "vol"), field.p);
    return Inputs{std::move(chi), std::move(psi), std::move(dx)};
}

} // namespace

PYBIND11_MODULE(_eps0, m)
{
    m.doc() = "exact local epsilon-factor engine";

    py::register_exception<Error>(m, "InputError");
    py::register_exception<TheoremViolation>(m, "InvariantError");

    m.def(
        "compute",
        [](const std::string& char_json, const std::string& psi_json,
           const std::string& vol_json) {
            Inputs in = make_inputs(char_json, psi_json, vol_json);
            return json_to_py(compute_record(in.chi, in.psi, in.dx));
        },
        py::arg("char_json"), py::arg("psi_json") = "", py::arg("vol_json") = "",
        "Evaluate one epsilon factor; returns the full record as a dict.");

    m.def(
        "compute_virtual",
        [](const std::string& vrep_json, const std::string& psi_json,
           const std::string& vol_json) {
            VirtualRep v = vrep_from_json(parse_json(vrep_json, "vrep"));
            LocalFieldSpec field = v.terms().front().second.base;
            AddChar psi = psi_from_json(
                psi_json.empty() ? Json() : parse_json(psi_json, "psi"), field);
            HaarMeasure dx = vol_from_json(
                vol_json.empty() ? Json() : parse_json(vol_json, "vol"), field.p);
            return json_to_py(compute_virtual_record(v, psi, dx));
        },
        py::arg("vrep_json"), py::arg("psi_json") = "", py::arg("vol_json") = "",
        "Evaluate the epsilon factor of a virtual representation (atom term list).");

    m.def(
        "oracle_value",
        [](const std::string& char_json, const std::string& psi_json,
           const std::string& vol_json) {
            Inputs in = make_inputs(char_json, psi_json, vol_json);
            return json_to_py(cyc_to_json(epsilon0_char_oracle(in.chi, in.psi, in.dx)));
        },
        py::arg("char_json"), py::arg("psi_json") = "", py::arg("vol_json") = "",
        "Naive term-by-term evaluation used as an independent cross-check.");

    m.def(
        "verify",
        [](const std::string& suite, uint64_t seed, int threads) {
            return json_to_py(run_suite(suite, seed, threads).to_json());
        },
        py::arg("suite"), py::arg("seed") = 12345, py::arg("threads") = 1,
        "Run a named verification suite and return its JSON report.");

    m.def(
        "table",
        [](const std::string& field, int max_cond, const std::string& psi_json,
           const std::string& vol_json, size_t cap) {
            LocalFieldSpec spec = LocalFieldSpec::parse(field);
            AddChar psi = psi_from_json(
                psi_json.empty() ? Json() : parse_json(psi_json, "psi"), spec);
            HaarMeasure dx = vol_from_json(
                vol_json.empty() ? Json() : parse_json(vol_json, "vol"), spec.p);
            return table_csv(spec, max_cond, CycNum::one(spec.p), psi, dx, cap);
        },
        py::arg("field"), py::arg("max_cond") = 1, py::arg("psi_json") = "",
        py::arg("vol_json") = "", py::arg("cap") = 512,
        "CSV of epsilon values over the family of characters of (O/pi^a)^x.");

    m.def(
        "swan",
        [](int64_t p, int n) { return json_to_py(swan_record_builtin(p, n)); },
        py::arg("p") = 3, py::arg("n") = 1,
        "Artin/Swan characters and pairings for the built-in filtrations.");

    m.def(
        "reduce",
        [](const std::string& char_json, int64_t ell, const std::string& psi_json,
           const std::string& vol_json) {
            Inputs in = make_inputs(char_json, psi_json, vol_json);
            return json_to_py(reduce_record(in.chi, in.psi, in.dx, ell));
        },
        py::arg("char_json"), py::arg("l"), py::arg("psi_json") = "",
        py::arg("vol_json") = "",
        "Compare epsilon computed mod l with the reduction of the exact value.");
}
