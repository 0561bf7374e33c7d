#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "eps0/jobspec.hpp"
#include "eps0/verify.hpp"

namespace {

// exit codes: 0 ok, 1 verification failure, 2 usage/parse error,
// 3 internal invariant violation
constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInvariant = 3;

void emit(const std::string& text, const std::string& out_path)
{
    if (out_path.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream os(out_path);
    if (!os)
        throw eps0::Error("cannot open output file " + out_path);
    os << text << "\n";
}

eps0::Json parse_json_arg(const std::string& text, const char* what)
{
    try {
        return eps0::Json::parse(text);
    } catch (const std::exception& e) {
        throw eps0::Error(std::string("bad JSON for ") + what + ": " + e.what());
    }
}

// values like "1/3" are accepted verbatim as rational literals
eps0::Json parse_value_arg(const std::string& text)
{
    try {
        return eps0::Json::parse(text);
    } catch (const std::exception&) {
        return eps0::Json(text);
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"exact local epsilon-factor engine"};
    app.require_subcommand(1);

    std::string field_str, char_str, vrep_str, psi_str, vol_str, out_path, suite,
        fixture_path;
    uint64_t seed = 12345;
    int threads = 1;
    int64_t ell = 0;
    int max_cond = 1;
    std::string pi_value_str;
    size_t cap = 512;
    int64_t swan_p = 3;
    int swan_n = 1;

    CLI::App* compute = app.add_subcommand("compute", "evaluate one epsilon factor");
    compute->add_option("--field", field_str, "field descriptor, e.g. padic:p=3,f=1");
    compute->add_option("--char", char_str, "character spec (JSON)");
    compute->add_option("--vrep", vrep_str,
                        "virtual representation term list (JSON), alternative to --char");
    compute->add_option("--psi-twist", psi_str, "additive twist (JSON or integer)");
    compute->add_option("--vol", vol_str, "volume of O_K (JSON, rational or integer)");
    compute->add_option("--out", out_path, "write the record to a file");

    CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("--suite", suite, "formulary|induction|reduction|swan|units")
        ->required();
    verify->add_option("--seed", seed, "seed for the randomized suites");
    verify->add_option("--threads", threads, "worker threads (results are identical)");
    verify->add_option("--out", out_path, "write the JSON report to a file");

    CLI::App* table = app.add_subcommand("table", "CSV of epsilon values over a family");
    table->add_option("--field", field_str, "field descriptor")->required();
    table->add_option("--max-cond", max_cond, "conductor bound (family = all characters"
                                              " of (O/pi^a)^x)");
    table->add_option("--pi-value", pi_value_str, "common chi(pi) (JSON or rational)");
    table->add_option("--psi-twist", psi_str, "additive twist (JSON or integer)");
    table->add_option("--vol", vol_str, "volume of O_K");
    table->add_option("--cap", cap, "largest family size to accept");
    table->add_option("--out", out_path, "write the CSV to a file");

    CLI::App* swan = app.add_subcommand("swan", "Artin/Swan characters and pairings");
    swan->add_option("--p", swan_p, "odd prime (built-in cyclotomic filtration)");
    swan->add_option("--n", swan_n, "cyclotomic level exponent, n <= 3");
    swan->add_option("--fixture", fixture_path, "JSON group/filtration fixture file");
    swan->add_option("--out", out_path, "write the JSON report to a file");

    CLI::App* reduce = app.add_subcommand("reduce", "compare epsilon mod l with the"
                                                    " reduction of the exact value");
    reduce->add_option("--field", field_str, "field descriptor");
    reduce->add_option("--char", char_str, "character spec (JSON)")->required();
    reduce->add_option("--psi-twist", psi_str, "additive twist (JSON or integer)");
    reduce->add_option("--vol", vol_str, "volume of O_K");
    reduce->add_option("--l", ell, "reduction prime l != p")->required();
    reduce->add_option("--out", out_path, "write the record to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (compute->parsed() && !vrep_str.empty()) {
            if (!char_str.empty())
                throw eps0::Error("give exactly one of --char and --vrep");
            eps0::VirtualRep v =
                eps0::vrep_from_json(parse_json_arg(vrep_str, "--vrep"));
            eps0::LocalFieldSpec field = v.terms().front().second.base;
            eps0::Json psi_json =
                psi_str.empty() ? eps0::Json() : parse_json_arg(psi_str, "--psi-twist");
            eps0::AddChar psi = eps0::psi_from_json(psi_json, field);
            eps0::Json vol_json =
                vol_str.empty() ? eps0::Json() : parse_value_arg(vol_str);
            eps0::HaarMeasure dx = eps0::vol_from_json(vol_json, field.p);
            emit(eps0::dump_json(eps0::compute_virtual_record(v, psi, dx)), out_path);
            return kExitOk;
        }
        if (compute->parsed() || reduce->parsed()) {
            if (char_str.empty())
                throw eps0::Error("a character spec is required (--char, or --vrep for"
                                  " compute)");
            eps0::Json char_json = parse_json_arg(char_str, "--char");
            if (!char_json.contains("field") && !field_str.empty())
                char_json["field"] = field_str;
            eps0::MulChar chi = eps0::char_from_json(char_json);
            eps0::LocalFieldSpec field = chi.field();
            eps0::Json psi_json =
                psi_str.empty() ? eps0::Json() : parse_json_arg(psi_str, "--psi-twist");
            eps0::AddChar psi = eps0::psi_from_json(psi_json, field);
            eps0::Json vol_json =
                vol_str.empty() ? eps0::Json() : parse_value_arg(vol_str);
            eps0::HaarMeasure dx = eps0::vol_from_json(vol_json, field.p);
            if (compute->parsed()) {
                emit(eps0::dump_json(eps0::compute_record(chi, psi, dx)), out_path);
                return kExitOk;
            }
            eps0::Json rec = eps0::reduce_record(chi, psi, dx, ell);
            emit(eps0::dump_json(rec), out_path);
            return rec.at("agree").get<bool>() ? kExitOk : kExitVerifyFail;
        }
        if (verify->parsed()) {
            eps0::SuiteReport rep = eps0::run_suite(suite, seed, threads);
            emit(rep.to_string(), out_path);
            return rep.failures() == 0 ? kExitOk : kExitVerifyFail;
        }
        if (table->parsed()) {
            eps0::LocalFieldSpec field = eps0::LocalFieldSpec::parse(field_str);
            eps0::CycNum piv = pi_value_str.empty()
                ? eps0::CycNum::one(field.p)
                : eps0::cyc_from_json(parse_value_arg(pi_value_str), field.p);
            eps0::Json psi_json =
                psi_str.empty() ? eps0::Json() : parse_json_arg(psi_str, "--psi-twist");
            eps0::AddChar psi = eps0::psi_from_json(psi_json, field);
            eps0::Json vol_json =
                vol_str.empty() ? eps0::Json() : parse_value_arg(vol_str);
            eps0::HaarMeasure dx = eps0::vol_from_json(vol_json, field.p);
            emit(eps0::table_csv(field, max_cond, piv, psi, dx, cap), out_path);
            return kExitOk;
        }
        if (swan->parsed()) {
            eps0::Json rec;
            if (!fixture_path.empty()) {
                std::ifstream is(fixture_path);
                if (!is)
                    throw eps0::Error("cannot open fixture file " + fixture_path);
                eps0::Json fixture = eps0::Json::parse(is, nullptr, true);
                rec = eps0::swan_record_from_fixture(fixture);
            } else {
                rec = eps0::swan_record_builtin(swan_p, swan_n);
            }
            emit(eps0::dump_json(rec), out_path);
            return kExitOk;
        }
    } catch (const eps0::TheoremViolation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const eps0::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
