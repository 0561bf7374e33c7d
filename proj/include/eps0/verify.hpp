#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eps0/epsilon.hpp"
#include "eps0/jobspec.hpp"

namespace eps0 {

struct CaseResult {
    std::string name;
    bool pass;
    std::string detail; // empty when passing
};

struct SuiteReport {
    std::string suite;
    uint64_t seed = 0;
    std::vector<CaseResult> cases;

    int failures() const;
    Json to_json() const;
    std::string to_string() const; // deterministic byte-stable rendering
};

// rank-1 job: everything needed to evaluate (and re-evaluate) one epsilon
struct JobCase {
    std::string name;
    MulChar chi;
    AddChar psi;
    HaarMeasure dx;
};

// all characters of conductor <= 3 on Q_3, Q_5 and F_4((t)), standard psi,
// vol 1 (the shared base-case family of the verification suites)
std::vector<JobCase> criterion1_cases();

// the independent naive evaluation: enumerate gamma^{-1} O^x one level finer
// than the engine's coset granularity and sum the integrand term by term
CycNum epsilon0_char_oracle(const MulChar& chi, const AdditiveCharacter& psi,
                            const HaarMeasure& dx);

SuiteReport run_gauss_oracle(int threads = 1);
SuiteReport run_formulary(uint64_t seed, int threads = 1);
SuiteReport run_induction(int threads = 1);
SuiteReport run_reduction(int threads = 1);
SuiteReport run_swan();
SuiteReport run_units(uint64_t seed, int threads = 1);

// dispatch by suite name: formulary, induction, reduction, swan, units
SuiteReport run_suite(const std::string& name, uint64_t seed, int threads);

} // namespace eps0
