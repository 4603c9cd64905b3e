#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "approxdeg/lp_core.hpp"
#include "approxdeg/rational.hpp"

namespace approxdeg::cli {

/// Exit codes: 0 success, 1 verification failure, 2 usage error.
int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct DegreeArgs {
    std::string family;
    int n = 0;
    int r = 0;            // 0 = family default
    std::string param;    // alpha / delta / c as "p/q"
    int k = 0;            // ED^k multiplicity
    std::string eps;      // "p/q"
    Sided sided = Sided::TwoSided;
    bool orbit = false;
    std::string witness_path;   // optional DualWitness JSON output
    std::string function_path;  // custom function JSON, overrides --family
};

int cmd_degree(const DegreeArgs& a, std::ostream& out);

struct ScanArgs {
    std::string family;
    int n = 0;
    int r = 0;
    std::string param;
    int k = 0;
    std::vector<std::string> eps_list;  // strictly decreasing
    Sided sided = Sided::TwoSided;
    bool orbit = false;
    std::string svg_path;
    std::string csv_path;       // empty = stdout
    std::string function_path;  // custom function JSON, overrides --family
};

int cmd_scan(const ScanArgs& a, std::ostream& out);

struct CertifyArgs {
    std::string pipeline;  // ed | ed-k | surj | ptp
    int n = 0;
    int k = 1;
    int r_param = 0;       // ED^k multiplicity
    std::string c;         // SURJ range fraction "p/q"
    std::string alpha;     // PTP promise parameter "p/q"
    std::string base_eps;  // "p/q"
    std::string out_path;
};

int cmd_certify(const CertifyArgs& a, std::ostream& out);

int cmd_verify(const std::string& bundle_path, std::ostream& out);

struct SimulateArgs {
    std::string n_spec;       // "a,b,c" or "a..b" (doubling)
    std::string alpha = "1/2";
    std::vector<std::string> eps_list;
    long trials = 0;
    std::uint64_t seed = 1;
    double grid_ratio = 2.0;
    std::string csv_path;  // empty = stdout
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out);

struct FamiliesArgs {
    std::string family;  // empty = list the table
    int n = 0;
    int r = 0;
    std::string param;
    int k = 0;
    std::string out_path;  // function JSON dump
};

int cmd_families(const FamiliesArgs& a, std::ostream& out);

/// Shared helpers (exposed for tests).
std::vector<int> parse_n_spec(const std::string& spec);
PromiseFunction build_family(const std::string& family, int n, int r,
                             const std::string& param, int k);

}  // namespace approxdeg::cli
