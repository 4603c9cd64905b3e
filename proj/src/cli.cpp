#include "approxdeg/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "approxdeg/certify.hpp"
#include "approxdeg/errors.hpp"
#include "approxdeg/json_io.hpp"
#include "approxdeg/simulate.hpp"

namespace approxdeg::cli {

namespace {

std::string family_param_str(const PromiseFunction& f) {
    switch (f.family) {
        case Family::AndRestricted:
        case Family::Ptp:
        case Family::PtpStar:
            return rat_str(f.param);
        case Family::EdK:
            return std::to_string(f.k_param);
        default:
            return "";
    }
}

std::vector<Rat> parse_eps_list(const std::vector<std::string>& raw) {
    std::vector<Rat> eps;
    for (const auto& item : raw) {
        std::stringstream ss(item);
        std::string piece;
        while (std::getline(ss, piece, ',')) {
            if (!piece.empty()) eps.push_back(parse_rat(piece));
        }
    }
    return eps;
}

std::string csv_header() {
    return "family,n,r,param,eps_num,eps_den,sided,degree,eps_star_num,eps_star_den";
}

std::string csv_row(const PromiseFunction& f, const Rat& eps, Sided sided, int degree,
                    const Rat& eps_star) {
    std::ostringstream os;
    os << family_str(f.family) << "," << f.n << "," << f.r << "," << family_param_str(f)
       << "," << eps.get_num() << "," << eps.get_den() << "," << sided_str(sided) << ","
       << degree << "," << eps_star.get_num() << "," << eps_star.get_den();
    return os.str();
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

/// Minimal deterministic SVG: one polyline, labeled axes, no external assets.
void write_scan_svg(const std::string& path, const std::vector<std::pair<double, int>>& pts,
                    const std::string& title) {
    const double width = 640, height = 480;
    const double ml = 60, mr = 20, mt = 30, mb = 50;
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    if (!pts.empty()) {
        xmin = xmax = pts.front().first;
        ymin = ymax = pts.front().second;
        for (const auto& [x, y] : pts) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, static_cast<double>(y));
            ymax = std::max(ymax, static_cast<double>(y));
        }
    }
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) ymax = ymin + 1;
    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (width - ml - mr); };
    auto py = [&](double y) { return height - mb - (y - ymin) / (ymax - ymin) * (height - mt - mb); };

    std::ofstream out(path);
    if (!out) throw UsageError("cannot write '" + path + "'");
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    out << "  <rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    out << "  <text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
        << title << "</text>\n";
    out << "  <line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\"" << width - mr
        << "\" y2=\"" << height - mb << "\" stroke=\"black\"/>\n";
    out << "  <line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
        << height - mb << "\" stroke=\"black\"/>\n";
    out << "  <text x=\"" << width / 2 << "\" y=\"" << height - 12
        << "\" text-anchor=\"middle\" font-size=\"12\">log3(1/eps)</text>\n";
    out << "  <text x=\"16\" y=\"" << height / 2
        << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 16 "
        << height / 2 << ")\">degree</text>\n";
    out << "  <polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) out << " ";
        out << fmt(px(pts[i].first)) << "," << fmt(py(pts[i].second));
    }
    out << "\"/>\n";
    for (const auto& [x, y] : pts) {
        out << "  <circle cx=\"" << fmt(px(x)) << "\" cy=\"" << fmt(py(y))
            << "\" r=\"3\" fill=\"steelblue\"/>\n";
    }
    out << "</svg>\n";
}

}  // namespace

PromiseFunction build_family(const std::string& family, int n, int r,
                             const std::string& param, int k) {
    const Family fam = family_from_str(family);
    switch (fam) {
        case Family::And:
            return make_and(n);
        case Family::AndRestricted:
            if (param.empty()) throw UsageError("and-restricted needs --param alpha");
            return make_and_restricted(n, parse_rat(param));
        case Family::Ed:
            return make_ed(n, r == 0 ? n : r);
        case Family::EdK:
            if (k == 0) throw UsageError("ed-k needs --k");
            return make_ed_k(n, k);
        case Family::Surj:
            if (r == 0) throw UsageError("surj needs --r");
            return make_surj(n, r);
        case Family::Ptp:
            if (param.empty()) throw UsageError("ptp needs --param alpha");
            return make_ptp(n, parse_rat(param));
        case Family::PtpStar:
            if (param.empty()) throw UsageError("ptp-star needs --param delta");
            return make_ptp_star(n, parse_rat(param));
        default:
            throw UsageError("cannot build family '" + family + "'");
    }
}

std::vector<int> parse_n_spec(const std::string& spec) {
    std::vector<int> out;
    const auto dots = spec.find("..");
    if (dots != std::string::npos) {
        const int lo = std::stoi(spec.substr(0, dots));
        const int hi = std::stoi(spec.substr(dots + 2));
        if (lo < 1 || hi < lo) throw UsageError("bad range '" + spec + "'");
        for (long v = lo; v <= hi; v *= 2) out.push_back(static_cast<int>(v));
        return out;
    }
    std::stringstream ss(spec);
    std::string piece;
    while (std::getline(ss, piece, ',')) {
        if (!piece.empty()) out.push_back(std::stoi(piece));
    }
    if (out.empty()) throw UsageError("empty n list");
    return out;
}

int cmd_degree(const DegreeArgs& a, std::ostream& out) {
    const PromiseFunction f = a.function_path.empty()
                                  ? build_family(a.family, a.n, a.r, a.param, a.k)
                                  : function_from_json(load_json_file(a.function_path));
    const Rat eps = parse_rat(a.eps);
    LPOptions opts{a.sided, a.orbit};
    const DegreeResult res = approx_degree(f, eps, opts);
    out << csv_header() << "\n";
    out << csv_row(f, eps, a.sided, res.degree, res.at_degree.eps_star) << "\n";
    if (!a.witness_path.empty()) {
        if (!res.below)
            throw UsageError("no dual witness below degree 0");
        DualWitness w = extract_dual(*res.below);
        w.claimed_eps = eps;
        write_json_file(a.witness_path, witness_to_json(w));
    }
    return 0;
}

int cmd_scan(const ScanArgs& a, std::ostream& out) {
    const auto eps_list = parse_eps_list(a.eps_list);
    if (eps_list.empty()) throw UsageError("scan needs a nonempty eps list");
    for (std::size_t i = 1; i < eps_list.size(); ++i)
        if (!(eps_list[i] < eps_list[i - 1]))
            throw UsageError("scan eps list must be strictly decreasing");

    const PromiseFunction f = a.function_path.empty()
                                  ? build_family(a.family, a.n, a.r, a.param, a.k)
                                  : function_from_json(load_json_file(a.function_path));
    LPOptions opts{a.sided, a.orbit};

    // One incremental pass over degrees serves every eps in the list.
    std::vector<Rat> eps_star_at;  // indexed by degree
    for (const auto& lp : error_ladder(f, eps_list.back(), opts))
        eps_star_at.push_back(lp.eps_star);
    auto degree_for = [&](const Rat& eps) {
        for (std::size_t d = 0; d < eps_star_at.size(); ++d)
            if (eps_star_at[d] <= eps) return static_cast<int>(d);
        return static_cast<int>(eps_star_at.size()) - 1;
    };

    std::ostringstream csv;
    csv << csv_header() << "\n";
    std::vector<std::pair<double, int>> chart;
    double max_finite_x = 0;
    for (const auto& eps : eps_list)
        if (eps > 0)
            max_finite_x = std::max(
                max_finite_x, std::log(1.0 / rat_to_double(eps)) / std::log(3.0));
    for (const auto& eps : eps_list) {
        const int d = degree_for(eps);
        csv << csv_row(f, eps, a.sided, d, eps_star_at[static_cast<std::size_t>(d)]) << "\n";
        const double x = eps > 0
                             ? std::log(1.0 / rat_to_double(eps)) / std::log(3.0)
                             : max_finite_x + 1.0;  // eps = 0 drawn one slot past the rest
        chart.emplace_back(x, d);
    }

    if (a.csv_path.empty()) {
        out << csv.str();
    } else {
        std::ofstream file(a.csv_path);
        if (!file) throw UsageError("cannot write '" + a.csv_path + "'");
        file << csv.str();
    }
    if (!a.svg_path.empty())
        write_scan_svg(a.svg_path, chart, "degree vs log3(1/eps): " + f.name);
    return 0;
}

int cmd_certify(const CertifyArgs& a, std::ostream& out) {
    if (a.base_eps.empty()) throw UsageError("certify needs --base-eps");
    const Rat base_eps = parse_rat(a.base_eps);
    CertifiedBound bound;
    if (a.pipeline == "ed") {
        bound = certify_ed(a.n, a.k, base_eps);
    } else if (a.pipeline == "ed-k") {
        if (a.r_param == 0) throw UsageError("ed-k pipeline needs --r-param");
        bound = certify_ed_r(a.n, a.r_param, a.k, base_eps);
    } else if (a.pipeline == "surj") {
        if (a.c.empty()) throw UsageError("surj pipeline needs --c");
        bound = certify_surj(a.n, parse_rat(a.c), a.k, base_eps);
    } else if (a.pipeline == "ptp") {
        if (a.alpha.empty()) throw UsageError("ptp pipeline needs --alpha");
        bound = certify_ptp(a.n, parse_rat(a.alpha), a.k, base_eps);
    } else {
        throw UsageError("unknown pipeline '" + a.pipeline + "'");
    }
    if (!a.out_path.empty()) write_json_file(a.out_path, bound_to_json(bound));
    out << "certified deg_{" << rat_str(bound.eps) << "}(" << bound.function.name
        << ") >= " << bound.degree_lb << "\n";
    return 0;
}

int cmd_verify(const std::string& bundle_path, std::ostream& out) {
    const CertifiedBound bound = bound_from_json(load_json_file(bundle_path));
    const VerifyReport rep =
        verify_witness(bound.witness, bound.function, bound.eps, bound.degree_lb);
    out << "function: " << bound.function.name << "\n";
    out << "claimed: deg_{" << rat_str(bound.eps) << "} >= " << bound.degree_lb << "\n";
    out << "correlation: " << rat_str(rep.correlation) << "\n";
    out << "l1: " << rat_str(rep.l1) << "\n";
    out << "orth: " << (rep.orth_value ? std::to_string(*rep.orth_value) : "infinity")
        << "\n";
    if (!rep.pass) {
        out << "FAIL: " << rep.failure << "\n";
        return 1;
    }
    out << "PASS\n";
    return 0;
}

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
    if (a.trials < 1) throw UsageError("simulate needs --trials >= 1");
    const auto n_list = parse_n_spec(a.n_spec);
    const auto eps_list = parse_eps_list(a.eps_list.empty()
                                             ? std::vector<std::string>{"1/3"}
                                             : a.eps_list);
    const Rat alpha = parse_rat(a.alpha);
    const auto result = sim::sweep(n_list, alpha, eps_list, a.trials, a.seed, a.grid_ratio);

    std::ostringstream csv;
    csv << "n,alpha,eps_num,eps_den,s,trials,yes_err,no_err,mean_queries,max_queries\n";
    for (const auto& row : result.rows) {
        csv << row.params.n << "," << rat_str(row.params.alpha) << ","
            << row.params.eps.get_num() << "," << row.params.eps.get_den() << ","
            << row.params.s << "," << row.trials << "," << rat_str(row.yes_error_rate)
            << "," << rat_str(row.no_error_rate) << "," << rat_str(row.mean_queries)
            << "," << row.max_queries << "\n";
    }
    if (a.csv_path.empty()) {
        out << csv.str();
    } else {
        std::ofstream file(a.csv_path);
        if (!file) throw UsageError("cannot write '" + a.csv_path + "'");
        file << csv.str();
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", result.fitted_exponent);
    out << "fitted_exponent=" << buf << "\n";
    return 0;
}

int cmd_families(const FamiliesArgs& a, std::ostream& out) {
    if (a.family.empty()) {
        out << "family          parameters                  promise\n";
        out << "and             n                           all of {0,1}^n; 1 iff all bits set\n";
        out << "and-restricted  n=k, param=alpha            weight k or <= floor(alpha k)\n";
        out << "ed              n, r (default n)            all of D_{n,r}; 1 iff injective\n";
        out << "ed-k            n, k                        all of D_{n,n}; 1 iff every column < k ones\n";
        out << "surj            n, r                        all of D_{n,r}; 1 iff every column hit\n";
        out << "ptp             n, param=alpha              permutations vs image <= floor(alpha n)\n";
        out << "ptp-star        n, param=delta              permutations vs >= delta*n rows from every permutation\n";
        return 0;
    }
    const PromiseFunction f = build_family(a.family, a.n, a.r, a.param, a.k);
    const auto j = function_to_json(f);
    if (a.out_path.empty())
        out << j.dump(2) << "\n";
    else
        write_json_file(a.out_path, j);
    return 0;
}

namespace {

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"approxdeg: exact approximate-degree bounds for promise functions"};
    app.require_subcommand(1);

    DegreeArgs deg;
    std::string deg_sided = "two";
    auto* degree = app.add_subcommand("degree", "compute deg_eps via exact LP");
    degree->add_option("--family", deg.family);
    degree->add_option("--n", deg.n);
    degree->add_option("--r", deg.r);
    degree->add_option("--param,--alpha,--delta", deg.param);
    degree->add_option("--k", deg.k);
    degree->add_option("--eps", deg.eps)->required();
    degree->add_option("--sided", deg_sided)->check(CLI::IsMember({"two", "one"}));
    degree->add_flag("--orbit", deg.orbit);
    degree->add_option("--witness", deg.witness_path);
    degree->add_option("--function", deg.function_path);

    ScanArgs scan;
    std::string scan_sided = "two";
    auto* scan_cmd = app.add_subcommand("scan", "degree across a list of eps values");
    scan_cmd->add_option("--family", scan.family);
    scan_cmd->add_option("--n", scan.n);
    scan_cmd->add_option("--r", scan.r);
    scan_cmd->add_option("--param,--alpha,--delta", scan.param);
    scan_cmd->add_option("--k", scan.k);
    scan_cmd->add_option("--eps", scan.eps_list)->required();
    scan_cmd->add_option("--sided", scan_sided)->check(CLI::IsMember({"two", "one"}));
    scan_cmd->add_flag("--orbit", scan.orbit);
    scan_cmd->add_option("--svg", scan.svg_path);
    scan_cmd->add_option("--csv", scan.csv_path);
    scan_cmd->add_option("--function", scan.function_path);

    CertifyArgs cert;
    auto* certify = app.add_subcommand("certify", "construct a dual-witness certificate");
    certify->add_option("--pipeline", cert.pipeline)
        ->required()
        ->check(CLI::IsMember({"ed", "ed-k", "surj", "ptp"}));
    certify->add_option("--n", cert.n)->required();
    certify->add_option("--k", cert.k)->required();
    certify->add_option("--r-param", cert.r_param);
    certify->add_option("--c", cert.c);
    certify->add_option("--alpha", cert.alpha);
    certify->add_option("--base-eps", cert.base_eps)->required();
    certify->add_option("--out", cert.out_path);

    std::string verify_path;
    auto* verify = app.add_subcommand("verify", "re-check a certificate bundle (no LP)");
    verify->add_option("bundle", verify_path)->required();

    SimulateArgs simargs;
    auto* simulate = app.add_subcommand("simulate", "permutation-testing query sweeps");
    simulate->add_option("--n", simargs.n_spec)->required();
    simulate->add_option("--alpha", simargs.alpha);
    simulate->add_option("--eps", simargs.eps_list);
    simulate->add_option("--trials", simargs.trials)->required();
    simulate->add_option("--seed", simargs.seed);
    simulate->add_option("--grid", simargs.grid_ratio);
    simulate->add_option("--csv", simargs.csv_path);

    FamiliesArgs fam;
    auto* families = app.add_subcommand("families", "list families / dump a function JSON");
    families->add_option("--family", fam.family);
    families->add_option("--n", fam.n);
    families->add_option("--r", fam.r);
    families->add_option("--param,--alpha,--delta", fam.param);
    families->add_option("--k", fam.k);
    families->add_option("--out", fam.out_path);

    std::vector<char*> argv;
    std::vector<std::string> storage;
    storage.push_back("approxdeg");
    for (const auto& s : args) storage.push_back(s);
    for (auto& s : storage) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    deg.sided = deg_sided == "one" ? Sided::OneSided : Sided::TwoSided;
    scan.sided = scan_sided == "one" ? Sided::OneSided : Sided::TwoSided;

    if (degree->parsed()) return cmd_degree(deg, out);
    if (scan_cmd->parsed()) return cmd_scan(scan, out);
    if (certify->parsed()) return cmd_certify(cert, out);
    if (verify->parsed()) return cmd_verify(verify_path, out);
    if (simulate->parsed()) return cmd_simulate(simargs, out);
    if (families->parsed()) return cmd_families(fam, out);
    err << "usage error: no subcommand\n";
    return 2;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        return dispatch(args, out, err);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const SizeError& e) {
        err << "size error: " << e.what() << "\n";
        return 2;
    } catch (const PromiseError& e) {
        err << "promise error: " << e.what() << "\n";
        return 2;
    } catch (const ConstructionError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

int run(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, std::cout, std::cerr);
}

}  // namespace approxdeg::cli
