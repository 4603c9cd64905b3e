#include "approxdeg/json_io.hpp"

#include <fstream>

#include "approxdeg/errors.hpp"

namespace approxdeg {

using nlohmann::json;

json descriptor_to_json(const FunctionDescriptor& d) {
    json j;
    j["family"] = family_str(d.family);
    j["n"] = d.n;
    j["r"] = d.r;
    j["param"] = rat_str(d.param);
    j["k"] = d.k;
    return j;
}

FunctionDescriptor descriptor_from_json(const json& j) {
    FunctionDescriptor d;
    d.family = family_from_str(j.at("family").get<std::string>());
    d.n = j.at("n").get<int>();
    d.r = j.at("r").get<int>();
    d.param = parse_rat(j.at("param").get<std::string>());
    d.k = j.at("k").get<int>();
    return d;
}

json function_to_json(const PromiseFunction& f) {
    json j;
    j["family"] = f.name;
    j["n"] = f.n;
    j["r"] = f.r;
    json points = json::array();
    for (const auto& x : f.domain) points.push_back(x.mapping);
    j["points"] = std::move(points);
    json labels = json::array();
    for (auto v : f.labels) labels.push_back(static_cast<int>(v));
    j["labels"] = std::move(labels);
    return j;
}

PromiseFunction function_from_json(const json& j) {
    const int n = j.at("n").get<int>();
    const int r = j.at("r").get<int>();
    std::vector<DomainPoint> points;
    for (const auto& p : j.at("points")) {
        DomainPoint x;
        x.mapping = p.get<std::vector<int>>();
        points.push_back(std::move(x));
    }
    std::vector<std::uint8_t> labels;
    for (const auto& v : j.at("labels")) labels.push_back(v.get<std::uint8_t>());
    return make_custom(n, r, std::move(points), std::move(labels),
                       j.value("family", std::string("custom")));
}

json poly_to_json(const SparsePolynomial& p) {
    json j;
    j["n"] = p.n;
    j["r"] = p.r;
    json terms = json::array();
    for (const auto& [m, c] : p.coeffs) {
        json term;
        json pairs = json::array();
        for (const auto& [row, col] : m.pairs) pairs.push_back({row, col});
        term["pairs"] = std::move(pairs);
        term["coeff"] = rat_str(c);
        terms.push_back(std::move(term));
    }
    j["terms"] = std::move(terms);
    return j;
}

SparsePolynomial poly_from_json(const json& j) {
    SparsePolynomial p;
    p.n = j.at("n").get<int>();
    p.r = j.at("r").get<int>();
    for (const auto& term : j.at("terms")) {
        Monomial m;
        for (const auto& pair : term.at("pairs"))
            m.pairs.emplace_back(pair.at(0).get<int>(), pair.at(1).get<int>());
        if (!m.distinct_rows())
            throw UsageError("polynomial JSON has a monomial with repeated rows");
        p.add_term(m, parse_rat(term.at("coeff").get<std::string>()));
    }
    return p;
}

json witness_to_json(const DualWitness& w) {
    json j;
    json points = json::array();
    json values = json::array();
    for (const auto& [x, v] : w.values) {
        points.push_back(x.mapping);
        values.push_back(rat_str(v));
    }
    j["points"] = std::move(points);
    j["values"] = std::move(values);
    j["orth"] = w.claimed_orth;
    j["eps"] = rat_str(w.claimed_eps);
    return j;
}

DualWitness witness_from_json(const json& j) {
    DualWitness w;
    const auto& points = j.at("points");
    const auto& values = j.at("values");
    if (points.size() != values.size())
        throw UsageError("witness JSON: points and values differ in length");
    for (std::size_t i = 0; i < points.size(); ++i) {
        DomainPoint x;
        x.mapping = points[i].get<std::vector<int>>();
        w.values[std::move(x)] = parse_rat(values[i].get<std::string>());
    }
    w.claimed_orth = j.at("orth").get<int>();
    w.claimed_eps = parse_rat(j.at("eps").get<std::string>());
    return w;
}

json bound_to_json(const CertifiedBound& b) {
    json j;
    j["function"] = descriptor_to_json(descriptor_of(b.function));
    j["degree_lb"] = b.degree_lb;
    j["eps"] = rat_str(b.eps);
    j["witness"] = witness_to_json(b.witness);
    json trace = json::array();
    for (const auto& step : b.trace) {
        json s;
        s["op"] = step.op;
        for (const auto& [key, value] : step.params) s[key] = value;
        trace.push_back(std::move(s));
    }
    j["trace"] = std::move(trace);
    return j;
}

CertifiedBound bound_from_json(const json& j) {
    CertifiedBound b;
    b.function = make_function(descriptor_from_json(j.at("function")));
    b.degree_lb = j.at("degree_lb").get<int>();
    b.eps = parse_rat(j.at("eps").get<std::string>());
    b.witness = witness_from_json(j.at("witness"));
    b.witness.claimed_orth = b.degree_lb;
    b.witness.claimed_eps = b.eps;
    for (const auto& s : j.at("trace")) {
        TraceStep step;
        step.op = s.at("op").get<std::string>();
        for (auto it = s.begin(); it != s.end(); ++it) {
            if (it.key() == "op") continue;
            step.params[it.key()] = it.value().get<std::string>();
        }
        b.trace.push_back(std::move(step));
    }
    return b;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw UsageError("malformed JSON in '" + path + "': " + e.what());
    }
    return j;
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write '" + path + "'");
    out << j.dump(2) << "\n";
}

}  // namespace approxdeg
