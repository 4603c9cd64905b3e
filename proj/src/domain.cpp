#include "approxdeg/domain.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "approxdeg/errors.hpp"

namespace approxdeg {

std::string point_str(const DomainPoint& x) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < x.mapping.size(); ++i) {
        if (i) os << ",";
        os << x.mapping[i];
    }
    os << ")";
    return os.str();
}

int image_size(const DomainPoint& x) {
    std::vector<int> seen = x.mapping;
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    return static_cast<int>(seen.size());
}

std::vector<int> column_counts(const DomainPoint& x, int r) {
    std::vector<int> counts(static_cast<std::size_t>(r) + 1, 0);
    for (int v : x.mapping) counts[static_cast<std::size_t>(v)]++;
    return counts;
}

std::string family_str(Family family) {
    switch (family) {
        case Family::And: return "and";
        case Family::AndRestricted: return "and-restricted";
        case Family::Ed: return "ed";
        case Family::EdK: return "ed-k";
        case Family::Surj: return "surj";
        case Family::Ptp: return "ptp";
        case Family::PtpStar: return "ptp-star";
        case Family::Composed: return "composed";
        case Family::Custom: return "custom";
    }
    return "custom";
}

std::optional<std::size_t> PromiseFunction::index_of(const DomainPoint& x) const {
    auto it = std::lower_bound(domain.begin(), domain.end(), x);
    if (it == domain.end() || !(*it == x)) return std::nullopt;
    return static_cast<std::size_t>(it - domain.begin());
}

Symmetry PromiseFunction::symmetry() const {
    switch (family) {
        case Family::And:
        case Family::AndRestricted:
            return Symmetry::RowsOnly;
        case Family::Ed:
        case Family::EdK:
        case Family::Surj:
        case Family::Ptp:
        case Family::PtpStar:
            return Symmetry::RowsAndCols;
        default:
            return Symmetry::None;
    }
}

bool PromiseFunction::same_function(const PromiseFunction& other) const {
    return n == other.n && r == other.r && domain == other.domain &&
           labels == other.labels;
}

int evaluate(const PromiseFunction& f, const DomainPoint& x) {
    const auto idx = f.index_of(x);
    if (!idx)
        throw PromiseError("point " + point_str(x) + " is outside the promise of " +
                           f.name);
    return f.labels[*idx];
}

namespace {

void check_enumeration_size(int n, int r) {
    std::size_t total = 1;
    for (int i = 0; i < n; ++i) {
        if (total > domain_size_limit() / static_cast<std::size_t>(std::max(r, 1)) + 1) {
            total = domain_size_limit() + 1;
            break;
        }
        total *= static_cast<std::size_t>(r);
    }
    if (total > domain_size_limit())
        throw SizeError("domain D_{" + std::to_string(n) + "," + std::to_string(r) +
                        "} exceeds the size limit of " +
                        std::to_string(domain_size_limit()) +
                        " points (set APPROXDEG_SIZE_LIMIT to override)");
}

/// All of D_{n,r} in lexicographic order, filtered by `keep`.
template <typename Keep>
std::vector<DomainPoint> enumerate_mappings(int n, int r, Keep keep) {
    check_enumeration_size(n, r);
    std::vector<DomainPoint> out;
    DomainPoint x;
    x.mapping.assign(static_cast<std::size_t>(n), 1);
    while (true) {
        if (keep(x)) out.push_back(x);
        int i = n - 1;
        while (i >= 0 && x.mapping[static_cast<std::size_t>(i)] == r) {
            x.mapping[static_cast<std::size_t>(i)] = 1;
            --i;
        }
        if (i < 0) break;
        x.mapping[static_cast<std::size_t>(i)]++;
    }
    return out;
}

PromiseFunction finish(PromiseFunction f, std::vector<DomainPoint> pts,
                       const std::function<int(const DomainPoint&)>& label) {
    f.domain = std::move(pts);
    f.labels.reserve(f.domain.size());
    for (const auto& x : f.domain)
        f.labels.push_back(static_cast<std::uint8_t>(label(x)));
    return f;
}

int and_weight(const DomainPoint& x) {
    // AND encoding on D_{n,2}: column 2 is bit value 1.
    int w = 0;
    for (int v : x.mapping) w += (v == 2);
    return w;
}

}  // namespace

PromiseFunction make_and(int n) {
    if (n < 1) throw UsageError("make_and: n must be >= 1");
    PromiseFunction f;
    f.family = Family::And;
    f.name = "and(n=" + std::to_string(n) + ")";
    f.n = n;
    f.r = 2;
    return finish(std::move(f), enumerate_mappings(n, 2, [](const DomainPoint&) { return true; }),
                  [n](const DomainPoint& x) { return and_weight(x) == n ? 1 : 0; });
}

PromiseFunction make_and_restricted(int k, const Rat& alpha) {
    if (k < 1) throw UsageError("make_and_restricted: k must be >= 1");
    if (alpha < 0 || alpha >= 1)
        throw UsageError("make_and_restricted: alpha must lie in [0,1)");
    const long cutoff = rat_floor_long(alpha * k);
    PromiseFunction f;
    f.family = Family::AndRestricted;
    f.name = "and-restricted(k=" + std::to_string(k) + ",alpha=" + rat_str(alpha) + ")";
    f.n = k;
    f.r = 2;
    f.param = alpha;
    return finish(std::move(f),
                  enumerate_mappings(k, 2,
                                     [&](const DomainPoint& x) {
                                         const int w = and_weight(x);
                                         return w == k || w <= cutoff;
                                     }),
                  [k](const DomainPoint& x) { return and_weight(x) == k ? 1 : 0; });
}

PromiseFunction make_ed(int n, int r) {
    if (n < 1 || r < 1) throw UsageError("make_ed: n and r must be >= 1");
    PromiseFunction f;
    f.family = Family::Ed;
    f.name = "ed(n=" + std::to_string(n) + ",r=" + std::to_string(r) + ")";
    f.n = n;
    f.r = r;
    return finish(std::move(f), enumerate_mappings(n, r, [](const DomainPoint&) { return true; }),
                  [n](const DomainPoint& x) { return image_size(x) == n ? 1 : 0; });
}

PromiseFunction make_ed_k(int n, int k) {
    if (n < 1) throw UsageError("make_ed_k: n must be >= 1");
    if (k < 2) throw UsageError("make_ed_k: k must be >= 2");
    PromiseFunction f;
    f.family = Family::EdK;
    f.name = "ed-k(n=" + std::to_string(n) + ",k=" + std::to_string(k) + ")";
    f.n = n;
    f.r = n;
    f.k_param = k;
    return finish(std::move(f), enumerate_mappings(n, n, [](const DomainPoint&) { return true; }),
                  [n, k](const DomainPoint& x) {
                      const auto counts = column_counts(x, n);
                      for (int c = 1; c <= n; ++c)
                          if (counts[static_cast<std::size_t>(c)] >= k) return 0;
                      return 1;
                  });
}

PromiseFunction make_surj(int n, int r) {
    if (n < 1 || r < 1) throw UsageError("make_surj: n and r must be >= 1");
    PromiseFunction f;
    f.family = Family::Surj;
    f.name = "surj(n=" + std::to_string(n) + ",r=" + std::to_string(r) + ")";
    f.n = n;
    f.r = r;
    return finish(std::move(f), enumerate_mappings(n, r, [](const DomainPoint&) { return true; }),
                  [r](const DomainPoint& x) { return image_size(x) == r ? 1 : 0; });
}

PromiseFunction make_ptp(int n, const Rat& alpha) {
    if (n < 1) throw UsageError("make_ptp: n must be >= 1");
    if (alpha <= 0 || alpha >= 1) throw UsageError("make_ptp: alpha must lie in (0,1)");
    const long cutoff = rat_floor_long(alpha * n);
    PromiseFunction f;
    f.family = Family::Ptp;
    f.name = "ptp(n=" + std::to_string(n) + ",alpha=" + rat_str(alpha) + ")";
    f.n = n;
    f.r = n;
    f.param = alpha;
    return finish(std::move(f),
                  enumerate_mappings(n, n,
                                     [&](const DomainPoint& x) {
                                         const int im = image_size(x);
                                         return im == n || im <= cutoff;
                                     }),
                  [n](const DomainPoint& x) { return image_size(x) == n ? 1 : 0; });
}

int min_permutation_disagreement(const DomainPoint& x) {
    const int n = x.rows();
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 1);
    int best = n;
    do {
        int dis = 0;
        for (int i = 0; i < n; ++i)
            dis += (x.mapping[static_cast<std::size_t>(i)] != perm[static_cast<std::size_t>(i)]);
        best = std::min(best, dis);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

PromiseFunction make_ptp_star(int n, const Rat& delta) {
    if (n < 1) throw UsageError("make_ptp_star: n must be >= 1");
    if (delta <= 0 || delta >= 1)
        throw UsageError("make_ptp_star: delta must lie in (0,1)");
    if (n > 6)
        throw SizeError("make_ptp_star: the brute-force distance check is limited to n <= 6");
    PromiseFunction f;
    f.family = Family::PtpStar;
    f.name = "ptp-star(n=" + std::to_string(n) + ",delta=" + rat_str(delta) + ")";
    f.n = n;
    f.r = n;
    f.param = delta;
    const Rat threshold = delta * n;
    return finish(std::move(f),
                  enumerate_mappings(n, n,
                                     [&](const DomainPoint& x) {
                                         const int dis = min_permutation_disagreement(x);
                                         return dis == 0 || Rat(dis) >= threshold;
                                     }),
                  [n](const DomainPoint& x) { return image_size(x) == n ? 1 : 0; });
}

PromiseFunction make_custom(int n, int r, std::vector<DomainPoint> points,
                            std::vector<std::uint8_t> labels, std::string name) {
    if (points.size() != labels.size())
        throw UsageError("make_custom: points and labels must have equal length");
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return points[a] < points[b]; });
    PromiseFunction f;
    f.family = Family::Custom;
    f.name = std::move(name);
    f.n = n;
    f.r = r;
    f.domain.reserve(points.size());
    f.labels.reserve(points.size());
    for (std::size_t idx : order) {
        const auto& x = points[idx];
        if (x.rows() != n)
            throw UsageError("make_custom: point " + point_str(x) + " has wrong length");
        for (int v : x.mapping)
            if (v < 1 || v > r)
                throw UsageError("make_custom: point " + point_str(x) +
                                 " has an entry outside [1," + std::to_string(r) + "]");
        if (!f.domain.empty() && f.domain.back() == x)
            throw UsageError("make_custom: duplicate point " + point_str(x));
        if (labels[idx] > 1) throw UsageError("make_custom: labels must be 0 or 1");
        f.domain.push_back(x);
        f.labels.push_back(labels[idx]);
    }
    return f;
}

DomainPoint concat_points(const std::vector<const DomainPoint*>& blocks) {
    DomainPoint out;
    std::size_t total = 0;
    for (const auto* b : blocks) total += b->mapping.size();
    out.mapping.reserve(total);
    for (const auto* b : blocks)
        out.mapping.insert(out.mapping.end(), b->mapping.begin(), b->mapping.end());
    return out;
}

namespace {

PromiseFunction compose_common(const PromiseFunction& f, int k, bool restricted,
                               const Rat& alpha) {
    if (k < 1) throw UsageError("compose: k must be >= 1");
    std::size_t total = 1;
    for (int i = 0; i < k; ++i) {
        if (f.size() != 0 && total > domain_size_limit() / f.size() + 1) {
            total = domain_size_limit() + 1;
            break;
        }
        total *= f.size();
    }
    if (total > domain_size_limit())
        throw SizeError("composed domain exceeds the size limit");

    const long cutoff = restricted ? rat_floor_long(alpha * k) : k - 1;
    PromiseFunction out;
    out.family = Family::Composed;
    out.name = (restricted ? "and-restricted(k=" + std::to_string(k) + ",alpha=" +
                                 rat_str(alpha) + ")"
                           : "and(k=" + std::to_string(k) + ")") +
               " o " + f.name;
    out.n = k * f.n;
    out.r = f.r;
    out.param = restricted ? alpha : Rat(0);
    out.k_param = k;

    std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
    std::vector<const DomainPoint*> blocks(static_cast<std::size_t>(k));
    while (true) {
        int weight = 0;
        for (int b = 0; b < k; ++b) {
            blocks[static_cast<std::size_t>(b)] = &f.domain[idx[static_cast<std::size_t>(b)]];
            weight += f.labels[idx[static_cast<std::size_t>(b)]];
        }
        if (weight == k || weight <= cutoff) {
            out.domain.push_back(concat_points(blocks));
            out.labels.push_back(weight == k ? 1 : 0);
        }
        int b = k - 1;
        while (b >= 0 && idx[static_cast<std::size_t>(b)] + 1 == f.size()) {
            idx[static_cast<std::size_t>(b)] = 0;
            --b;
        }
        if (b < 0) break;
        idx[static_cast<std::size_t>(b)]++;
    }
    // Tuples were generated in lexicographic block order over a sorted inner
    // domain, so the concatenations are already sorted.
    return out;
}

}  // namespace

PromiseFunction compose_and(const PromiseFunction& f, int k) {
    return compose_common(f, k, false, Rat(0));
}

PromiseFunction compose_and_restricted(const PromiseFunction& f, int k, const Rat& alpha) {
    if (alpha < 0 || alpha >= 1)
        throw UsageError("compose_and_restricted: alpha must lie in [0,1)");
    return compose_common(f, k, true, alpha);
}

Family family_from_str(const std::string& s) {
    if (s == "and") return Family::And;
    if (s == "and-restricted") return Family::AndRestricted;
    if (s == "ed") return Family::Ed;
    if (s == "ed-k") return Family::EdK;
    if (s == "surj") return Family::Surj;
    if (s == "ptp") return Family::Ptp;
    if (s == "ptp-star") return Family::PtpStar;
    if (s == "custom") return Family::Custom;
    throw UsageError("unknown family '" + s + "'");
}

FunctionDescriptor descriptor_of(const PromiseFunction& f) {
    if (f.family == Family::Composed || f.family == Family::Custom)
        throw UsageError("no parametric descriptor for " + f.name);
    FunctionDescriptor d;
    d.family = f.family;
    d.n = f.n;
    d.r = f.r;
    d.param = f.param;
    d.k = f.k_param;
    return d;
}

PromiseFunction make_function(const FunctionDescriptor& d) {
    switch (d.family) {
        case Family::And: return make_and(d.n);
        case Family::AndRestricted: return make_and_restricted(d.n, d.param);
        case Family::Ed: return make_ed(d.n, d.r == 0 ? d.n : d.r);
        case Family::EdK: return make_ed_k(d.n, d.k);
        case Family::Surj: return make_surj(d.n, d.r);
        case Family::Ptp: return make_ptp(d.n, d.param);
        case Family::PtpStar: return make_ptp_star(d.n, d.param);
        default:
            throw UsageError("descriptor cannot rebuild family " + family_str(d.family));
    }
}

}  // namespace approxdeg
