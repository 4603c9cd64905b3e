#include "approxdeg/embedding.hpp"

#include <algorithm>

#include "approxdeg/errors.hpp"

namespace approxdeg {

std::string embed_kind_str(EmbedKind kind) {
    switch (kind) {
        case EmbedKind::BlockDiagonal: return "block-diagonal";
        case EmbedKind::DuplicateRow: return "duplicate-row";
        case EmbedKind::IdentityPad: return "identity-pad";
        case EmbedKind::AddIdentityBlock: return "add-identity-block";
    }
    return "identity-pad";
}

DomainPoint Embedding::apply(const DomainPoint& x) const {
    DomainPoint y;
    y.mapping.reserve(wires.size());
    for (const auto& w : wires) {
        if (w.source_row == 0) {
            y.mapping.push_back(w.fixed_col);
        } else {
            y.mapping.push_back(x.mapping[static_cast<std::size_t>(w.source_row - 1)] +
                                w.col_offset);
        }
    }
    return y;
}

void validate_embedding(const Embedding& e) {
    if (static_cast<int>(e.wires.size()) != e.target.n)
        throw ConstructionError("embedding wiring has wrong row count");
    std::vector<bool> covered(static_cast<std::size_t>(e.source.n) + 1, false);
    for (const auto& w : e.wires) {
        if (w.source_row < 0 || w.source_row > e.source.n)
            throw ConstructionError("embedding wire references a bad source row");
        if (w.source_row == 0 && (w.fixed_col < 1 || w.fixed_col > e.target.r))
            throw ConstructionError("embedding wire fixes an out-of-range column");
        if (w.source_row > 0) covered[static_cast<std::size_t>(w.source_row)] = true;
    }
    for (int i = 1; i <= e.source.n; ++i)
        if (!covered[static_cast<std::size_t>(i)])
            throw ConstructionError("embedding drops source row " + std::to_string(i));

    std::vector<DomainPoint> images;
    images.reserve(e.source.size());
    for (std::size_t i = 0; i < e.source.size(); ++i) {
        const DomainPoint y = e.apply(e.source.domain[i]);
        for (int v : y.mapping)
            if (v < 1 || v > e.target.r)
                throw ConstructionError("injected point " + point_str(y) +
                                        " leaves the column range of " + e.target.name);
        const auto idx = e.target.index_of(y);
        if (!idx)
            throw ConstructionError("injected point " + point_str(y) +
                                    " violates the promise of " + e.target.name);
        if (e.target.labels[*idx] != e.source.labels[i])
            throw ConstructionError("label mismatch at " + point_str(e.source.domain[i]) +
                                    " -> " + point_str(y));
        images.push_back(y);
    }
    std::sort(images.begin(), images.end());
    if (std::adjacent_find(images.begin(), images.end()) != images.end())
        throw ConstructionError("embedding is not injective");
}

namespace {

std::vector<RowWire> identity_wires(int n) {
    std::vector<RowWire> wires(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        wires[static_cast<std::size_t>(i - 1)].source_row = i;
    }
    return wires;
}

}  // namespace

Embedding embed_block_diagonal(const PromiseFunction& inner, int k, int pad_identity) {
    if (k < 1) throw UsageError("embed_block_diagonal: k must be >= 1");
    if (pad_identity < 0) throw UsageError("embed_block_diagonal: pad must be >= 0");
    const int m = inner.n;
    const int s = inner.r;

    Embedding e;
    e.kind = EmbedKind::BlockDiagonal;
    switch (inner.family) {
        case Family::And:
            e.source = compose_and(inner, k);
            e.target = make_and(k * m + pad_identity);
            break;
        case Family::Ed:
            e.source = compose_and(inner, k);
            e.target = make_ed(k * m + pad_identity, k * s + pad_identity);
            break;
        case Family::EdK:
            e.source = compose_and(inner, k);
            e.target = make_ed_k(k * m + pad_identity, inner.k_param);
            break;
        case Family::Surj:
            e.source = compose_and(inner, k);
            e.target = make_surj(k * m + pad_identity, k * s + pad_identity);
            break;
        case Family::Ptp: {
            if (pad_identity != 0)
                throw ConstructionError(
                    "embed_block_diagonal: PTP blocks take no identity pad; "
                    "pad via embed_ptp_pad instead");
            const Rat beta = 2 * inner.param;
            if (beta >= 1)
                throw ConstructionError(
                    "embed_block_diagonal: PTP target parameter 2*alpha must stay below 1");
            e.source = compose_and_restricted(inner, k, inner.param);
            e.target = make_ptp(k * m, beta);
            break;
        }
        default:
            throw ConstructionError("embed_block_diagonal: unsupported inner family " +
                                    family_str(inner.family));
    }

    e.wires.resize(static_cast<std::size_t>(e.target.n));
    for (int b = 0; b < k; ++b) {
        for (int i = 1; i <= m; ++i) {
            RowWire& w = e.wires[static_cast<std::size_t>(b * m + i - 1)];
            w.source_row = b * m + i;
            // AND blocks share the two-column encoding; other families get a
            // fresh column range per block.
            w.col_offset = (inner.family == Family::And) ? 0 : b * s;
        }
    }
    for (int j = 1; j <= pad_identity; ++j) {
        RowWire& w = e.wires[static_cast<std::size_t>(k * m + j - 1)];
        w.source_row = 0;
        w.fixed_col = (inner.family == Family::And) ? 2 : k * s + j;
    }
    validate_embedding(e);
    return e;
}

Embedding embed_surj_duplicate_row(const PromiseFunction& f) {
    if (f.family != Family::Surj && f.family != Family::Custom)
        throw UsageError("embed_surj_duplicate_row expects a SURJ instance");
    Embedding e;
    e.kind = EmbedKind::DuplicateRow;
    e.source = f;
    e.target = make_surj(f.n + 1, f.r);
    e.wires = identity_wires(f.n);
    RowWire dup;
    dup.source_row = f.n;  // duplicate the last row
    e.wires.push_back(dup);
    validate_embedding(e);
    return e;
}

Embedding embed_surj_identity_block(const PromiseFunction& f) {
    if (f.family != Family::Surj && f.family != Family::Custom)
        throw UsageError("embed_surj_identity_block expects a SURJ instance");
    Embedding e;
    e.kind = EmbedKind::AddIdentityBlock;
    e.source = f;
    e.target = make_surj(f.n + 1, f.r + 1);
    e.wires = identity_wires(f.n);
    RowWire fresh;
    fresh.source_row = 0;
    fresh.fixed_col = f.r + 1;
    e.wires.push_back(fresh);
    validate_embedding(e);
    return e;
}

Embedding embed_ptp_pad(int m, int n, const Rat& alpha) {
    if (m > n) throw UsageError("embed_ptp_pad: m must be <= n");
    Embedding e;
    e.kind = EmbedKind::IdentityPad;
    e.source = make_ptp(m, alpha);
    const Rat target_alpha = (Rat(m) * alpha + Rat(n - m)) / Rat(n);
    e.target = make_ptp(n, target_alpha);
    e.wires = identity_wires(m);
    for (int i = m + 1; i <= n; ++i) {
        RowWire w;
        w.source_row = 0;
        w.fixed_col = i;
        e.wires.push_back(w);
    }
    validate_embedding(e);
    return e;
}

Embedding embed_inclusion(const PromiseFunction& source, const PromiseFunction& target) {
    if (source.n != target.n || source.r != target.r)
        throw UsageError("embed_inclusion: dimensions must match");
    Embedding e;
    e.kind = EmbedKind::IdentityPad;
    e.source = source;
    e.target = target;
    e.wires = identity_wires(source.n);
    validate_embedding(e);
    return e;
}

}  // namespace approxdeg
