#pragma once

#include <string>
#include <vector>

#include "approxdeg/domain.hpp"

namespace approxdeg {

enum class EmbedKind { BlockDiagonal, DuplicateRow, IdentityPad, AddIdentityBlock };

std::string embed_kind_str(EmbedKind kind);

/// How one target row is produced: either pinned to a constant column, or a
/// copy of one source row's column shifted by a fixed offset. This coordinate
/// structure is what makes restriction of polynomials degree-non-increasing.
struct RowWire {
    int source_row = 0;  // 1-based; 0 means the row is fixed
    int fixed_col = 0;   // used when source_row == 0
    int col_offset = 0;  // added to the copied column
};

/// An injective, label-preserving map from one promise function's domain into
/// another's. Constructors validate exhaustively over the source domain.
struct Embedding {
    PromiseFunction source;
    PromiseFunction target;
    std::vector<RowWire> wires;  // one per target row
    EmbedKind kind = EmbedKind::IdentityPad;

    DomainPoint apply(const DomainPoint& x) const;
};

/// k disjoint diagonal copies of `inner` plus pad_identity rows pinned to
/// fresh diagonal columns. The source is AND_k o inner (AND_{k,alpha} o inner
/// for PTP, with alpha taken from the inner function); the target is the big
/// function of the same family. Throws ConstructionError when some injected
/// point would violate the target promise.
Embedding embed_block_diagonal(const PromiseFunction& inner, int k, int pad_identity);

/// SURJ_{n,r} -> SURJ_{n+1,r} by duplicating the last row.
Embedding embed_surj_duplicate_row(const PromiseFunction& f);

/// SURJ_{n,r} -> SURJ_{n+1,r+1} by adjoining a 1x1 identity block.
Embedding embed_surj_identity_block(const PromiseFunction& f);

/// PTP_{m,alpha} -> PTP_{n, (m/n)*alpha + (n-m)/n} via Phi(i) = i on the
/// padded rows.
Embedding embed_ptp_pad(int m, int n, const Rat& alpha);

/// Identity wiring between two functions on the same D_{n,r} whose domains
/// are nested with matching labels (e.g. relaxing PTP's alpha upward).
Embedding embed_inclusion(const PromiseFunction& source, const PromiseFunction& target);

/// Exhaustive check of the embedding invariants: every injected point lands
/// in the target domain with the same label, and the injection has no
/// collisions. All constructors call this; it throws on violation.
void validate_embedding(const Embedding& e);

}  // namespace approxdeg
