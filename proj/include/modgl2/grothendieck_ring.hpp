#pragma once

#include "modgl2/field.hpp"
#include "modgl2/ring_element.hpp"

#include <memory>
#include <shared_mutex>
#include <span>
#include <vector>

namespace modgl2 {

// One constituent of [L_a]*[L_b]: coeff * [L_n(twist)].
struct StructureTerm {
    int n;
    int twist;
    long coeff;

    auto operator<=>(const StructureTerm&) const = default;
};

using StructureConstants = std::vector<StructureTerm>;

// Carry-automaton expansion of [L_a]*[L_b], uncached. Each Frobenius slot is
// expanded by Clebsch-Gordan, then slot degrees in [p, 2p-2] are split as
//   [S_c] -> [S_{c-p}] (x) [S_1] carried into the next slot
//          + [S_{2p-2-c}] twisted by det^{c-p+1} in this slot
// and carries are absorbed with [S_d][S_1] = [S_{d+1}] + [S_{d-1}](1).
StructureConstants compute_structure_constants(const FieldParams& params, int a, int b);

// Grothendieck ring of GL2(F_q) in characteristic p, for fixed (p, f).
//
// All methods are const and safe to call concurrently. The only mutable
// state is the memo table of structure constants, which is read-mostly and
// filled idempotently.
class GrothendieckRing {
public:
    explicit GrothendieckRing(FieldParams params);

    const FieldParams& params() const { return params_; }

    RingElement zero() const { return RingElement(params_, Basis::L); }
    RingElement unit() const { return RingElement::basis_element(params_, Basis::L, 0, 0); }
    RingElement irreducible(int n, std::int64_t m, const Rational& coeff = 1) const
    {
        return RingElement::basis_element(params_, Basis::L, n, m, coeff);
    }

    // [L_a]*[L_b] with a, b in [0, q-1]; memoized, keyed by the unordered pair.
    const StructureConstants& structure_constants(int a, int b) const;
    std::size_t cached_structure_constants() const;

    // Product in the L basis. S-basis inputs are converted first.
    RingElement multiply(const RingElement& v, const RingElement& w) const;
    RingElement product(std::span<const RingElement> factors) const;

    // [S_n(m)] in the L basis, 0 <= n <= q-1.
    RingElement symm_to_L(int n, std::int64_t m) const;
    // [L_n(m)] in the S basis, 0 <= n <= q-1.
    RingElement irreducible_to_S(int n, std::int64_t m) const;

    RingElement convert_basis(const RingElement& v, Basis target) const;
    RingElement to_L(const RingElement& v) const { return convert_basis(v, Basis::L); }

    // Class of S_k(m)^{[j]} in the L basis (periodic decomposition).
    RingElement reduce_symm(const SymmFactor& factor) const;
    RingElement reduce_symm_fast(const SymmFactor& factor) const;
    // Same class by running the Glover recursion up to k.
    RingElement reduce_symm_slow(const SymmFactor& factor) const;
    // [S_0], ..., [S_kmax] by the recursion, untwisted.
    std::vector<RingElement> symm_sequence_slow(std::int64_t kmax) const;

    // Product of reduce_symm over all factors (the unit for an empty list).
    RingElement reduce_product(std::span<const SymmFactor> factors) const;

    // [V(lambda_r)(m)]: cached principal-series classes.
    RingElement principal_series(std::int64_t r, std::int64_t m) const;

    // Snapshot of the memo table, for on-disk caching.
    std::vector<std::pair<std::pair<int, int>, StructureConstants>> export_structure_constants() const;
    // Installs externally supplied entries after checking dimension and
    // central-character conservation. Returns false (and installs nothing)
    // when any entry fails the check.
    bool import_structure_constants(const std::vector<std::pair<std::pair<int, int>, StructureConstants>>& entries);

private:
    void check_params(const RingElement& v) const;
    int pair_index(int a, int b) const;

    FieldParams params_;
    std::vector<RingElement> symm_columns_;       // [S_n] in basis L, n in [0, q-1]
    std::vector<RingElement> inverse_columns_;    // [L_n] in basis S
    std::vector<RingElement> principal_columns_;  // [V(lambda_r)], r in [0, q-2]

    mutable std::shared_mutex cache_mutex_;
    mutable std::vector<std::shared_ptr<const StructureConstants>> cache_;
};

} // namespace modgl2
