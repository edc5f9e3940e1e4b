#include "modgl2/grothendieck_ring.hpp"

#include "modgl2/error.hpp"
#include "modgl2/principal_series.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace modgl2 {

namespace {

struct CarryState {
    std::vector<int> degree;
    std::vector<int> pending;
    std::int64_t twist;
    long coeff;
};

} // namespace

StructureConstants compute_structure_constants(const FieldParams& params, int a, int b)
{
    const int p = params.p();
    const int f = params.f();
    if (a < 0 || a > params.q() - 1 || b < 0 || b > params.q() - 1)
        throw ValidationError("structure constants requested for labels outside [0, q-1]");

    std::vector<std::int64_t> power(f, 1);
    for (int i = 1; i < f; ++i)
        power[i] = power[i - 1] * p;

    auto da = params.digits(a);
    auto db = params.digits(b);

    // Clebsch-Gordan in every slot: S_x (x) S_y = sum_t S_{x+y-2t}(t).
    std::vector<CarryState> work{{std::vector<int>(f, 0), std::vector<int>(f, 0), 0, 1}};
    for (int i = 0; i < f; ++i) {
        std::vector<CarryState> next;
        for (const auto& s : work) {
            for (int t = 0; t <= std::min(da[i], db[i]); ++t) {
                CarryState n = s;
                n.degree[i] = da[i] + db[i] - 2 * t;
                n.twist += t * power[i];
                next.push_back(std::move(n));
            }
        }
        work = std::move(next);
    }

    std::map<std::pair<int, int>, long> result;
    while (!work.empty()) {
        CarryState s = std::move(work.back());
        work.pop_back();

        int over = -1;
        for (int i = 0; i < f; ++i) {
            if (s.degree[i] > 2 * p - 2)
                throw std::logic_error("carry automaton produced a slot degree above 2p-2");
            if (s.degree[i] >= p && (over < 0 || s.degree[i] > s.degree[over]))
                over = i;
        }
        if (over >= 0) {
            int c = s.degree[over];
            CarryState carried = s;
            carried.degree[over] = c - p;
            carried.pending[(over + 1) % f] += 1;
            CarryState folded = std::move(s);
            folded.degree[over] = 2 * p - 2 - c;
            folded.twist += (c - p + 1) * power[over];
            work.push_back(std::move(carried));
            work.push_back(std::move(folded));
            continue;
        }

        int slot = -1;
        for (int i = 0; i < f && slot < 0; ++i)
            if (s.pending[i] > 0)
                slot = i;
        if (slot >= 0) {
            s.pending[slot] -= 1;
            int d = s.degree[slot];
            if (d == 0) {
                s.degree[slot] = 1;
                work.push_back(std::move(s));
            } else {
                CarryState lower = s;
                lower.degree[slot] = d - 1;
                lower.twist += power[slot];
                s.degree[slot] = d + 1;
                work.push_back(std::move(s));
                work.push_back(std::move(lower));
            }
            continue;
        }

        result[{params.from_digits(s.degree), params.reduce(s.twist)}] += s.coeff;
    }

    StructureConstants out;
    out.reserve(result.size());
    for (const auto& [key, c] : result)
        if (c != 0)
            out.push_back({key.first, key.second, c});
    return out;
}

GrothendieckRing::GrothendieckRing(FieldParams params)
    : params_(std::move(params))
{
    const int q = params_.q();
    cache_.resize(static_cast<std::size_t>(q) * q);

    symm_columns_.reserve(q);
    symm_columns_.push_back(unit());
    symm_columns_.push_back(irreducible(1, 0));
    RingElement l1 = irreducible(1, 0);
    for (int n = 2; n <= q - 1; ++n)
        symm_columns_.push_back(multiply(symm_columns_[n - 1], l1) - det_twist(symm_columns_[n - 2], 1));

    // Invert the unit-triangular S -> L matrix column by column.
    inverse_columns_.reserve(q);
    for (int n = 0; n <= q - 1; ++n) {
        RingElement rest = irreducible(n, 0);
        RingElement in_s(params_, Basis::S);
        while (!rest.is_zero()) {
            const Term& top = rest.terms().back();
            int k = top.label.n;
            int m = top.label.m;
            Rational c = top.coeff;
            in_s += RingElement::basis_element(params_, Basis::S, k, m, c);
            rest -= det_twist(symm_columns_[k], m) * c;
        }
        inverse_columns_.push_back(std::move(in_s));
    }

    principal_columns_.reserve(params_.modulus());
    for (int r = 0; r < params_.modulus(); ++r)
        principal_columns_.push_back(diamond_decompose(params_, r, 0));
}

int GrothendieckRing::pair_index(int a, int b) const
{
    if (a > b)
        std::swap(a, b);
    return a * params_.q() + b;
}

const StructureConstants& GrothendieckRing::structure_constants(int a, int b) const
{
    int idx = pair_index(a, b);
    {
        std::shared_lock lock(cache_mutex_);
        if (cache_[idx])
            return *cache_[idx];
    }
    auto computed = std::make_shared<const StructureConstants>(compute_structure_constants(params_, a, b));
    std::unique_lock lock(cache_mutex_);
    if (!cache_[idx])
        cache_[idx] = std::move(computed);
    return *cache_[idx];
}

std::size_t GrothendieckRing::cached_structure_constants() const
{
    std::shared_lock lock(cache_mutex_);
    return static_cast<std::size_t>(std::count_if(cache_.begin(), cache_.end(), [](const auto& e) { return e != nullptr; }));
}

void GrothendieckRing::check_params(const RingElement& v) const
{
    if (!params_.same_ring(v.params()))
        throw ValidationError("element over " + v.params().describe() + " used with ring over " + params_.describe());
}

RingElement GrothendieckRing::multiply(const RingElement& v, const RingElement& w) const
{
    check_params(v);
    check_params(w);
    if (v.basis() != Basis::L)
        return multiply(to_L(v), w);
    if (w.basis() != Basis::L)
        return multiply(v, to_L(w));

    DenseAccumulator acc(params_);
    const int mod = params_.modulus();
    Rational c;
    Rational term;
    for (const auto& tv : v.terms()) {
        for (const auto& tw : w.terms()) {
            c = tv.coeff * tw.coeff;
            const int shift = tv.label.m + tw.label.m;
            for (const auto& sc : structure_constants(tv.label.n, tw.label.n)) {
                term = c * sc.coeff;
                acc.add(sc.n * mod + (sc.twist + shift) % mod, term);
            }
        }
    }
    return acc.to_element(Basis::L);
}

RingElement GrothendieckRing::product(std::span<const RingElement> factors) const
{
    RingElement out = unit();
    for (const auto& f : factors)
        out = multiply(out, f);
    return out;
}

RingElement GrothendieckRing::symm_to_L(int n, std::int64_t m) const
{
    if (n < 0 || n > params_.q() - 1)
        throw ValidationError("symm_to_L: n = " + std::to_string(n) + " outside [0, q-1]");
    return det_twist(symm_columns_[n], m);
}

RingElement GrothendieckRing::irreducible_to_S(int n, std::int64_t m) const
{
    if (n < 0 || n > params_.q() - 1)
        throw ValidationError("irreducible_to_S: n = " + std::to_string(n) + " outside [0, q-1]");
    return det_twist(inverse_columns_[n], m);
}

RingElement GrothendieckRing::convert_basis(const RingElement& v, Basis target) const
{
    check_params(v);
    if (v.basis() == target)
        return v;
    DenseAccumulator acc(params_);
    const auto& columns = target == Basis::L ? symm_columns_ : inverse_columns_;
    const int mod = params_.modulus();
    for (const auto& t : v.terms())
        for (const auto& c : columns[t.label.n].terms())
            acc.add(c.label.n * mod + (c.label.m + t.label.m) % mod, t.coeff * c.coeff);
    return acc.to_element(target);
}

RingElement GrothendieckRing::principal_series(std::int64_t r, std::int64_t m) const
{
    return det_twist(principal_columns_[params_.reduce(r)], m);
}

RingElement GrothendieckRing::reduce_symm_fast(const SymmFactor& factor) const
{
    if (factor.k < 0)
        throw ValidationError("reduce_symm: k must be nonnegative");
    const std::int64_t q = params_.q();
    const std::int64_t k = factor.k;
    const std::int64_t period = q * q - 1;
    const std::int64_t u = k / period;
    const std::int64_t rem = k % period;
    const std::int64_t v = rem / (q + 1);
    const std::int64_t w = rem % (q + 1);

    // sum_{i=0}^{q-2} [V_{k-2i}(i)] and its first v terms.
    RingElement full = zero();
    RingElement partial = zero();
    for (std::int64_t i = 0; i <= q - 2; ++i) {
        RingElement term = principal_series(k - 2 * i, i);
        if (i < v)
            partial += term;
        full += term;
    }
    RingElement tail = w == q ? principal_series(1, 0) : symm_columns_[w];
    RingElement out = full * from_int64(u);
    out += partial;
    out += det_twist(tail, u * (q - 1) + v);
    return frobenius_twist(det_twist(out, factor.m), factor.j);
}

std::vector<RingElement> GrothendieckRing::symm_sequence_slow(std::int64_t kmax) const
{
    if (kmax < 0)
        throw ValidationError("symm_sequence_slow: kmax must be nonnegative");
    std::vector<RingElement> seq;
    seq.reserve(static_cast<std::size_t>(kmax) + 1);
    seq.push_back(unit());
    if (kmax >= 1)
        seq.push_back(irreducible(1, 0));
    RingElement l1 = irreducible(1, 0);
    for (std::int64_t k = 2; k <= kmax; ++k)
        seq.push_back(multiply(seq[k - 1], l1) - det_twist(seq[k - 2], 1));
    return seq;
}

RingElement GrothendieckRing::reduce_symm_slow(const SymmFactor& factor) const
{
    auto seq = symm_sequence_slow(factor.k);
    return frobenius_twist(det_twist(seq.back(), factor.m), factor.j);
}

RingElement GrothendieckRing::reduce_symm(const SymmFactor& factor) const
{
    return reduce_symm_fast(factor);
}

RingElement GrothendieckRing::reduce_product(std::span<const SymmFactor> factors) const
{
    RingElement out = unit();
    for (const auto& f : factors)
        out = multiply(out, reduce_symm(f));
    return out;
}

std::vector<std::pair<std::pair<int, int>, StructureConstants>> GrothendieckRing::export_structure_constants() const
{
    std::vector<std::pair<std::pair<int, int>, StructureConstants>> out;
    std::shared_lock lock(cache_mutex_);
    const int q = params_.q();
    for (int idx = 0; idx < static_cast<int>(cache_.size()); ++idx)
        if (cache_[idx])
            out.push_back({{idx / q, idx % q}, *cache_[idx]});
    return out;
}

bool GrothendieckRing::import_structure_constants(
    const std::vector<std::pair<std::pair<int, int>, StructureConstants>>& entries)
{
    const int q = params_.q();
    for (const auto& [key, terms] : entries) {
        auto [a, b] = key;
        if (a < 0 || b < 0 || a >= q || b >= q)
            return false;
        std::int64_t dim = 0;
        const int alpha = params_.reduce(a + b);
        for (const auto& t : terms) {
            if (t.n < 0 || t.n >= q || t.twist < 0 || t.twist >= params_.modulus() || t.coeff <= 0)
                return false;
            if (central_character_of(params_, {t.n, t.twist}) != alpha)
                return false;
            dim += t.coeff * irreducible_dimension(params_, t.n);
        }
        if (dim != irreducible_dimension(params_, a) * irreducible_dimension(params_, b))
            return false;
        if (!std::is_sorted(terms.begin(), terms.end()))
            return false;
    }
    std::unique_lock lock(cache_mutex_);
    for (const auto& [key, terms] : entries) {
        int idx = pair_index(key.first, key.second);
        if (!cache_[idx])
            cache_[idx] = std::make_shared<const StructureConstants>(terms);
    }
    return true;
}

} // namespace modgl2
