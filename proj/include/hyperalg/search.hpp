#pragma once

// Exhaustive finite-model search. Hyperoperation tables on carriers of up to
// four elements are enumerated as arrays of bitmasks (one mask of carrier
// members per cell), run through a fast mask-level filter, and survivors are
// revalidated with the authoritative checkers before they are cataloged.
// Duplicate structures that differ only by a relabeling of the carrier are
// folded by a canonical key: the least table encoding over all permutations
// that fix the designated constants.
//
// The star-model search probes a different question: over a fixed finite
// vector configuration and inner product, which set-valued scalar actions
// satisfy the space axioms together with the sup-homogeneity law? Cells are
// filtered individually first, which usually collapses the search space to a
// handful of full tables.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "hyperalg/element.hpp"
#include "hyperalg/errors.hpp"
#include "hyperalg/hyperstructures.hpp"
#include "hyperalg/inner.hpp"
#include "hyperalg/setalg.hpp"
#include "hyperalg/violation.hpp"

namespace hyperalg {

struct SearchSpec {
    std::size_t order = 2;            // carrier size
    std::string kind = "hypergroup";  // hypergroup | hyperfield | star-op (CLI routing)
    bool require_commutative = false; // hyperfield addition is always commutative
    std::optional<std::size_t> zero_index;
    std::optional<std::size_t> one_index;
    // Pinned multiplication cells (hyperfields), applied symmetrically.
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> mul_pins;
    std::uint64_t budget = 100'000'000; // candidate tables examined across all workers
    unsigned jobs = 1;
    bool prune = true; // symmetry cells, forced zero rows, forced mul rows
};

struct CatalogEntry {
    std::string kind; // "hypergroup" | "hyperfield"
    std::size_t order = 0;
    std::optional<std::size_t> zero_index, one_index; // as designated in the spec
    std::vector<std::uint8_t> add_cells;              // row-major masks
    std::vector<std::uint8_t> mul_cells;              // row-major element indices (hyperfields)
    std::string canonical_key;
    std::string digest; // discovered constants, for the catalog index
};

struct SearchResult {
    std::vector<CatalogEntry> entries; // sorted by canonical key, deduplicated
    bool partial = false;              // budget ran out before the space was exhausted
    std::uint64_t examined = 0;        // candidate tables inspected
};

namespace detail {

constexpr std::size_t kMaxOrder = 4;

struct MaskTable {
    std::size_t n = 0;
    std::array<std::uint8_t, kMaxOrder * kMaxOrder> cells{}; // row-major subsets

    std::uint8_t cell(std::size_t i, std::size_t j) const { return cells[i * n + j]; }
    void set(std::size_t i, std::size_t j, std::uint8_t m) { cells[i * n + j] = m; }
};

// Union of cell(i, j) over the members i of A.
inline std::uint8_t mt_left_extend(const MaskTable& t, std::uint8_t A, std::size_t j) {
    std::uint8_t out = 0;
    for (std::size_t i = 0; i < t.n; ++i)
        if (A & (1u << i)) out |= t.cell(i, j);
    return out;
}

inline std::uint8_t mt_right_extend(const MaskTable& t, std::size_t i, std::uint8_t B) {
    std::uint8_t out = 0;
    for (std::size_t j = 0; j < t.n; ++j)
        if (B & (1u << j)) out |= t.cell(i, j);
    return out;
}

inline bool mt_assoc(const MaskTable& t) {
    for (std::size_t a = 0; a < t.n; ++a)
        for (std::size_t b = 0; b < t.n; ++b) {
            const std::uint8_t ab = t.cell(a, b);
            for (std::size_t c = 0; c < t.n; ++c)
                if (mt_left_extend(t, ab, c) != mt_right_extend(t, a, t.cell(b, c))) return false;
        }
    return true;
}

inline bool mt_commutative(const MaskTable& t) {
    for (std::size_t a = 0; a < t.n; ++a)
        for (std::size_t b = a + 1; b < t.n; ++b)
            if (t.cell(a, b) != t.cell(b, a)) return false;
    return true;
}

// Mirror of valid_zero on masks: unique two-sided inverses plus reversibility.
inline std::optional<std::array<std::uint8_t, kMaxOrder>> mt_zero_neg(const MaskTable& t,
                                                                      std::size_t z) {
    std::array<std::uint8_t, kMaxOrder> neg{};
    for (std::size_t a = 0; a < t.n; ++a) {
        std::uint8_t candidates = 0;
        for (std::size_t b = 0; b < t.n; ++b)
            if ((t.cell(a, b) & (1u << z)) && (t.cell(b, a) & (1u << z)))
                candidates |= (1u << b);
        if (std::popcount(static_cast<unsigned>(candidates)) != 1) return std::nullopt;
        neg[a] = static_cast<std::uint8_t>(std::countr_zero(static_cast<unsigned>(candidates)));
    }
    for (std::size_t b = 0; b < t.n; ++b)
        for (std::size_t c = 0; c < t.n; ++c) {
            const std::uint8_t bc = t.cell(b, c);
            for (std::size_t a = 0; a < t.n; ++a)
                if ((bc & (1u << a)) && !(t.cell(a, neg[c]) & (1u << b))) return std::nullopt;
        }
    return neg;
}

inline bool mt_has_valid_zero(const MaskTable& t, const std::optional<std::size_t>& designated) {
    if (designated) return mt_zero_neg(t, *designated).has_value();
    for (std::size_t z = 0; z < t.n; ++z)
        if (mt_zero_neg(t, z)) return true;
    return false;
}

// Single-valued multiplication table on indices.
struct MulTable {
    std::size_t n = 0;
    std::array<std::uint8_t, kMaxOrder * kMaxOrder> cells{};

    std::uint8_t cell(std::size_t i, std::size_t j) const { return cells[i * n + j]; }
    void set(std::size_t i, std::size_t j, std::uint8_t v) { cells[i * n + j] = v; }
};

inline bool hyperfield_mask_filter(const MaskTable& add, const MulTable& mul, std::size_t zero,
                                   std::size_t one) {
    const std::size_t n = add.n;
    for (std::size_t a = 0; a < n; ++a) {
        if (mul.cell(zero, a) != zero || mul.cell(a, zero) != zero) return false; // absorbing
        if (mul.cell(one, a) != a || mul.cell(a, one) != a) return false;         // identity
        for (std::size_t b = a + 1; b < n; ++b)
            if (mul.cell(a, b) != mul.cell(b, a)) return false; // commutative
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                if (mul.cell(mul.cell(a, b), c) != mul.cell(a, mul.cell(b, c)))
                    return false; // associative
    for (std::size_t a = 0; a < n; ++a) {
        if (a == zero) continue;
        bool has_inverse = false;
        for (std::size_t b = 0; b < n; ++b)
            if (mul.cell(a, b) == one) { has_inverse = true; break; }
        if (!has_inverse) return false;
    }
    // Distributivity, both sides, as strict set equality.
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c) {
                const std::uint8_t bc = add.cell(b, c);
                std::uint8_t left = 0, right = 0;
                for (std::size_t x = 0; x < n; ++x)
                    if (bc & (1u << x)) {
                        left |= (1u << mul.cell(a, x));
                        right |= (1u << mul.cell(x, a));
                    }
                if (left != add.cell(mul.cell(a, b), mul.cell(a, c))) return false;
                if (right != add.cell(mul.cell(b, a), mul.cell(c, a))) return false;
            }
    return true;
}

// --- canonical keys ---------------------------------------------------------

inline std::vector<std::vector<std::size_t>> permutations_fixing(std::size_t n,
                                                                 const std::optional<std::size_t>& zero,
                                                                 const std::optional<std::size_t>& one) {
    std::vector<std::size_t> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = i;
    std::vector<std::vector<std::size_t>> out;
    do {
        if (zero && p[*zero] != *zero) continue;
        if (one && p[*one] != *one) continue;
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

inline std::uint8_t map_mask(const std::vector<std::size_t>& perm, std::uint8_t m) {
    std::uint8_t out = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
        if (m & (1u << i)) out |= (1u << perm[i]);
    return out;
}

inline char hex_digit(std::uint8_t v) { return v < 10 ? char('0' + v) : char('a' + v - 10); }

inline std::string encode_tables(const MaskTable& add, const MulTable* mul,
                                 const std::vector<std::size_t>& perm) {
    const std::size_t n = add.n;
    std::vector<std::size_t> inv(n);
    for (std::size_t i = 0; i < n; ++i) inv[perm[i]] = i;
    std::string s;
    s.reserve(n * n * 2 + 4);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            s.push_back(hex_digit(map_mask(perm, add.cell(inv[i], inv[j]))));
    if (mul) {
        s.push_back(':');
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                s.push_back(hex_digit(static_cast<std::uint8_t>(perm[mul->cell(inv[i], inv[j])])));
    }
    return s;
}

inline std::string canonical_key(const MaskTable& add, const MulTable* mul,
                                 const std::vector<std::vector<std::size_t>>& perms) {
    std::string best;
    for (const auto& p : perms) {
        std::string s = encode_tables(add, mul, p);
        if (best.empty() || s < best) best = std::move(s);
    }
    return (mul ? "f" : "h") + std::to_string(add.n) + ":" + best;
}

// --- assignment enumeration --------------------------------------------------

struct CellPlan {
    std::size_t n = 0;
    MaskTable base;                       // forced cells prefilled
    std::vector<std::size_t> free_cells;  // row-major positions, enumeration order
    bool mirror = false;                  // write (j, i) alongside (i, j)
};

inline CellPlan make_add_plan(const SearchSpec& spec, bool commutative) {
    CellPlan plan;
    plan.n = spec.order;
    plan.base.n = spec.order;
    plan.mirror = spec.prune && commutative;
    const bool force_zero = spec.prune && commutative && spec.zero_index.has_value();
    for (std::size_t i = 0; i < spec.order; ++i)
        for (std::size_t j = 0; j < spec.order; ++j) {
            if (force_zero && (i == *spec.zero_index || j == *spec.zero_index)) {
                const std::size_t other = (i == *spec.zero_index) ? j : i;
                plan.base.set(i, j, static_cast<std::uint8_t>(1u << other));
                continue;
            }
            if (plan.mirror && j < i) continue; // filled by the mirror write
            plan.free_cells.push_back(i * spec.order + j);
        }
    return plan;
}

// Iterate all assignments of values from value_count choices (1-based masks or
// 0-based indices via `encode`) to the plan's free cells, first cell
// restricted to first_values. Returns false when the budget ran out.
template <typename Encode, typename Table, typename Fn>
bool for_each_assignment(const CellPlan& plan, Table table, std::size_t value_count,
                         const std::vector<std::size_t>& first_values, Encode encode,
                         std::uint64_t budget, std::uint64_t& examined, Fn&& fn) {
    const auto write = [&](Table& t, std::size_t pos, std::size_t choice) {
        const std::size_t i = pos / plan.n, j = pos % plan.n;
        const auto v = encode(choice);
        t.set(i, j, v);
        if (plan.mirror) t.set(j, i, v);
    };
    if (plan.free_cells.empty()) {
        if (first_values.empty()) return true; // another worker owns the single table
        if (examined >= budget) return false;
        ++examined;
        fn(table);
        return true;
    }
    const std::size_t k = plan.free_cells.size();
    for (const std::size_t first : first_values) {
        write(table, plan.free_cells[0], first);
        std::vector<std::size_t> idx(k, 0);
        for (std::size_t c = 1; c < k; ++c) write(table, plan.free_cells[c], 0);
        while (true) {
            if (examined >= budget) return false;
            ++examined;
            fn(table);
            std::size_t pos = k;
            while (pos > 1 && idx[pos - 1] + 1 == value_count) {
                idx[pos - 1] = 0;
                write(table, plan.free_cells[pos - 1], 0);
                --pos;
            }
            if (pos == 1) break;
            ++idx[pos - 1];
            write(table, plan.free_cells[pos - 1], idx[pos - 1]);
        }
    }
    return true;
}

inline std::vector<std::size_t> worker_slice(std::size_t value_count, unsigned jobs, unsigned id) {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < value_count; ++v)
        if (v % jobs == id) out.push_back(v);
    return out;
}

inline CarrierDesc index_carrier(std::size_t n) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i));
    return CarrierDesc::atoms(names);
}

inline HyperOp masks_to_hyperop(const CarrierDesc& c, const MaskTable& t) {
    HyperOp::Table table;
    for (std::size_t i = 0; i < t.n; ++i)
        for (std::size_t j = 0; j < t.n; ++j) {
            ElementSet s;
            for (std::size_t b = 0; b < t.n; ++b)
                if (t.cell(i, j) & (1u << b)) s.insert(c.members[b]);
            table[{c.members[i], c.members[j]}] = s;
        }
    return HyperOp::from_table(c, std::move(table));
}

inline ScalarOp indices_to_scalarop(const CarrierDesc& c, const MulTable& t) {
    ScalarOp::Table table;
    for (std::size_t i = 0; i < t.n; ++i)
        for (std::size_t j = 0; j < t.n; ++j)
            table[{c.members[i], c.members[j]}] = c.members[t.cell(i, j)];
    return ScalarOp::from_table(c, std::move(table));
}

inline std::string neg_digest(const CarrierDesc& c, const std::map<Element, Element>& neg) {
    std::string s = "neg=";
    bool first = true;
    for (const auto& m : c.members) {
        const auto it = neg.find(m);
        s += (first ? "" : ",");
        s += (it == neg.end()) ? "?" : it->second.to_string();
        first = false;
    }
    return s;
}

inline void merge_results(SearchResult& total, std::vector<SearchResult>& parts) {
    for (auto& p : parts) {
        total.partial = total.partial || p.partial;
        total.examined += p.examined;
        for (auto& e : p.entries) total.entries.push_back(std::move(e));
    }
    std::sort(total.entries.begin(), total.entries.end(),
              [](const CatalogEntry& a, const CatalogEntry& b) {
                  if (a.canonical_key != b.canonical_key) return a.canonical_key < b.canonical_key;
                  if (a.add_cells != b.add_cells) return a.add_cells < b.add_cells;
                  return a.mul_cells < b.mul_cells;
              });
    total.entries.erase(std::unique(total.entries.begin(), total.entries.end(),
                                    [](const CatalogEntry& a, const CatalogEntry& b) {
                                        return a.canonical_key == b.canonical_key;
                                    }),
                        total.entries.end());
}

inline void validate_spec(const SearchSpec& spec, std::size_t cap, const char* who) {
    if (spec.order < 1) throw DomainError(std::string(who) + ": order must be at least 1");
    if (spec.budget == 0) throw DomainError(std::string(who) + ": budget must be positive");
    if (spec.order > cap)
        throw BudgetError(std::string(who) + ": order " + std::to_string(spec.order) +
                          " exceeds the cap of " + std::to_string(cap));
    if (spec.zero_index && *spec.zero_index >= spec.order)
        throw DomainError(std::string(who) + ": zero index out of range");
    if (spec.one_index && *spec.one_index >= spec.order)
        throw DomainError(std::string(who) + ": one index out of range");
}

} // namespace detail

// Rebuild a cataloged structure. Round-tripping through these and the checkers
// is the validation story for persisted catalogs.
inline Hypergroup entry_to_hypergroup(const CatalogEntry& e) {
    const CarrierDesc c = detail::index_carrier(e.order);
    detail::MaskTable t;
    t.n = e.order;
    for (std::size_t i = 0; i < e.add_cells.size(); ++i) t.cells[i] = e.add_cells[i];
    Hypergroup H;
    H.carrier = c;
    H.add = detail::masks_to_hyperop(c, t);
    if (e.zero_index) H.zero = c.members[*e.zero_index];
    H.commutative = H.add.commutative_on_finite();
    return H;
}

inline Hyperfield entry_to_hyperfield(const CatalogEntry& e) {
    const CarrierDesc c = detail::index_carrier(e.order);
    detail::MaskTable t;
    t.n = e.order;
    for (std::size_t i = 0; i < e.add_cells.size(); ++i) t.cells[i] = e.add_cells[i];
    detail::MulTable m;
    m.n = e.order;
    for (std::size_t i = 0; i < e.mul_cells.size(); ++i) m.cells[i] = e.mul_cells[i];
    Hyperfield F;
    F.carrier = c;
    F.add = detail::masks_to_hyperop(c, t);
    F.mul = detail::indices_to_scalarop(c, m);
    if (e.zero_index) F.zero = c.members[*e.zero_index];
    if (e.one_index) F.one = c.members[*e.one_index];
    F.name = "catalog";
    return F;
}

// All hypergroup tables on `order` elements, up to relabelings fixing the
// designated zero. Mask-level filtering first, authoritative check_hypergroup
// on the survivors.
inline SearchResult enumerate_hypergroups(const SearchSpec& spec) {
    detail::validate_spec(spec, detail::kMaxOrder, "enumerate_hypergroups");
    const std::size_t n = spec.order;
    const std::size_t value_count = (static_cast<std::size_t>(1) << n) - 1;
    const detail::CellPlan plan = detail::make_add_plan(spec, spec.require_commutative);
    const auto perms = detail::permutations_fixing(n, spec.zero_index, std::nullopt);
    const CarrierDesc carrier = detail::index_carrier(n);
    const unsigned jobs = std::clamp(spec.jobs, 1u, 16u);
    const std::uint64_t worker_budget = spec.budget / jobs + (spec.budget % jobs ? 1 : 0);

    std::vector<SearchResult> parts(jobs);
    const auto run_worker = [&](unsigned id) {
        SearchResult& res = parts[id];
        const auto slice = detail::worker_slice(value_count, jobs, id);
        const bool complete = detail::for_each_assignment(
            plan, plan.base, value_count, plan.free_cells.empty() ? (id == 0 ? slice : std::vector<std::size_t>{}) : slice,
            [](std::size_t choice) { return static_cast<std::uint8_t>(choice + 1); }, worker_budget,
            res.examined, [&](const detail::MaskTable& t) {
                if (!detail::mt_assoc(t)) return;
                if (spec.require_commutative && !detail::mt_commutative(t)) return;
                if (!detail::mt_has_valid_zero(t, spec.zero_index)) return;

                CatalogEntry e;
                e.kind = "hypergroup";
                e.order = n;
                e.zero_index = spec.zero_index;
                e.add_cells.assign(t.cells.begin(), t.cells.begin() + n * n);
                Hypergroup H;
                H.carrier = carrier;
                H.add = detail::masks_to_hyperop(carrier, t);
                if (spec.zero_index) H.zero = carrier.members[*spec.zero_index];
                H.commutative = spec.require_commutative;
                const HypergroupReport rep = check_hypergroup(H);
                if (!rep.is_hypergroup) return;
                e.canonical_key = detail::canonical_key(t, nullptr, perms);
                e.digest = "zero=" + (rep.zero ? rep.zero->to_string() : "?") + ";" +
                           detail::neg_digest(carrier, rep.neg);
                res.entries.push_back(std::move(e));
            });
        res.partial = !complete;
    };

    if (jobs == 1) {
        run_worker(0);
    } else {
        std::vector<std::thread> threads;
        for (unsigned id = 0; id < jobs; ++id) threads.emplace_back(run_worker, id);
        for (auto& th : threads) th.join();
    }
    SearchResult total;
    detail::merge_results(total, parts);
    return total;
}

// All hyperfield table pairs on `order` elements with the designated zero and
// one. The addition is required to be commutative (Def of the additive part),
// multiplication cells can be pinned through spec.mul_pins.
inline SearchResult enumerate_hyperfields(const SearchSpec& spec) {
    detail::validate_spec(spec, 3, "enumerate_hyperfields");
    if (!spec.zero_index || !spec.one_index)
        throw DomainError("enumerate_hyperfields: designated zero and one are required");
    if (*spec.zero_index == *spec.one_index || spec.order < 2)
        throw DomainError("enumerate_hyperfields: zero and one must be distinct");
    for (const auto& [cell, value] : spec.mul_pins)
        if (cell.first >= spec.order || cell.second >= spec.order || value >= spec.order)
            throw DomainError("enumerate_hyperfields: mul pin out of range");

    const std::size_t n = spec.order;
    const std::size_t zero = *spec.zero_index, one = *spec.one_index;
    const std::size_t add_values = (static_cast<std::size_t>(1) << n) - 1;
    SearchSpec add_spec = spec;
    add_spec.require_commutative = true;
    const detail::CellPlan add_plan = detail::make_add_plan(add_spec, true);
    const auto perms = detail::permutations_fixing(n, spec.zero_index, spec.one_index);
    const CarrierDesc carrier = detail::index_carrier(n);
    const unsigned jobs = std::clamp(spec.jobs, 1u, 16u);
    const std::uint64_t worker_budget = spec.budget / jobs + (spec.budget % jobs ? 1 : 0);

    // The multiplication plan is shared by all add tables.
    detail::CellPlan mul_plan;
    mul_plan.n = n;
    mul_plan.mirror = spec.prune;
    mul_plan.base.n = n; // unused for mul; the real base lives below
    detail::MulTable mul_base;
    {
        mul_base.n = n;
        std::array<bool, detail::kMaxOrder * detail::kMaxOrder> pinned{};
        for (const auto& [cell, value] : spec.mul_pins) {
            mul_base.set(cell.first, cell.second, static_cast<std::uint8_t>(value));
            mul_base.set(cell.second, cell.first, static_cast<std::uint8_t>(value));
            pinned[cell.first * n + cell.second] = true;
            pinned[cell.second * n + cell.first] = true;
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (pinned[i * n + j]) continue;
                if (spec.prune && (i == zero || j == zero)) {
                    mul_base.set(i, j, static_cast<std::uint8_t>(zero));
                    continue;
                }
                if (spec.prune && (i == one || j == one)) {
                    mul_base.set(i, j, static_cast<std::uint8_t>(i == one ? j : i));
                    continue;
                }
                if (mul_plan.mirror && j < i) continue;
                mul_plan.free_cells.push_back(i * n + j);
            }
    }

    std::vector<SearchResult> parts(jobs);
    const auto run_worker = [&](unsigned id) {
        SearchResult& res = parts[id];
        const auto slice = detail::worker_slice(add_values, jobs, id);
        bool mul_complete = true;
        const bool add_complete = detail::for_each_assignment(
            add_plan, add_plan.base, add_values,
            add_plan.free_cells.empty() ? (id == 0 ? slice : std::vector<std::size_t>{}) : slice,
            [](std::size_t choice) { return static_cast<std::uint8_t>(choice + 1); }, worker_budget,
            res.examined, [&](const detail::MaskTable& add) {
                if (!detail::mt_assoc(add)) return;
                if (!detail::mt_commutative(add)) return;
                if (!detail::mt_zero_neg(add, zero)) return;

                std::vector<std::size_t> all_mul_values;
                for (std::size_t v = 0; v < n; ++v) all_mul_values.push_back(v);
                const bool ok = detail::for_each_assignment(
                    mul_plan, mul_base, n, all_mul_values,
                    [](std::size_t choice) { return static_cast<std::uint8_t>(choice); },
                    worker_budget, res.examined, [&](const detail::MulTable& mul) {
                        if (!detail::hyperfield_mask_filter(add, mul, zero, one)) return;
                        for (const auto& [cell, value] : spec.mul_pins)
                            if (mul.cell(cell.first, cell.second) != value) return;

                        Hyperfield F;
                        F.carrier = carrier;
                        F.add = detail::masks_to_hyperop(carrier, add);
                        F.mul = detail::indices_to_scalarop(carrier, mul);
                        F.zero = carrier.members[zero];
                        F.one = carrier.members[one];
                        F.name = "search";
                        const HyperfieldReport rep = check_hyperfield(F);
                        if (!rep.is_hyperfield) return;

                        CatalogEntry e;
                        e.kind = "hyperfield";
                        e.order = n;
                        e.zero_index = zero;
                        e.one_index = one;
                        e.add_cells.assign(add.cells.begin(), add.cells.begin() + n * n);
                        e.mul_cells.assign(mul.cells.begin(), mul.cells.begin() + n * n);
                        e.canonical_key = detail::canonical_key(add, &mul, perms);
                        e.digest = detail::neg_digest(carrier, rep.neg);
                        res.entries.push_back(std::move(e));
                    });
                mul_complete = mul_complete && ok;
            });
        res.partial = !(add_complete && mul_complete);
    };

    if (jobs == 1) {
        run_worker(0);
    } else {
        std::vector<std::thread> threads;
        for (unsigned id = 0; id < jobs; ++id) threads.emplace_back(run_worker, id);
        for (auto& th : threads) th.join();
    }
    SearchResult total;
    detail::merge_results(total, parts);
    return total;
}

// ---------------------------------------------------------------------------
// Star-model search.
// ---------------------------------------------------------------------------

// A fixed finite stage for the scalar action: vectors closed under the given
// addition and negation, a fixed inner product, and a finite scalar pool that
// must contain 0 and 1 (pins come from those).
struct StarSearchConfig {
    std::vector<Element> vectors; // canonical order enforced on validation
    Element theta;
    HyperOp vector_add;
    UnaryMap vector_neg;
    std::vector<Rational> scalar_pool;
    InnerProduct ip;
    std::uint64_t budget = 100'000'000;
};

struct StarModel {
    std::vector<std::uint8_t> cells; // (pool x vectors) row-major masks over vectors
    bool non_singleton = false;
};

struct StarSearchResult {
    std::vector<StarModel> models;
    bool additive_ok = true;  // Def of sup-additivity on the fixed addition; star-independent
    Violations additive_violations;
    std::vector<std::size_t> cell_candidate_counts; // per cell, after the per-cell filter
    std::uint64_t examined = 0;
    bool partial = false;
    bool any_non_singleton = false;
};

namespace detail {

struct StarStage {
    std::size_t V = 0, P = 0;
    std::vector<Element> vectors;
    std::vector<Rational> pool;
    std::vector<std::vector<std::uint8_t>> add_mask; // add result as mask
    std::vector<std::size_t> neg_idx;
    std::vector<std::vector<Rational>> ip_val;
    std::size_t theta_idx = 0;
    std::optional<std::size_t> pool_zero, pool_one;
    std::vector<std::vector<std::optional<std::size_t>>> pool_sum, pool_prod;
    std::vector<std::optional<std::size_t>> pool_neg;
};

inline std::size_t star_vector_index(const StarStage& st, const Element& e) {
    for (std::size_t i = 0; i < st.V; ++i)
        if (st.vectors[i] == e) return i;
    throw DomainError("star search: vector set is not closed: " + e.to_string());
}

inline StarStage build_star_stage(const StarSearchConfig& cfg) {
    StarStage st;
    {
        ElementSet s;
        for (const auto& v : cfg.vectors) s.insert(v);
        st.vectors.assign(s.begin(), s.end());
    }
    st.V = st.vectors.size();
    if (st.V == 0) throw DomainError("star search: empty vector set");
    if (st.V > 8) throw BudgetError("star search: vector set exceeds the cap of 8");
    st.pool = cfg.scalar_pool;
    std::sort(st.pool.begin(), st.pool.end());
    st.pool.erase(std::unique(st.pool.begin(), st.pool.end()), st.pool.end());
    st.P = st.pool.size();
    if (st.P == 0) throw DomainError("star search: empty scalar pool");

    st.theta_idx = star_vector_index(st, cfg.theta);
    st.add_mask.assign(st.V, std::vector<std::uint8_t>(st.V, 0));
    st.neg_idx.assign(st.V, 0);
    st.ip_val.assign(st.V, std::vector<Rational>(st.V));
    for (std::size_t i = 0; i < st.V; ++i) {
        st.neg_idx[i] = star_vector_index(st, cfg.vector_neg.apply(st.vectors[i]));
        for (std::size_t j = 0; j < st.V; ++j) {
            for (const auto& r : cfg.vector_add.apply(st.vectors[i], st.vectors[j]))
                st.add_mask[i][j] |= static_cast<std::uint8_t>(1u << star_vector_index(st, r));
            st.ip_val[i][j] = cfg.ip.apply(st.vectors[i], st.vectors[j]);
        }
    }
    const auto pool_index = [&](const Rational& r) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < st.P; ++i)
            if (st.pool[i] == r) return i;
        return std::nullopt;
    };
    st.pool_zero = pool_index(Rational(0));
    st.pool_one = pool_index(Rational(1));
    if (!st.pool_zero || !st.pool_one)
        throw DomainError("star search: scalar pool must contain 0 and 1");
    st.pool_sum.assign(st.P, std::vector<std::optional<std::size_t>>(st.P));
    st.pool_prod.assign(st.P, std::vector<std::optional<std::size_t>>(st.P));
    st.pool_neg.assign(st.P, std::nullopt);
    for (std::size_t i = 0; i < st.P; ++i) {
        st.pool_neg[i] = pool_index(-st.pool[i]);
        for (std::size_t j = 0; j < st.P; ++j) {
            st.pool_sum[i][j] = pool_index(st.pool[i] + st.pool[j]);
            st.pool_prod[i][j] = pool_index(st.pool[i] * st.pool[j]);
        }
    }
    return st;
}

// Def 4.3(v) and the membership pins for one cell, on the stage tables.
inline bool star_cell_admissible(const StarStage& st, std::size_t a, std::size_t v,
                                 std::uint8_t mask) {
    for (std::size_t b = 0; b < st.V; ++b) {
        std::optional<Rational> sup;
        for (std::size_t x = 0; x < st.V; ++x)
            if (mask & (1u << x))
                if (!sup || st.ip_val[x][b] > *sup) sup = st.ip_val[x][b];
        if (*sup != st.pool[a] * st.ip_val[v][b]) return false;
    }
    if (a == *st.pool_one && !(mask & (1u << v))) return false;
    if (a == *st.pool_zero) {
        if (!(mask & (1u << st.theta_idx))) return false;
        if (v == st.theta_idx && mask != (1u << st.theta_idx)) return false;
    }
    return true;
}

} // namespace detail

// Violations of the per-cell star laws for an explicit candidate cell; used to
// document why a proposed cell (for instance the cone shape {a v, theta}) is
// rejected.
inline Violations check_star_cell(const StarSearchConfig& cfg, const Rational& a,
                                  const Element& alpha, const ElementSet& cell,
                                  const CheckOptions& opts = {}) {
    const detail::StarStage st = detail::build_star_stage(cfg);
    if (cell.empty()) throw DomainError("check_star_cell: empty cell");
    Violations out;
    ViolationSink sink(opts);
    const Element ea = Element::scalar(a);
    for (const auto& b : st.vectors) {
        if (!sink.open("STAR.sup")) break;
        const SupValue sup = sup_inner_left(cfg.ip, cell, b);
        const Rational expect = a * cfg.ip.apply(alpha, b);
        if (sup.value != expect)
            sink.report(out, {"STAR.sup", {ea, alpha, b, sup.at}, cell, {}, sup.value, expect,
                              "sup <cell, b> differs from a <alpha, b>"});
    }
    if (a == 1 && !cell.contains(alpha))
        sink.report(out, {"STAR.identity", {ea, alpha}, cell, ElementSet::singleton(alpha), {}, {},
                          "alpha missing from 1 * alpha"});
    if (a == 0 && !cell.contains(cfg.theta))
        sink.report(out, {"STAR.zero.scalar", {ea, alpha}, cell, ElementSet::singleton(cfg.theta),
                          {}, {}, "theta missing from 0 * alpha"});
    if (a == 0 && alpha == cfg.theta && cell != ElementSet::singleton(cfg.theta))
        sink.report(out, {"STAR.zero.vector", {ea, alpha}, cell, ElementSet::singleton(cfg.theta),
                          {}, {}, "0 * theta must be exactly {theta}"});
    return out;
}

// Enumerate complete star tables over the configuration. Cells are filtered
// individually against the sup law and the membership pins; full assignments
// are then checked against the space compatibility axioms, restricted to
// scalar combinations that stay inside the pool. Sup-additivity of the fixed
// addition is star-independent, so it is evaluated once and reported on the
// side instead of zeroing out the model list.
inline StarSearchResult search_star_models(const StarSearchConfig& cfg,
                                           const CheckOptions& opts = {}) {
    const detail::StarStage st = detail::build_star_stage(cfg);
    StarSearchResult res;

    {
        ViolationSink sink(opts);
        for (std::size_t u = 0; u < st.V && res.additive_violations.size() < opts.max_violations; ++u)
            for (std::size_t v = 0; v < st.V; ++v)
                for (std::size_t w = 0; w < st.V; ++w) {
                    if (!sink.open("STAR.additive")) break;
                    std::optional<Rational> sup;
                    for (std::size_t x = 0; x < st.V; ++x)
                        if (st.add_mask[u][v] & (1u << x))
                            if (!sup || st.ip_val[x][w] > *sup) sup = st.ip_val[x][w];
                    const Rational expect = st.ip_val[u][w] + st.ip_val[v][w];
                    if (*sup != expect)
                        sink.report(res.additive_violations,
                                    {"STAR.additive",
                                     {st.vectors[u], st.vectors[v], st.vectors[w]},
                                     {}, {}, *sup, expect,
                                     "sup <u # v, w> differs from <u, w> + <v, w>"});
                }
        res.additive_ok = res.additive_violations.empty();
    }

    // Admissible masks per cell.
    const std::size_t cells = st.P * st.V;
    std::vector<std::vector<std::uint8_t>> admissible(cells);
    const std::uint8_t full = static_cast<std::uint8_t>((1u << st.V) - 1);
    for (std::size_t a = 0; a < st.P; ++a)
        for (std::size_t v = 0; v < st.V; ++v) {
            auto& list = admissible[a * st.V + v];
            for (std::uint8_t m = 1; m <= full; ++m)
                if (detail::star_cell_admissible(st, a, v, m)) list.push_back(m);
            res.cell_candidate_counts.push_back(list.size());
        }
    for (const auto& list : admissible)
        if (list.empty()) return res; // some cell has no lawful value at all

    // Odometer over the admissible lists with cross-cell filtering.
    std::vector<std::size_t> idx(cells, 0);
    std::vector<std::uint8_t> table(cells, 0);
    const auto cell = [&](std::size_t a, std::size_t v) -> std::uint8_t {
        return table[a * st.V + v];
    };
    const auto passes_cross_cell = [&]() {
        for (std::size_t a = 0; a < st.P; ++a)
            for (std::size_t u = 0; u < st.V; ++u) {
                // (a b) * v = a * (b * v) and (-a) * v = a * (-v), pool permitting.
                for (std::size_t b = 0; b < st.P; ++b) {
                    if (const auto ab = st.pool_prod[a][b]) {
                        std::uint8_t rhs = 0;
                        for (std::size_t x = 0; x < st.V; ++x)
                            if (cell(b, u) & (1u << x)) rhs |= cell(a, x);
                        if (cell(*ab, u) != rhs) return false;
                    }
                    if (const auto sum = st.pool_sum[a][b]) {
                        std::uint8_t rhs = 0;
                        for (std::size_t x = 0; x < st.V; ++x)
                            if (cell(a, u) & (1u << x))
                                for (std::size_t y = 0; y < st.V; ++y)
                                    if (cell(b, u) & (1u << y)) rhs |= st.add_mask[x][y];
                        if ((cell(*sum, u) & ~rhs) != 0) return false;
                    }
                }
                if (const auto na = st.pool_neg[a])
                    if (cell(*na, u) != cell(a, st.neg_idx[u])) return false;
                // a * (u # v) within a * u # a * v.
                for (std::size_t v = 0; v < st.V; ++v) {
                    std::uint8_t lhs = 0;
                    for (std::size_t w = 0; w < st.V; ++w)
                        if (st.add_mask[u][v] & (1u << w)) lhs |= cell(a, w);
                    std::uint8_t rhs = 0;
                    for (std::size_t x = 0; x < st.V; ++x)
                        if (cell(a, u) & (1u << x))
                            for (std::size_t y = 0; y < st.V; ++y)
                                if (cell(a, v) & (1u << y)) rhs |= st.add_mask[x][y];
                    if ((lhs & ~rhs) != 0) return false;
                }
            }
        return true;
    };

    while (true) {
        if (res.examined >= cfg.budget) {
            res.partial = true;
            break;
        }
        ++res.examined;
        for (std::size_t c = 0; c < cells; ++c) table[c] = admissible[c][idx[c]];
        if (passes_cross_cell()) {
            StarModel m;
            m.cells = table;
            for (const auto v : table)
                m.non_singleton = m.non_singleton || std::popcount(static_cast<unsigned>(v)) > 1;
            res.any_non_singleton = res.any_non_singleton || m.non_singleton;
            res.models.push_back(std::move(m));
        }
        std::size_t pos = cells;
        while (pos > 0 && idx[pos - 1] + 1 == admissible[pos - 1].size()) idx[--pos] = 0;
        if (pos == 0) break;
        ++idx[pos - 1];
    }
    return res;
}

// The vectors and pool of a configuration in stage order, so model cell masks
// can be decoded by callers.
inline std::pair<std::vector<Rational>, std::vector<Element>>
star_stage_axes(const StarSearchConfig& cfg) {
    const detail::StarStage st = detail::build_star_stage(cfg);
    return {st.pool, st.vectors};
}

inline StarOp::Table star_model_table(const StarSearchConfig& cfg, const StarModel& model) {
    const detail::StarStage st = detail::build_star_stage(cfg);
    StarOp::Table t;
    for (std::size_t a = 0; a < st.P; ++a)
        for (std::size_t v = 0; v < st.V; ++v) {
            ElementSet s;
            for (std::size_t x = 0; x < st.V; ++x)
                if (model.cells[a * st.V + v] & (1u << x)) s.insert(st.vectors[x]);
            t[{Element::scalar(st.pool[a]), st.vectors[v]}] = s;
        }
    return t;
}

} // namespace hyperalg
