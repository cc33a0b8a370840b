#pragma once

// Hypervector spaces: a scalar hyperfield acting on a vector hypergroup through
// a set-valued scalar multiplication (the star operation). The compatibility
// axioms are checked on caller-supplied sample grids (finite carriers default
// to the whole carrier), and every quantifier over "some coefficients" or
// "some subset of V" is made finite by an explicit coefficient pool and vector
// universe; verdicts are always relative to those bounds.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hyperalg/element.hpp"
#include "hyperalg/errors.hpp"
#include "hyperalg/hyperstructures.hpp"
#include "hyperalg/setalg.hpp"
#include "hyperalg/violation.hpp"

namespace hyperalg {

// Scalar-by-vector set-valued multiplication. Heterogeneous, so it is not a
// HyperOp: the left argument lives in the scalar carrier, the right argument
// and the result in the vector carrier.
struct StarOp {
    using Table = std::map<std::pair<Element, Element>, ElementSet>;
    using Rule  = std::function<ElementSet(const Element&, const Element&)>;

    CarrierDesc scalars, vectors;
    Table table;
    Rule rule;
    std::string rule_name;

    static StarOp from_table(CarrierDesc scalars, CarrierDesc vectors, Table t) {
        StarOp op;
        op.scalars = std::move(scalars);
        op.vectors = std::move(vectors);
        op.table = std::move(t);
        op.rule_name = "table";
        return op;
    }

    static StarOp from_rule(CarrierDesc scalars, CarrierDesc vectors, std::string name, Rule r) {
        StarOp op;
        op.scalars = std::move(scalars);
        op.vectors = std::move(vectors);
        op.rule = std::move(r);
        op.rule_name = std::move(name);
        return op;
    }

    ElementSet apply(const Element& a, const Element& v) const {
        scalars.require(a, "star");
        vectors.require(v, "star");
        ElementSet out;
        if (!table.empty()) {
            const auto it = table.find({a, v});
            if (it == table.end())
                throw MalformedStructureError("missing star cell " + a.to_string() + " * " + v.to_string());
            out = it->second;
        } else if (rule) {
            out = rule(a, v);
        } else {
            throw MalformedStructureError("star operation has neither table nor rule");
        }
        if (out.empty())
            throw MalformedStructureError("empty star result for " + a.to_string() + " * " + v.to_string());
        for (const auto& e : out)
            if (!vectors.contains(e))
                throw MalformedStructureError("star result leaves the vector carrier: " + e.to_string());
        return out;
    }
};

struct HyperVectorSpace {
    Hyperfield scalars;
    Hypergroup vectors; // zero element is the vector theta
    StarOp star;
    bool verified = false;

    const Element& theta() const {
        if (!vectors.zero) throw PreconditionError("vector hypergroup has no designated zero");
        return *vectors.zero;
    }
    Element scalar_neg(const Element& a) const {
        if (!scalars.neg.defined_at(a)) throw PreconditionError("scalar negation undefined");
        return scalars.neg.apply(a);
    }
    Element vector_neg(const Element& v) const {
        if (!vectors.neg.defined_at(v)) throw PreconditionError("vector negation undefined");
        return vectors.neg.apply(v);
    }
};

// Finite stock of scalars used to instantiate existential coefficient claims.
// Always contains 0 and 1, plus -1 when the scalar negation can produce it.
struct CoefficientPool {
    std::vector<Element> values; // canonical order, deduplicated

    static CoefficientPool make(const Hyperfield& F, const std::vector<Element>& extra = {}) {
        ElementSet s;
        s.insert(F.zero_or_throw());
        s.insert(F.one_or_throw());
        if (F.neg.defined_at(F.one_or_throw())) s.insert(F.neg.apply(F.one_or_throw()));
        for (const auto& e : extra) {
            F.carrier.require(e, "coefficient pool");
            s.insert(e);
        }
        CoefficientPool p;
        p.values.assign(s.begin(), s.end());
        return p;
    }

    bool contains(const Element& e) const {
        for (const auto& v : values)
            if (v == e) return true;
        return false;
    }
};

// Finite stock of vectors used to instantiate "some subset P of V" claims.
// Always contains theta.
struct VectorUniverse {
    std::vector<Element> vectors; // canonical order, deduplicated

    static VectorUniverse make(const HyperVectorSpace& W, const std::vector<Element>& extra = {}) {
        ElementSet s;
        s.insert(W.theta());
        for (const auto& e : extra) {
            W.star.vectors.require(e, "vector universe");
            s.insert(e);
        }
        VectorUniverse u;
        u.vectors.assign(s.begin(), s.end());
        return u;
    }
};

namespace detail {

inline ElementSet star_point_set(const StarOp& star, const Element& a, const ElementSet& S) {
    ElementSet out;
    for (const auto& v : S) out.unite(star.apply(a, v));
    return out;
}

inline ElementSet star_set_point(const StarOp& star, const ElementSet& A, const Element& v) {
    ElementSet out;
    for (const auto& a : A) out.unite(star.apply(a, v));
    return out;
}

inline std::vector<Element> default_samples(const CarrierDesc& c, const std::vector<Element>& given,
                                            const char* who) {
    if (!given.empty()) {
        for (const auto& e : given) c.require(e, who);
        ElementSet s;
        for (const auto& e : given) s.insert(e);
        return {s.begin(), s.end()};
    }
    if (c.finite_carrier()) return c.members;
    throw PreconditionError(std::string(who) + ": samples required for an unbounded carrier");
}

} // namespace detail

// Compatibility axioms of the scalar action, on the given sample grids:
//   HVS.add.compat         a*(u # v)  is contained in  a*u # a*v
//   HVS.scalar.add.compat  (a ⊕ b)*v  is contained in  a*v # b*v
//   HVS.scalar.mul.compat  (a.b)*v  =  a*(b*v)          (strict equality)
//   HVS.neg.compat         (-a)*v   =  a*(-v)           (strict equality)
//   HVS.identity           v  in  1*v
//   HVS.zero.scalar        theta  in  0*v
//   HVS.zero.vector        0*theta  =  {theta}
inline Violations check_hvs_axioms(const HyperVectorSpace& W,
                                   const std::vector<Element>& scalar_samples = {},
                                   const std::vector<Element>& vector_samples = {},
                                   const CheckOptions& opts = {}) {
    const std::vector<Element> S = detail::default_samples(W.scalars.carrier, scalar_samples, "check_hvs_axioms");
    const std::vector<Element> V = detail::default_samples(W.star.vectors, vector_samples, "check_hvs_axioms");
    Violations out;
    ViolationSink sink(opts);

    for (const auto& a : S) {
        for (const auto& u : V) {
            for (const auto& v : V) {
                if (sink.open("HVS.add.compat")) {
                    const ElementSet lhs = detail::star_point_set(W.star, a, W.vectors.add.apply(u, v));
                    const ElementSet rhs = extend_set_set(W.vectors.add, W.star.apply(a, u), W.star.apply(a, v));
                    if (!lhs.subset_of(rhs))
                        sink.report(out, {"HVS.add.compat", {a, u, v}, lhs, rhs, {}, {},
                                          "a*(u # v) not contained in a*u # a*v"});
                }
            }
        }
    }

    for (const auto& a : S)
        for (const auto& b : S)
            for (const auto& v : V) {
                if (sink.open("HVS.scalar.add.compat")) {
                    const ElementSet lhs = detail::star_set_point(W.star, W.scalars.add.apply(a, b), v);
                    const ElementSet rhs = extend_set_set(W.vectors.add, W.star.apply(a, v), W.star.apply(b, v));
                    if (!lhs.subset_of(rhs))
                        sink.report(out, {"HVS.scalar.add.compat", {a, b, v}, lhs, rhs, {}, {},
                                          "(a + b)*v not contained in a*v # b*v"});
                }
                if (sink.open("HVS.scalar.mul.compat")) {
                    const ElementSet lhs = W.star.apply(W.scalars.mul.apply(a, b), v);
                    const ElementSet rhs = detail::star_point_set(W.star, a, W.star.apply(b, v));
                    if (lhs != rhs)
                        sink.report(out, {"HVS.scalar.mul.compat", {a, b, v}, lhs, rhs, {}, {},
                                          "(a.b)*v differs from a*(b*v)"});
                }
            }

    for (const auto& a : S)
        for (const auto& v : V) {
            if (sink.open("HVS.neg.compat")) {
                const ElementSet lhs = W.star.apply(W.scalar_neg(a), v);
                const ElementSet rhs = W.star.apply(a, W.vector_neg(v));
                if (lhs != rhs)
                    sink.report(out, {"HVS.neg.compat", {a, v}, lhs, rhs, {}, {},
                                      "(-a)*v differs from a*(-v)"});
            }
        }

    const Element& one = W.scalars.one_or_throw();
    const Element& zero = W.scalars.zero_or_throw();
    const Element& theta = W.theta();
    for (const auto& v : V) {
        if (sink.open("HVS.identity")) {
            const ElementSet sv = W.star.apply(one, v);
            if (!sv.contains(v))
                sink.report(out, {"HVS.identity", {one, v}, sv, ElementSet::singleton(v), {}, {},
                                  "v not in 1*v"});
        }
        if (sink.open("HVS.zero.scalar")) {
            const ElementSet zv = W.star.apply(zero, v);
            if (!zv.contains(theta))
                sink.report(out, {"HVS.zero.scalar", {zero, v}, zv, ElementSet::singleton(theta), {}, {},
                                  "theta not in 0*v"});
        }
    }
    {
        const ElementSet zt = W.star.apply(zero, theta);
        if (zt != ElementSet::singleton(theta))
            sink.report(out, {"HVS.zero.vector", {zero, theta}, zt, ElementSet::singleton(theta), {}, {},
                              "0*theta is not exactly {theta}"});
    }
    return out;
}

// Negation through the scalar -1: the vector -v must appear in (-1)*v.
inline Violations check_minus_one_negation(const HyperVectorSpace& W,
                                           const std::vector<Element>& vector_samples = {},
                                           const CheckOptions& opts = {}) {
    const std::vector<Element> V = detail::default_samples(W.star.vectors, vector_samples,
                                                           "check_minus_one_negation");
    const Element minus_one = W.scalar_neg(W.scalars.one_or_throw());
    Violations out;
    ViolationSink sink(opts);
    for (const auto& v : V) {
        if (!sink.open("HVS.neg.member")) break;
        const ElementSet mv = W.star.apply(minus_one, v);
        const Element nv = W.vector_neg(v);
        if (!mv.contains(nv))
            sink.report(out, {"HVS.neg.member", {minus_one, v}, mv, ElementSet::singleton(nv), {}, {},
                              "-v not in (-1)*v"});
    }
    return out;
}

// Left-fold hypersum of coefficient-scaled terms:
//   (c1*v1) # (c2*v2) # ... folded left to right.
inline ElementSet linear_combination(const HyperVectorSpace& W,
                                     const std::vector<Element>& coefficients,
                                     const std::vector<Element>& vectors) {
    if (coefficients.size() != vectors.size())
        throw DomainError("linear_combination: coefficient/vector count mismatch");
    if (vectors.empty())
        throw DomainError("linear_combination: empty combination");
    ElementSet acc = W.star.apply(coefficients[0], vectors[0]);
    for (std::size_t i = 1; i < vectors.size(); ++i)
        acc = extend_set_set(W.vectors.add, acc, W.star.apply(coefficients[i], vectors[i]));
    return acc;
}

struct DependenceVerdict {
    bool dependent = false;
    std::vector<Element> subset;       // witness vectors (subset of A, canonical order)
    std::vector<Element> coefficients; // witness coefficients, aligned with subset
};

namespace detail {

inline std::vector<Element> dedup_vectors(const HyperVectorSpace& W, const std::vector<Element>& A,
                                          const char* who) {
    if (A.empty()) throw DomainError(std::string(who) + ": empty vector list");
    ElementSet s;
    for (const auto& v : A) {
        W.star.vectors.require(v, who);
        s.insert(v);
    }
    return {s.begin(), s.end()};
}

// Enumerate nonempty subsets of `base` in canonical order (size, then position
// lexicographic), and for each subset all pool tuples in lexicographic pool
// order; hand each (subset, tuple) to `visit` until it returns true.
template <typename Visit>
bool for_each_subset_tuple(const std::vector<Element>& base, const std::vector<Element>& pool,
                           Visit&& visit) {
    const std::size_t n = base.size();
    std::vector<std::size_t> idx;
    const std::function<bool(std::size_t, std::size_t)> subsets = [&](std::size_t k, std::size_t from) -> bool {
        if (idx.size() == k) {
            std::vector<Element> subset;
            for (const auto i : idx) subset.push_back(base[i]);
            std::vector<std::size_t> t(k, 0);
            while (true) {
                std::vector<Element> coeffs;
                for (const auto ti : t) coeffs.push_back(pool[ti]);
                if (visit(subset, coeffs)) return true;
                std::size_t pos = k;
                while (pos > 0 && t[pos - 1] + 1 == pool.size()) t[--pos] = 0;
                if (pos == 0) break;
                ++t[pos - 1];
            }
            return false;
        }
        for (std::size_t i = from; i < n; ++i) {
            idx.push_back(i);
            if (subsets(k, i + 1)) return true;
            idx.pop_back();
        }
        return false;
    };
    for (std::size_t k = 1; k <= n; ++k)
        if (subsets(k, 0)) return true;
    return false;
}

} // namespace detail

// Some nonempty subset of A with pool coefficients, not all zero, puts theta in
// the hypersum. Returns the canonically first witness. Relative to the pool.
inline DependenceVerdict is_linearly_dependent(const HyperVectorSpace& W,
                                               const std::vector<Element>& A,
                                               const CoefficientPool& pool) {
    const std::vector<Element> base = detail::dedup_vectors(W, A, "is_linearly_dependent");
    if (pool.values.empty()) throw DomainError("is_linearly_dependent: empty pool");
    const Element zero = W.scalars.zero_or_throw();
    const Element theta = W.theta();
    DependenceVerdict verdict;
    detail::for_each_subset_tuple(base, pool.values,
        [&](const std::vector<Element>& subset, const std::vector<Element>& coeffs) {
            bool all_zero = true;
            for (const auto& c : coeffs)
                if (c != zero) { all_zero = false; break; }
            if (all_zero) return false;
            if (linear_combination(W, coeffs, subset).contains(theta)) {
                verdict.dependent = true;
                verdict.subset = subset;
                verdict.coefficients = coeffs;
                return true;
            }
            return false;
        });
    return verdict;
}

struct WeakIndependenceVerdict {
    bool weakly_independent = false;
    // Counterexample, when one exists: a subset with not-all-zero coefficients
    // whose hypersum equals 0*P for some nonempty P from the universe.
    std::vector<Element> subset, coefficients, P;
};

// Weak linear independence: no nonempty subset of A with not-all-zero pool
// coefficients has its hypersum equal (as a set) to 0*P for any nonempty
// subset P of the universe. Relative to (pool, universe).
inline WeakIndependenceVerdict is_weak_linearly_independent(const HyperVectorSpace& W,
                                                            const std::vector<Element>& A,
                                                            const CoefficientPool& pool,
                                                            const VectorUniverse& universe,
                                                            const CheckOptions& opts = {}) {
    const std::vector<Element> base = detail::dedup_vectors(W, A, "is_weak_linearly_independent");
    if (universe.vectors.empty()) throw DomainError("is_weak_linearly_independent: empty universe");
    if (universe.vectors.size() > opts.max_universe)
        throw BudgetError("is_weak_linearly_independent: universe exceeds cap of " +
                          std::to_string(opts.max_universe));
    const Element zero = W.scalars.zero_or_throw();

    // All achievable 0*P sets, P ranging over nonempty universe subsets in
    // increasing bitmask order; first mask realizing each set wins.
    std::vector<ElementSet> zero_p_sets;
    std::vector<std::vector<Element>> zero_p_witnesses;
    {
        std::vector<ElementSet> per_point;
        for (const auto& p : universe.vectors) per_point.push_back(W.star.apply(zero, p));
        const std::size_t n = universe.vectors.size();
        for (std::size_t mask = 1; mask < (static_cast<std::size_t>(1) << n); ++mask) {
            ElementSet s;
            std::vector<Element> P;
            for (std::size_t i = 0; i < n; ++i)
                if (mask & (static_cast<std::size_t>(1) << i)) {
                    s.unite(per_point[i]);
                    P.push_back(universe.vectors[i]);
                }
            bool seen = false;
            for (const auto& t : zero_p_sets)
                if (t == s) { seen = true; break; }
            if (!seen) {
                zero_p_sets.push_back(std::move(s));
                zero_p_witnesses.push_back(std::move(P));
            }
        }
    }

    WeakIndependenceVerdict verdict;
    verdict.weakly_independent = true;
    detail::for_each_subset_tuple(base, pool.values,
        [&](const std::vector<Element>& subset, const std::vector<Element>& coeffs) {
            bool all_zero = true;
            for (const auto& c : coeffs)
                if (c != zero) { all_zero = false; break; }
            if (all_zero) return false;
            const ElementSet sum = linear_combination(W, coeffs, subset);
            for (std::size_t i = 0; i < zero_p_sets.size(); ++i)
                if (zero_p_sets[i] == sum) {
                    verdict.weakly_independent = false;
                    verdict.subset = subset;
                    verdict.coefficients = coeffs;
                    verdict.P = zero_p_witnesses[i];
                    return true;
                }
            return false;
        });
    return verdict;
}

struct BasisVerdict {
    bool spans_probes = false;
    std::vector<Element> unreached; // probes with no pool representation
};

namespace detail {

inline bool pool_reachable(const HyperVectorSpace& W, const std::vector<Element>& base,
                           const CoefficientPool& pool, const Element& target) {
    return detail::for_each_subset_tuple(base, pool.values,
        [&](const std::vector<Element>& subset, const std::vector<Element>& coeffs) {
            return linear_combination(W, coeffs, subset).contains(target);
        });
}

} // namespace detail

// Pool-bounded basis test: A must be independent (precondition, relative to the
// pool), and every probe must be representable with pool coefficients over some
// subset of A. Relative to (pool, probes).
inline BasisVerdict is_basis(const HyperVectorSpace& W, const std::vector<Element>& A,
                             const std::vector<Element>& probes, const CoefficientPool& pool) {
    const std::vector<Element> base = detail::dedup_vectors(W, A, "is_basis");
    const DependenceVerdict dep = is_linearly_dependent(W, base, pool);
    if (dep.dependent)
        throw PreconditionError("is_basis: input vectors are pool-dependent");
    BasisVerdict verdict;
    for (const auto& probe : probes) {
        W.star.vectors.require(probe, "is_basis probe");
        if (!detail::pool_reachable(W, base, pool, probe)) verdict.unreached.push_back(probe);
    }
    verdict.spans_probes = verdict.unreached.empty();
    return verdict;
}

// If alpha is representable over A (witnessed by the given coefficients), then
// {alpha} together with A is linearly dependent. The dependence search runs
// over the pool extended with the negated witness coefficients and 1.
inline DependenceVerdict check_represented_vector_dependence(const HyperVectorSpace& W,
                                                             const std::vector<Element>& A,
                                                             const Element& alpha,
                                                             const std::vector<Element>& coefficients,
                                                             const CoefficientPool& pool) {
    const std::vector<Element> base = detail::dedup_vectors(W, A, "check_represented_vector_dependence");
    W.star.vectors.require(alpha, "check_represented_vector_dependence");
    if (!linear_combination(W, coefficients, A).contains(alpha))
        throw PreconditionError("check_represented_vector_dependence: alpha is not represented "
                                "by the given coefficients");
    std::vector<Element> extra = coefficients;
    for (const auto& c : coefficients) extra.push_back(W.scalar_neg(c));
    extra.push_back(W.scalars.one_or_throw());
    for (const auto& p : pool.values) extra.push_back(p);
    const CoefficientPool extended = CoefficientPool::make(W.scalars, extra);

    std::vector<Element> family = base;
    family.push_back(alpha);
    return is_linearly_dependent(W, family, extended);
}

} // namespace hyperalg
