#pragma once

// Ready-made structures for tests, demos and the CLI `fixtures` subcommand:
// a small gallery of hyperfields that satisfy every axiom, single-cell
// mutations of them that each break a named level of the tower, and the
// hypervector spaces over Q^d used throughout the inner-product machinery.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "hyperalg/element.hpp"
#include "hyperalg/errors.hpp"
#include "hyperalg/hyperspace.hpp"
#include "hyperalg/hyperstructures.hpp"
#include "hyperalg/setalg.hpp"

namespace hyperalg::fixtures {

// ---------------------------------------------------------------------------
// Sound hyperfields.
// ---------------------------------------------------------------------------

// Two elements, 1 + 1 = {0, 1}. The smallest hyperfield that is not a field.
inline Hyperfield krasner_hyperfield() {
    const CarrierDesc c = CarrierDesc::atoms({"0", "1"});
    const Element z = c.members[0], o = c.members[1];
    HyperOp::Table add;
    add[{z, z}] = {z};
    add[{z, o}] = {o};
    add[{o, z}] = {o};
    add[{o, o}] = {z, o};
    ScalarOp::Table mul;
    mul[{z, z}] = z;
    mul[{z, o}] = z;
    mul[{o, z}] = z;
    mul[{o, o}] = o;
    Hyperfield F;
    F.carrier = c;
    F.add = HyperOp::from_table(c, std::move(add));
    F.mul = ScalarOp::from_table(c, std::move(mul));
    F.zero = z;
    F.one = o;
    F.neg.table = {{z, z}, {o, o}};
    F.inv.table = {{o, o}};
    F.abs.table = {{z, Rational(0)}, {o, Rational(1)}};
    F.name = "krasner";
    return F;
}

// Three elements 0, 1, -1 recording only the sign of a rational: the sum of a
// positive and a negative number can land anywhere, so 1 + -1 = {0, 1, -1}.
inline Hyperfield sign_hyperfield() {
    const CarrierDesc c = CarrierDesc::atoms({"0", "1", "-1"});
    const Element z = c.members[0], p = c.members[1], m = c.members[2];
    HyperOp::Table add;
    for (const auto& x : c.members) {
        add[{z, x}] = {x};
        add[{x, z}] = {x};
    }
    add[{p, p}] = {p};
    add[{m, m}] = {m};
    add[{p, m}] = {z, p, m};
    add[{m, p}] = {z, p, m};
    ScalarOp::Table mul;
    for (const auto& x : c.members) {
        mul[{z, x}] = z;
        mul[{x, z}] = z;
    }
    mul[{p, p}] = p;
    mul[{p, m}] = m;
    mul[{m, p}] = m;
    mul[{m, m}] = p;
    Hyperfield F;
    F.carrier = c;
    F.add = HyperOp::from_table(c, std::move(add));
    F.mul = ScalarOp::from_table(c, std::move(mul));
    F.zero = z;
    F.one = p;
    F.neg.table = {{z, z}, {p, m}, {m, p}};
    F.inv.table = {{p, p}, {m, m}};
    F.abs.table = {{z, Rational(0)}, {p, Rational(1)}, {m, Rational(1)}};
    F.name = "sign";
    return F;
}

inline Hyperfield gf2_hyperfield() { return field_as_trivial_hyperfield(prime_field(2)); }
inline Hyperfield gf3_hyperfield() { return field_as_trivial_hyperfield(prime_field(3)); }
inline Hyperfield rational_hyperfield() { return field_as_trivial_hyperfield(rational_field()); }

// Additive part of a hyperfield, as a standalone hypergroup.
inline Hypergroup additive_hypergroup(const Hyperfield& F) {
    Hypergroup H;
    H.carrier = F.carrier;
    H.add = F.add;
    H.zero = F.zero;
    H.neg = F.neg;
    H.commutative = true;
    return H;
}

// ---------------------------------------------------------------------------
// Single-cell mutations.
// ---------------------------------------------------------------------------

namespace detail {

inline Element named(const Hyperfield& F, const std::string& name) {
    const Element* e = F.carrier.find_named(name);
    if (!e) throw DomainError("fixture mutation: unknown element " + name);
    return *e;
}

inline HyperOp::Table add_table(const Hyperfield& F) {
    HyperOp::Table t;
    for (const auto& a : F.carrier.members)
        for (const auto& b : F.carrier.members) t[{a, b}] = F.add.apply(a, b);
    return t;
}

inline ScalarOp::Table mul_table(const Hyperfield& F) {
    ScalarOp::Table t;
    for (const auto& a : F.carrier.members)
        for (const auto& b : F.carrier.members) t[{a, b}] = F.mul.apply(a, b);
    return t;
}

} // namespace detail

// Replace one hyperaddition cell (and its mirror when symmetric) by the named
// result set. Everything else, including the designated constants, is kept.
inline Hyperfield with_add_cell(const Hyperfield& base, const std::string& a, const std::string& b,
                                const std::vector<std::string>& result, bool symmetric = true) {
    const Element ea = detail::named(base, a), eb = detail::named(base, b);
    ElementSet s;
    for (const auto& r : result) s.insert(detail::named(base, r));
    HyperOp::Table t = detail::add_table(base);
    t[{ea, eb}] = s;
    if (symmetric) t[{eb, ea}] = s;
    Hyperfield F = base;
    F.add = HyperOp::from_table(base.carrier, std::move(t));
    return F;
}

// Replace one multiplication cell (and its mirror when symmetric).
inline Hyperfield with_mul_cell(const Hyperfield& base, const std::string& a, const std::string& b,
                                const std::string& result, bool symmetric = true) {
    const Element ea = detail::named(base, a), eb = detail::named(base, b);
    const Element er = detail::named(base, result);
    ScalarOp::Table t = detail::mul_table(base);
    t[{ea, eb}] = er;
    if (symmetric) t[{eb, ea}] = er;
    Hyperfield F = base;
    F.mul = ScalarOp::from_table(base.carrier, std::move(t));
    return F;
}

// ---------------------------------------------------------------------------
// Gallery: sound structures plus one broken structure per mutation, each
// tagged with the first verification level it fails.
// ---------------------------------------------------------------------------

struct GalleryEntry {
    std::string name;
    std::string note;  // what the structure is, or which cell was edited
    std::string fails; // first failing check selector, empty for sound entries
    Hyperfield field;
};

inline std::vector<GalleryEntry> structure_gallery() {
    std::vector<GalleryEntry> g;
    const Hyperfield K = krasner_hyperfield();
    const Hyperfield S = sign_hyperfield();
    const Hyperfield G2 = gf2_hyperfield();
    const Hyperfield G3 = gf3_hyperfield();

    g.push_back({"krasner", "two-element hyperfield with 1 + 1 = {0, 1}", "", K});
    g.push_back({"sign", "signs of rationals with 1 + -1 = {0, 1, -1}", "", S});
    g.push_back({"gf2", "field with two elements, singleton hyperaddition", "", G2});
    g.push_back({"gf3", "field with three elements, singleton hyperaddition", "", G3});

    g.push_back({"krasner-add-zero-zero", "0 + 0 rewritten to {0, 1}",
                 "scalar.semihypergroup", with_add_cell(K, "0", "0", {"0", "1"})});
    g.push_back({"krasner-add-one-one", "1 + 1 rewritten to {1}",
                 "scalar.hypergroup", with_add_cell(K, "1", "1", {"1"})});
    g.push_back({"krasner-add-zero-one", "0 + 1 rewritten to {0, 1}",
                 "scalar.hypergroup", with_add_cell(K, "0", "1", {"0", "1"})});
    g.push_back({"krasner-mul-one-one", "1 . 1 rewritten to 0",
                 "scalar.hyperfield", with_mul_cell(K, "1", "1", "0")});
    g.push_back({"krasner-mul-zero-one", "0 . 1 rewritten to 1",
                 "scalar.hyperring", with_mul_cell(K, "0", "1", "1")});

    g.push_back({"sign-add-one-one", "1 + 1 rewritten to {0, 1}",
                 "scalar.hypergroup", with_add_cell(S, "1", "1", {"0", "1"})});
    g.push_back({"sign-add-one-neg", "1 + -1 rewritten to {0}",
                 "scalar.semihypergroup", with_add_cell(S, "1", "-1", {"0"})});
    g.push_back({"sign-mul-neg-neg", "-1 . -1 rewritten to -1",
                 "scalar.hyperring", with_mul_cell(S, "-1", "-1", "-1")});
    g.push_back({"sign-add-zero-one", "0 + 1 rewritten to {0, 1}",
                 "scalar.hypergroup", with_add_cell(S, "0", "1", {"0", "1"})});

    g.push_back({"gf2-add-one-one", "1 + 1 rewritten to {1}",
                 "scalar.hypergroup", with_add_cell(G2, "1", "1", {"1"})});
    g.push_back({"gf2-mul-one-one", "1 . 1 rewritten to 0",
                 "scalar.hyperfield", with_mul_cell(G2, "1", "1", "0")});

    g.push_back({"gf3-add-one-two", "1 + 2 rewritten to {1}",
                 "scalar.semihypergroup", with_add_cell(G3, "1", "2", {"1"})});
    g.push_back({"gf3-add-two-two", "2 + 2 rewritten to {2}",
                 "scalar.semihypergroup", with_add_cell(G3, "2", "2", {"2"})});
    g.push_back({"gf3-mul-two-two", "2 . 2 rewritten to 2",
                 "scalar.hyperring", with_mul_cell(G3, "2", "2", "2")});
    g.push_back({"gf3-add-zero-two", "0 + 2 rewritten to {1}",
                 "scalar.semihypergroup", with_add_cell(G3, "0", "2", {"1"})});
    return g;
}

inline GalleryEntry gallery_entry(const std::string& name) {
    for (auto& e : structure_gallery())
        if (e.name == name) return e;
    throw DomainError("unknown fixture " + name);
}

// ---------------------------------------------------------------------------
// Hypervector spaces over Q^d.
// ---------------------------------------------------------------------------

inline Element theta(std::size_t dim) { return Element::vector(RatVec(dim, Rational(0))); }

// Q^d under singleton vector addition.
inline Hypergroup vector_group_q(std::size_t dim) {
    const CarrierDesc c = CarrierDesc::rational_vectors(dim);
    Hypergroup H;
    H.carrier = c;
    H.add = HyperOp::from_rule(c, "vector-sum", [](const Element& u, const Element& v) {
        return ElementSet::singleton(Element::vector(vec_add(u.as_vector(), v.as_vector())));
    });
    H.zero = theta(dim);
    H.neg.fn = [](const Element& v) { return Element::vector(vec_neg(v.as_vector())); };
    H.neg.rule_name = "vector-negate";
    H.commutative = true;
    return H;
}

// The named scalar actions on Q^d. "scale" is the classical product, "cone"
// adds the origin to every result, "scale-keep" keeps the unscaled input.
inline StarOp star_rule_q(std::size_t dim, const std::string& star_rule) {
    StarOp::Rule rule;
    if (star_rule == "scale") {
        rule = [](const Element& a, const Element& v) {
            return ElementSet::singleton(Element::vector(vec_scale(a.as_scalar(), v.as_vector())));
        };
    } else if (star_rule == "cone") {
        rule = [dim](const Element& a, const Element& v) {
            return ElementSet{Element::vector(vec_scale(a.as_scalar(), v.as_vector())),
                              fixtures::theta(dim)};
        };
    } else if (star_rule == "scale-keep") {
        rule = [](const Element& a, const Element& v) {
            return ElementSet{Element::vector(vec_scale(a.as_scalar(), v.as_vector())), v};
        };
    } else {
        throw DomainError("unknown star rule " + star_rule);
    }
    return StarOp::from_rule(CarrierDesc::rationals(), CarrierDesc::rational_vectors(dim),
                             star_rule, std::move(rule));
}

namespace detail {

inline HyperVectorSpace space_q(std::size_t dim, const std::string& star_rule) {
    HyperVectorSpace W;
    W.scalars = rational_hyperfield();
    W.vectors = vector_group_q(dim);
    W.star = star_rule_q(dim, star_rule);
    return W;
}

} // namespace detail

// a * v = {a v}: the classical vector space Q^d seen as a hypervector space.
inline HyperVectorSpace trivial_space_q(std::size_t dim) { return detail::space_q(dim, "scale"); }

// a * v = {a v, theta}: every product can also collapse to the origin. All
// space axioms hold, but the dot product loses additivity on it, which makes
// it the standard counterexample for the inner-product checks.
inline HyperVectorSpace cone_space_q(std::size_t dim) { return detail::space_q(dim, "cone"); }

// a * v = {a v, v}: keeps the input alongside the scaled copy. Breaks both
// scalar-addition compatibility and scalar-multiplication compatibility,
// e.g. at a = 2, b = 3, v = (1, 0).
inline HyperVectorSpace scale_keep_space_q(std::size_t dim) { return detail::space_q(dim, "scale-keep"); }

// ---------------------------------------------------------------------------
// Shared sample grids. Axiom checks over unbounded carriers quantify over
// these; tests pin them so failures replay exactly.
// ---------------------------------------------------------------------------

inline std::vector<Element> scalar_grid() {
    return {Element::scalar(Rational(-2)),     Element::scalar(Rational(-1)),
            Element::scalar(Rational(-1, 2)),  Element::scalar(Rational(0)),
            Element::scalar(Rational(1, 2)),   Element::scalar(Rational(1)),
            Element::scalar(Rational(2)),      Element::scalar(Rational(3))};
}

namespace detail {

inline std::vector<Element> pad_vectors(const std::vector<RatVec>& base, std::size_t dim) {
    ElementSet s;
    for (RatVec v : base) {
        v.resize(dim, Rational(0));
        s.insert(Element::vector(std::move(v)));
    }
    return {s.begin(), s.end()};
}

} // namespace detail

inline std::vector<Element> vector_grid(std::size_t dim) {
    return detail::pad_vectors({{Rational(0), Rational(0)},
                                {Rational(1), Rational(0)},
                                {Rational(0), Rational(1)},
                                {Rational(-1), Rational(0)},
                                {Rational(1), Rational(1)},
                                {Rational(1), Rational(-1)},
                                {Rational(2), Rational(3)},
                                {Rational(1, 2), Rational(-1, 2)}},
                               dim);
}

inline std::vector<Element> universe_grid(std::size_t dim) {
    return detail::pad_vectors({{Rational(0), Rational(0)},
                                {Rational(1), Rational(0)},
                                {Rational(0), Rational(1)}},
                               dim);
}

inline std::vector<Element> probe_grid(std::size_t dim) {
    return detail::pad_vectors({{Rational(0), Rational(0)},
                                {Rational(2), Rational(3)},
                                {Rational(2), Rational(1)}},
                               dim);
}

} // namespace hyperalg::fixtures
