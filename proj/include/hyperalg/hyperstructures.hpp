#pragma once

// Finite hyperstructures and their exhaustive verifiers.
//
// A hypergroup here is a set with a set-valued addition that is associative,
// has a zero giving every element a unique two-sided inverse, and is
// reversible (a in b#c implies b in a#(-c)). A hyperfield adds a single-valued
// commutative multiplication with identity and nonzero inverses, distributing
// over the hyperaddition from both sides, with an absorbing zero.
//
// Checkers enumerate every instance of each law in canonical carrier order and
// return the failures as replayable Violation values (capped per law).

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hyperalg/element.hpp"
#include "hyperalg/errors.hpp"
#include "hyperalg/setalg.hpp"
#include "hyperalg/violation.hpp"

namespace hyperalg {

struct Hypergroup {
    CarrierDesc carrier;
    HyperOp add;
    std::optional<Element> zero; // designated; discovered by check_hypergroup when unset
    UnaryMap neg;                // optional; filled in by verification
    bool commutative = false;    // declared intent; verified where required
};

struct AbsMap {
    std::map<Element, Rational> table;
    std::function<Rational(const Element&)> fn;

    bool defined() const { return !table.empty() || static_cast<bool>(fn); }
    Rational apply(const Element& x) const {
        const auto it = table.find(x);
        if (it != table.end()) return it->second;
        if (fn) return fn(x);
        throw DomainError("abs undefined at " + x.to_string());
    }
};

struct Hyperfield {
    CarrierDesc carrier;
    HyperOp add;   // set-valued hyperaddition
    ScalarOp mul;  // single-valued multiplication
    std::optional<Element> zero, one;
    UnaryMap neg, inv; // inv is partial: nonzero elements only
    AbsMap abs;        // optional
    std::string name;

    const Element& zero_or_throw() const {
        if (!zero) throw PreconditionError("hyperfield has no designated zero");
        return *zero;
    }
    const Element& one_or_throw() const {
        if (!one) throw PreconditionError("hyperfield has no designated one");
        return *one;
    }
};

struct HypergroupReport {
    bool is_hypergroup = false;
    std::optional<Element> zero;
    std::map<Element, Element> neg;
    std::vector<Element> zero_candidates;
    Violations violations;
};

struct HyperfieldReport {
    bool is_hyperfield = false;
    std::optional<Element> zero, one;
    std::map<Element, Element> neg, inv;
    Violations violations;
};

namespace detail {

inline void require_finite(const CarrierDesc& c, const char* who) {
    if (!c.finite_carrier())
        throw PreconditionError(std::string(who) + " requires a finite carrier");
    if (c.members.empty())
        throw PreconditionError(std::string(who) + ": empty carrier");
}

// For a zero candidate z, find for every a the unique b with z in a#b and z in b#a.
// Returns the inverse map on full success, nullopt otherwise.
inline std::optional<std::map<Element, Element>>
zero_candidate_inverses(const HyperOp& add, const Element& z) {
    std::map<Element, Element> neg;
    for (const auto& a : add.carrier().members) {
        const Element* found = nullptr;
        for (const auto& b : add.carrier().members) {
            if (add.apply(a, b).contains(z) && add.apply(b, a).contains(z)) {
                if (found) return std::nullopt; // not unique
                found = &b;
            }
        }
        if (!found) return std::nullopt; // no inverse
        neg[a] = *found;
    }
    return neg;
}

// Reversibility failures for a fixed inverse map: a in b#c must put b in a#(-c).
inline Violations reversibility_violations(const HyperOp& add,
                                           const std::map<Element, Element>& neg,
                                           ViolationSink& sink) {
    Violations out;
    for (const auto& b : add.carrier().members)
        for (const auto& c : add.carrier().members) {
            const ElementSet bc = add.apply(b, c);
            for (const auto& a : bc) {
                if (!sink.open("HG.reversible")) return out;
                const Element& nc = neg.at(c);
                const ElementSet anc = add.apply(a, nc);
                if (!anc.contains(b))
                    sink.report(out, {"HG.reversible", {a, b, c, nc}, anc, bc, {}, {},
                                      "a in b # c but b not in a # (-c)"});
            }
        }
    return out;
}

// A zero element must both induce unique two-sided inverses and make the
// structure reversible under the induced negation. In a classical group the
// inverse condition alone holds for every element (b = z - a), so candidacy
// without the reversibility filter would not be a usable zero notion.
inline std::optional<std::map<Element, Element>>
valid_zero(const HyperOp& add, const Element& z) {
    auto neg = zero_candidate_inverses(add, z);
    if (!neg) return std::nullopt;
    CheckOptions one{1, 12};
    ViolationSink probe(one);
    if (!reversibility_violations(add, *neg, probe).empty()) return std::nullopt;
    return neg;
}

} // namespace detail

// Associativity of the hyperaddition over every triple.
inline Violations check_semihypergroup(const Hypergroup& H, const CheckOptions& opts = {}) {
    detail::require_finite(H.carrier, "check_semihypergroup");
    Violations out;
    ViolationSink sink(opts);
    for (const auto& a : H.carrier.members) {
        for (const auto& b : H.carrier.members) {
            const ElementSet ab = H.add.apply(a, b);
            for (const auto& c : H.carrier.members) {
                if (!sink.open("HG.assoc")) return out;
                const ElementSet lhs = extend_set_set(H.add, ab, ElementSet::singleton(c));
                const ElementSet rhs = extend_set_set(H.add, ElementSet::singleton(a), H.add.apply(b, c));
                if (lhs != rhs)
                    sink.report(out, {"HG.assoc", {a, b, c}, lhs, rhs, {}, {},
                                      "(a # b) # c differs from a # (b # c)"});
            }
        }
    }
    return out;
}

inline HypergroupReport check_hypergroup(const Hypergroup& H, const CheckOptions& opts = {}) {
    detail::require_finite(H.carrier, "check_hypergroup");
    HypergroupReport rep;
    ViolationSink sink(opts);
    rep.violations = check_semihypergroup(H, opts);

    for (const auto& z : H.carrier.members)
        if (detail::valid_zero(H.add, z)) rep.zero_candidates.push_back(z);

    const bool actually_commutative = H.add.commutative_on_finite();

    const auto explain_candidate = [&](const Element& z) {
        if (auto neg = detail::zero_candidate_inverses(H.add, z)) {
            for (auto& v : detail::reversibility_violations(H.add, *neg, sink))
                rep.violations.push_back(std::move(v));
            return;
        }
        // Explain which elements break this zero, per element.
        for (const auto& a : H.carrier.members) {
            ElementSet bs;
            for (const auto& b : H.carrier.members)
                if (H.add.apply(a, b).contains(z) && H.add.apply(b, a).contains(z))
                    bs.insert(b);
            if (bs.size() == 1) continue;
            const char* id = bs.empty() ? "HG.inv.exists" : "HG.inv.unique";
            if (!sink.open(id)) break;
            sink.report(rep.violations,
                        {id, {z, a}, bs, {}, {}, {},
                         bs.empty() ? "no two-sided inverse for this zero"
                                    : "inverse is not unique for this zero"});
        }
    };

    if (H.zero) {
        H.carrier.require(*H.zero, "designated zero");
        if (auto neg = detail::valid_zero(H.add, *H.zero)) {
            rep.zero = *H.zero;
            rep.neg = *neg;
        } else {
            explain_candidate(*H.zero);
        }
    } else if (!rep.zero_candidates.empty()) {
        rep.zero = rep.zero_candidates.front();
        rep.neg = *detail::valid_zero(H.add, *rep.zero);
    } else {
        // No element works. If some candidate at least induces inverses, show
        // why the canonical one fails; otherwise report plain nonexistence.
        const Element* near_miss = nullptr;
        for (const auto& z : H.carrier.members)
            if (detail::zero_candidate_inverses(H.add, z)) { near_miss = &z; break; }
        if (near_miss)
            explain_candidate(*near_miss);
        else
            sink.report(rep.violations,
                        {"HG.zero.exists", {}, {}, {}, {}, {},
                         "no element admits unique two-sided inverses for every member"});
    }

    if (actually_commutative && rep.zero_candidates.size() > 1) {
        Violation v{"HG.zero.unique", rep.zero_candidates, {}, {}, {}, {},
                    "several zero elements in a commutative structure"};
        sink.report(rep.violations, std::move(v));
    }

    rep.is_hypergroup = rep.violations.empty();
    return rep;
}

// Laws specific to commutative hypergroups: involutive negation, zero acting as
// strict identity, uniqueness of the zero. Precondition: H is a commutative
// hypergroup (checked; failing that is the caller's error, not a violation).
inline Violations check_commutative_zero_laws(const Hypergroup& H, const CheckOptions& opts = {}) {
    detail::require_finite(H.carrier, "check_commutative_zero_laws");
    if (!H.add.commutative_on_finite())
        throw PreconditionError("check_commutative_zero_laws: hyperaddition is not commutative");
    const HypergroupReport base = check_hypergroup(H, opts);
    if (!base.is_hypergroup)
        throw PreconditionError("check_commutative_zero_laws: not a hypergroup: " +
                                (base.violations.empty() ? std::string("unknown")
                                                         : base.violations.front().render()));

    Violations out;
    ViolationSink sink(opts);
    const Element& z = *base.zero;

    for (const auto& a : H.carrier.members) {
        if (!sink.open("HG.neg.involution")) break;
        const Element& na = base.neg.at(a);
        const Element& nna = base.neg.at(na);
        if (nna != a)
            sink.report(out, {"HG.neg.involution", {a, na, nna},
                              ElementSet::singleton(nna), ElementSet::singleton(a), {}, {},
                              "-(-a) differs from a"});
    }

    for (const auto& a : H.carrier.members) {
        if (!sink.open("HG.zero.identity")) break;
        const ElementSet za = H.add.apply(z, a);
        if (za != ElementSet::singleton(a))
            sink.report(out, {"HG.zero.identity", {z, a}, za, ElementSet::singleton(a), {}, {},
                              "0 # a is not exactly {a}"});
    }

    if (base.zero_candidates.size() > 1)
        sink.report(out, {"HG.zero.unique", base.zero_candidates, {}, {}, {}, {},
                          "zero element is not unique"});
    return out;
}

namespace detail {

inline ElementSet map_mul(const ScalarOp& mul, const Element& a, const ElementSet& S, bool left) {
    ElementSet out;
    for (const auto& x : S) out.insert(left ? mul.apply(a, x) : mul.apply(x, a));
    return out;
}

} // namespace detail

// Ring-level laws: commutative additive hypergroup, associative multiplication,
// two-sided distributivity (strict set equality), absorbing zero.
inline Violations check_hyperring(const Hyperfield& F, const CheckOptions& opts = {}) {
    detail::require_finite(F.carrier, "check_hyperring");
    Violations out;
    ViolationSink sink(opts);

    Hypergroup addpart{F.carrier, F.add, F.zero, F.neg, true};
    const HypergroupReport addrep = check_hypergroup(addpart, opts);
    out = addrep.violations;

    for (const auto& a : F.carrier.members) {
        bool stop = false;
        for (const auto& b : F.carrier.members) {
            if (!sink.open("HR.add.comm")) { stop = true; break; }
            const ElementSet ab = F.add.apply(a, b), ba = F.add.apply(b, a);
            if (ab != ba)
                sink.report(out, {"HR.add.comm", {a, b}, ab, ba, {}, {}, "a # b differs from b # a"});
        }
        if (stop) break;
    }

    for (const auto& a : F.carrier.members)
        for (const auto& b : F.carrier.members)
            for (const auto& c : F.carrier.members) {
                if (!sink.open("HR.mul.assoc") && !sink.open("HR.dist.left") && !sink.open("HR.dist.right"))
                    break;
                const Element lm = F.mul.apply(F.mul.apply(a, b), c);
                const Element rm = F.mul.apply(a, F.mul.apply(b, c));
                if (lm != rm)
                    sink.report(out, {"HR.mul.assoc", {a, b, c},
                                      ElementSet::singleton(lm), ElementSet::singleton(rm), {}, {},
                                      "(a.b).c differs from a.(b.c)"});

                const ElementSet dl = detail::map_mul(F.mul, a, F.add.apply(b, c), true);
                const ElementSet dr = F.add.apply(F.mul.apply(a, b), F.mul.apply(a, c));
                if (dl != dr)
                    sink.report(out, {"HR.dist.left", {a, b, c}, dl, dr, {}, {},
                                      "a.(b # c) differs from a.b # a.c"});

                const ElementSet el = detail::map_mul(F.mul, a, F.add.apply(b, c), false);
                const ElementSet er = F.add.apply(F.mul.apply(b, a), F.mul.apply(c, a));
                if (el != er)
                    sink.report(out, {"HR.dist.right", {a, b, c}, el, er, {}, {},
                                      "(b # c).a differs from b.a # c.a"});
            }

    const std::optional<Element> zero = F.zero ? F.zero : addrep.zero;
    if (zero) {
        for (const auto& a : F.carrier.members) {
            if (!sink.open("HR.absorb.right") && !sink.open("HR.absorb.left")) break;
            const Element az = F.mul.apply(a, *zero);
            if (az != *zero)
                sink.report(out, {"HR.absorb.right", {a, *zero},
                                  ElementSet::singleton(az), ElementSet::singleton(*zero), {}, {},
                                  "a.0 differs from 0"});
            const Element za = F.mul.apply(*zero, a);
            if (za != *zero)
                sink.report(out, {"HR.absorb.left", {*zero, a},
                                  ElementSet::singleton(za), ElementSet::singleton(*zero), {}, {},
                                  "0.a differs from 0"});
        }
    }
    return out;
}

inline HyperfieldReport check_hyperfield(const Hyperfield& F, const CheckOptions& opts = {}) {
    detail::require_finite(F.carrier, "check_hyperfield");
    HyperfieldReport rep;
    ViolationSink sink(opts);
    rep.violations = check_hyperring(F, opts);

    {
        Hypergroup addpart{F.carrier, F.add, F.zero, F.neg, true};
        const HypergroupReport addrep = check_hypergroup(addpart, opts);
        rep.zero = addrep.zero;
        rep.neg = addrep.neg;
    }

    for (const auto& a : F.carrier.members) {
        bool stop = false;
        for (const auto& b : F.carrier.members) {
            if (!sink.open("HF.mul.comm")) { stop = true; break; }
            const Element ab = F.mul.apply(a, b), ba = F.mul.apply(b, a);
            if (ab != ba)
                sink.report(rep.violations, {"HF.mul.comm", {a, b},
                                             ElementSet::singleton(ab), ElementSet::singleton(ba), {}, {},
                                             "a.b differs from b.a"});
        }
        if (stop) break;
    }

    // Multiplicative identity: verify the designated one, or search for one.
    const auto is_identity = [&](const Element& e) {
        for (const auto& a : F.carrier.members)
            if (F.mul.apply(e, a) != a || F.mul.apply(a, e) != a) return false;
        return true;
    };
    if (F.one) {
        F.carrier.require(*F.one, "designated one");
        if (is_identity(*F.one)) {
            rep.one = F.one;
        } else {
            for (const auto& a : F.carrier.members) {
                if (!sink.open("HF.one")) break;
                const Element ea = F.mul.apply(*F.one, a), ae = F.mul.apply(a, *F.one);
                if (ea != a || ae != a)
                    sink.report(rep.violations, {"HF.one", {*F.one, a},
                                                 ElementSet{ea, ae}, ElementSet::singleton(a), {}, {},
                                                 "designated one is not an identity here"});
            }
        }
    } else {
        for (const auto& e : F.carrier.members)
            if (is_identity(e)) { rep.one = e; break; }
        if (!rep.one)
            sink.report(rep.violations, {"HF.one.exists", {}, {}, {}, {}, {},
                                         "no multiplicative identity"});
    }

    if (rep.zero && rep.one && *rep.zero == *rep.one)
        sink.report(rep.violations, {"HF.distinct", {*rep.zero}, {}, {}, {}, {},
                                     "zero and one coincide"});

    if (rep.one && rep.zero) {
        for (const auto& a : F.carrier.members) {
            if (a == *rep.zero) continue;
            if (!sink.open("HF.inv.exists")) break;
            const Element* found = nullptr;
            for (const auto& b : F.carrier.members)
                if (F.mul.apply(a, b) == *rep.one && F.mul.apply(b, a) == *rep.one) { found = &b; break; }
            if (found)
                rep.inv[a] = *found;
            else
                sink.report(rep.violations, {"HF.inv.exists", {*rep.one, a}, {}, {}, {}, {},
                                             "no multiplicative inverse"});
        }
    }

    if (F.abs.defined() && rep.zero) {
        const Rational abs_zero = F.abs.apply(*rep.zero);
        if (abs_zero != 0)
            sink.report(rep.violations, {"HF.abs.zero", {*rep.zero}, {}, {}, abs_zero, Rational(0),
                                         "|0| is not 0"});
        for (const auto& a : F.carrier.members) {
            if (a == *rep.zero) continue;
            if (!sink.open("HF.abs.positive")) break;
            const Rational va = F.abs.apply(a);
            if (va <= 0)
                sink.report(rep.violations, {"HF.abs.positive", {a}, {}, {}, va, {},
                                             "|a| is not positive for nonzero a"});
        }
        for (const auto& a : F.carrier.members) {
            bool stop = false;
            for (const auto& b : F.carrier.members) {
                if (!sink.open("HF.abs.mult")) { stop = true; break; }
                const Rational lhs = F.abs.apply(F.mul.apply(a, b));
                const Rational rhs = F.abs.apply(a) * F.abs.apply(b);
                if (lhs != rhs)
                    sink.report(rep.violations, {"HF.abs.mult", {a, b}, {}, {}, lhs, rhs,
                                                 "|a.b| differs from |a|.|b|"});
            }
            if (stop) break;
        }
    }

    rep.is_hyperfield = rep.violations.empty();
    return rep;
}

// ---------------------------------------------------------------------------
// Classical fields and the constructions that turn them into hyperfields.
// ---------------------------------------------------------------------------

struct ClassicalField {
    CarrierDesc carrier;
    std::function<Element(const Element&, const Element&)> add, mul;
    std::function<Element(const Element&)> neg;
    std::function<Element(const Element&)> inv; // defined on nonzero elements
    Element zero, one;
    std::function<Rational(const Element&)> abs; // optional
    std::string name;
};

inline ClassicalField rational_field() {
    ClassicalField F;
    F.carrier = CarrierDesc::rationals();
    F.add = [](const Element& a, const Element& b) { return Element::scalar(a.as_scalar() + b.as_scalar()); };
    F.mul = [](const Element& a, const Element& b) { return Element::scalar(a.as_scalar() * b.as_scalar()); };
    F.neg = [](const Element& a) { return Element::scalar(-a.as_scalar()); };
    F.inv = [](const Element& a) {
        if (a.as_scalar() == 0) throw DomainError("inverse of zero");
        return Element::scalar(1 / a.as_scalar());
    };
    F.zero = Element::scalar(0);
    F.one = Element::scalar(1);
    F.abs = [](const Element& a) { return rational_abs(a.as_scalar()); };
    F.name = "rationals";
    return F;
}

// Prime field on atoms named "0".."p-1".
inline ClassicalField prime_field(unsigned p) {
    if (p < 2 || p > 31) throw DomainError("prime_field: order out of range");
    for (unsigned d = 2; d * d <= p; ++d)
        if (p % d == 0) throw DomainError("prime_field: order is not prime");
    std::vector<std::string> names;
    for (unsigned i = 0; i < p; ++i) names.push_back(std::to_string(i));
    ClassicalField F;
    F.carrier = CarrierDesc::atoms(names);
    const auto at = [carrier = F.carrier](unsigned i) { return carrier.members[i]; };
    F.add = [p, at](const Element& a, const Element& b) {
        return at((a.as_atom().index + b.as_atom().index) % p);
    };
    F.mul = [p, at](const Element& a, const Element& b) {
        return at((a.as_atom().index * b.as_atom().index) % p);
    };
    F.neg = [p, at](const Element& a) { return at((p - a.as_atom().index) % p); };
    F.inv = [p, at](const Element& a) {
        const unsigned x = a.as_atom().index;
        if (x == 0) throw DomainError("inverse of zero");
        for (unsigned b = 1; b < p; ++b)
            if ((x * b) % p == 1) return at(b);
        throw DomainError("no inverse found");
    };
    F.zero = F.carrier.members[0];
    F.one = F.carrier.members[1];
    F.name = "gf(" + std::to_string(p) + ")";
    return F;
}

// A field is a hyperfield whose hyperaddition returns singletons.
inline Hyperfield field_as_trivial_hyperfield(const ClassicalField& F) {
    Hyperfield H;
    H.carrier = F.carrier;
    HyperOp add = HyperOp::from_rule(F.carrier, "sum", [addf = F.add](const Element& a, const Element& b) {
        return ElementSet::singleton(addf(a, b));
    });
    H.add = F.carrier.finite_carrier() ? materialize(add) : add;
    if (F.carrier.finite_carrier()) {
        ScalarOp::Table mt;
        for (const auto& a : F.carrier.members)
            for (const auto& b : F.carrier.members) mt[{a, b}] = F.mul(a, b);
        H.mul = ScalarOp::from_table(F.carrier, std::move(mt));
        for (const auto& a : F.carrier.members) {
            H.neg.table[a] = F.neg(a);
            if (a != F.zero) H.inv.table[a] = F.inv(a);
        }
    } else {
        H.mul = ScalarOp::from_rule(F.carrier, "product", F.mul);
        H.neg.fn = F.neg;
        H.neg.rule_name = "negate";
        H.inv.fn = F.inv;
        H.inv.rule_name = "reciprocal";
    }
    H.zero = F.zero;
    H.one = F.one;
    if (F.abs) H.abs.fn = F.abs;
    H.name = F.name;
    return H;
}

// Coset presentation of a field modulo a multiplicative subgroup. The labels
// name the nonzero cosets; classify sends a nonzero field element to its
// label; reps lists enough representatives per coset that every sum class
// aG + bG is realized by some pair of them (full cosets make this exact for
// finite fields; unbounded carriers must justify their lists).
struct CosetSystem {
    std::vector<std::string> labels;
    std::function<std::string(const Element&)> classify;
    std::map<std::string, std::vector<Element>> reps;
};

inline Hyperfield krasner_quotient(const ClassicalField& F, const CosetSystem& cs) {
    if (cs.labels.empty()) throw DomainError("krasner_quotient: no cosets");
    std::vector<std::string> names;
    names.push_back("0");
    for (const auto& l : cs.labels) {
        if (l == "0") throw DomainError("krasner_quotient: coset label '0' is reserved");
        names.push_back(l);
    }
    const CarrierDesc carrier = CarrierDesc::atoms(names);
    const auto by_label = [&](const std::string& l) -> const Element& {
        const Element* e = carrier.find_named(l);
        if (!e) throw DomainError("krasner_quotient: unknown label " + l);
        return *e;
    };
    const Element qzero = carrier.members[0];
    const auto class_of = [&](const Element& x) -> const Element& {
        if (x == F.zero) return qzero;
        return by_label(cs.classify(x));
    };
    const auto reps_of = [&](const Element& q) -> std::vector<Element> {
        if (q == qzero) return {F.zero};
        const auto it = cs.reps.find(q.as_atom().name);
        if (it == cs.reps.end() || it->second.empty())
            throw DomainError("krasner_quotient: no representatives for " + q.to_string());
        return it->second;
    };

    HyperOp::Table add_table;
    for (const auto& qa : carrier.members)
        for (const auto& qb : carrier.members) {
            ElementSet cell;
            for (const auto& x : reps_of(qa))
                for (const auto& y : reps_of(qb)) cell.insert(class_of(F.add(x, y)));
            add_table[{qa, qb}] = cell;
        }

    ScalarOp::Table mul_table;
    for (const auto& qa : carrier.members)
        for (const auto& qb : carrier.members) {
            std::optional<Element> prod;
            for (const auto& x : reps_of(qa))
                for (const auto& y : reps_of(qb)) {
                    const Element p = class_of(F.mul(x, y));
                    if (prod && *prod != p)
                        throw DomainError("krasner_quotient: multiplication not well-defined on cosets");
                    prod = p;
                }
            mul_table[{qa, qb}] = *prod;
        }

    Hyperfield H;
    H.carrier = carrier;
    H.add = HyperOp::from_table(carrier, std::move(add_table));
    H.mul = ScalarOp::from_table(carrier, std::move(mul_table));
    H.zero = qzero;
    H.one = class_of(F.one);
    for (const auto& q : carrier.members) {
        std::optional<Element> n, i;
        for (const auto& x : reps_of(q)) {
            const Element nx = class_of(F.neg(x));
            if (n && *n != nx) throw DomainError("krasner_quotient: negation not well-defined on cosets");
            n = nx;
            if (q != qzero) {
                const Element ix = class_of(F.inv(x));
                if (i && *i != ix) throw DomainError("krasner_quotient: inversion not well-defined on cosets");
                i = ix;
            }
        }
        H.neg.table[q] = *n;
        if (q != qzero) H.inv.table[q] = *i;
    }
    H.name = F.name + " quotient";
    return H;
}

// Finite-subgroup convenience: enumerates full cosets, which makes every
// quotient cell exact.
inline Hyperfield krasner_quotient(const ClassicalField& F, const std::vector<Element>& subgroup) {
    detail::require_finite(F.carrier, "krasner_quotient");
    if (subgroup.empty()) throw DomainError("krasner_quotient: empty subgroup");
    ElementSet G;
    for (const auto& g : subgroup) {
        F.carrier.require(g, "krasner_quotient subgroup");
        if (g == F.zero) throw DomainError("krasner_quotient: subgroup contains zero");
        G.insert(g);
    }
    if (!G.contains(F.one)) throw DomainError("krasner_quotient: subgroup lacks the identity");
    for (const auto& a : G)
        for (const auto& b : G) {
            if (!G.contains(F.mul(a, b)))
                throw DomainError("krasner_quotient: set not closed under multiplication");
        }
    for (const auto& a : G)
        if (!G.contains(F.inv(a)))
            throw DomainError("krasner_quotient: set not closed under inversion");

    // Partition nonzero elements into cosets aG, labeled by least member.
    std::map<Element, std::vector<Element>> cosets; // least member -> members
    std::map<Element, Element> leader_of;
    for (const auto& a : F.carrier.members) {
        if (a == F.zero || leader_of.count(a)) continue;
        ElementSet coset;
        for (const auto& g : G) coset.insert(F.mul(a, g));
        const Element leader = coset.least();
        for (const auto& m : coset) leader_of.emplace(m, leader);
        cosets[leader] = std::vector<Element>(coset.begin(), coset.end());
    }

    CosetSystem cs;
    for (const auto& [leader, members] : cosets) {
        cs.labels.push_back(leader.to_string());
        cs.reps[leader.to_string()] = members;
    }
    cs.classify = [leader_of](const Element& x) { return leader_of.at(x).to_string(); };
    return krasner_quotient(F, cs);
}

// ---------------------------------------------------------------------------
// Witness replay: recompute the reported law instance from the structure and
// confirm the recorded mismatch still holds.
// ---------------------------------------------------------------------------

namespace detail {

inline bool replay_add_violation(const HyperOp& add, const Violation& v,
                                 const std::map<Element, Element>* neg) {
    const auto& w = v.witness;
    if (v.axiom == "HG.assoc") {
        if (w.size() != 3) return false;
        const ElementSet lhs = extend_set_set(add, add.apply(w[0], w[1]), ElementSet::singleton(w[2]));
        const ElementSet rhs = extend_set_set(add, ElementSet::singleton(w[0]), add.apply(w[1], w[2]));
        return lhs != rhs && lhs == v.left_set && rhs == v.right_set;
    }
    if (v.axiom == "HR.add.comm") {
        if (w.size() != 2) return false;
        const ElementSet ab = add.apply(w[0], w[1]), ba = add.apply(w[1], w[0]);
        return ab != ba && ab == v.left_set && ba == v.right_set;
    }
    if (v.axiom == "HG.inv.exists" || v.axiom == "HG.inv.unique") {
        if (w.size() != 2) return false;
        ElementSet bs;
        for (const auto& b : add.carrier().members)
            if (add.apply(w[1], b).contains(w[0]) && add.apply(b, w[1]).contains(w[0])) bs.insert(b);
        return bs.size() != 1 && bs == v.left_set;
    }
    if (v.axiom == "HG.zero.exists") {
        for (const auto& z : add.carrier().members)
            if (valid_zero(add, z)) return false;
        return true;
    }
    if (v.axiom == "HG.zero.unique") {
        std::size_t n = 0;
        for (const auto& z : add.carrier().members)
            if (valid_zero(add, z)) ++n;
        return n > 1;
    }
    if (v.axiom == "HG.reversible") {
        if (w.size() != 4) return false;
        return add.apply(w[1], w[2]).contains(w[0]) && !add.apply(w[0], w[3]).contains(w[1]);
    }
    if (v.axiom == "HG.zero.identity") {
        if (w.size() != 2) return false;
        return add.apply(w[0], w[1]) != ElementSet::singleton(w[1]);
    }
    if (v.axiom == "HG.neg.involution") {
        if (w.size() != 3 || !neg) return false;
        return neg->count(w[0]) && neg->at(w[0]) == w[1] && neg->count(w[1]) &&
               neg->at(w[1]) == w[2] && w[2] != w[0];
    }
    return false;
}

} // namespace detail

inline bool replay_violation(const Hypergroup& H, const Violation& v) {
    std::map<Element, Element> neg;
    if (v.axiom == "HG.neg.involution") {
        const auto rep = check_hypergroup(H);
        neg = rep.neg;
    }
    return detail::replay_add_violation(H.add, v, &neg);
}

inline bool replay_violation(const Hyperfield& F, const Violation& v) {
    const auto& w = v.witness;
    if (v.axiom.rfind("HG.", 0) == 0 || v.axiom == "HR.add.comm") {
        Hypergroup addpart{F.carrier, F.add, F.zero, F.neg, true};
        return replay_violation(addpart, v);
    }
    if (v.axiom == "HR.mul.assoc") {
        if (w.size() != 3) return false;
        return F.mul.apply(F.mul.apply(w[0], w[1]), w[2]) != F.mul.apply(w[0], F.mul.apply(w[1], w[2]));
    }
    if (v.axiom == "HR.dist.left") {
        if (w.size() != 3) return false;
        const ElementSet l = detail::map_mul(F.mul, w[0], F.add.apply(w[1], w[2]), true);
        const ElementSet r = F.add.apply(F.mul.apply(w[0], w[1]), F.mul.apply(w[0], w[2]));
        return l != r && l == v.left_set && r == v.right_set;
    }
    if (v.axiom == "HR.dist.right") {
        if (w.size() != 3) return false;
        const ElementSet l = detail::map_mul(F.mul, w[0], F.add.apply(w[1], w[2]), false);
        const ElementSet r = F.add.apply(F.mul.apply(w[1], w[0]), F.mul.apply(w[2], w[0]));
        return l != r && l == v.left_set && r == v.right_set;
    }
    if (v.axiom == "HR.absorb.right") {
        if (w.size() != 2) return false;
        return F.mul.apply(w[0], w[1]) != w[1];
    }
    if (v.axiom == "HR.absorb.left") {
        if (w.size() != 2) return false;
        return F.mul.apply(w[0], w[1]) != w[0];
    }
    if (v.axiom == "HF.mul.comm") {
        if (w.size() != 2) return false;
        return F.mul.apply(w[0], w[1]) != F.mul.apply(w[1], w[0]);
    }
    if (v.axiom == "HF.one") {
        if (w.size() != 2) return false;
        return F.mul.apply(w[0], w[1]) != w[1] || F.mul.apply(w[1], w[0]) != w[1];
    }
    if (v.axiom == "HF.one.exists") {
        for (const auto& e : F.carrier.members) {
            bool ok = true;
            for (const auto& a : F.carrier.members)
                if (F.mul.apply(e, a) != a || F.mul.apply(a, e) != a) { ok = false; break; }
            if (ok) return false;
        }
        return true;
    }
    if (v.axiom == "HF.inv.exists") {
        if (w.size() != 2) return false;
        for (const auto& b : F.carrier.members)
            if (F.mul.apply(w[1], b) == w[0] && F.mul.apply(b, w[1]) == w[0]) return false;
        return true;
    }
    if (v.axiom == "HF.distinct") {
        Hypergroup addpart{F.carrier, F.add, F.zero, F.neg, true};
        const auto rep = check_hypergroup(addpart);
        if (!rep.zero || !F.one) return w.size() == 1;
        return *rep.zero == *F.one;
    }
    if (v.axiom == "HF.abs.zero" || v.axiom == "HF.abs.positive") {
        if (w.size() != 1 || !F.abs.defined()) return false;
        const Rational r = F.abs.apply(w[0]);
        return v.axiom == "HF.abs.zero" ? r != 0 : r <= 0;
    }
    if (v.axiom == "HF.abs.mult") {
        if (w.size() != 2 || !F.abs.defined()) return false;
        return F.abs.apply(F.mul.apply(w[0], w[1])) != F.abs.apply(w[0]) * F.abs.apply(w[1]);
    }
    return false;
}

} // namespace hyperalg
