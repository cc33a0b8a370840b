#pragma once

// Inner products and norms on hypervector spaces, all in exact rational
// arithmetic. Set-valued expressions are compared through their suprema,
// which are honest maxima because every hypersum here is a finite set, and
// induced-norm inequalities are checked in squared form so irrational square
// roots never materialize.

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hyperalg/element.hpp"
#include "hyperalg/errors.hpp"
#include "hyperalg/hyperspace.hpp"
#include "hyperalg/rational.hpp"
#include "hyperalg/setalg.hpp"
#include "hyperalg/violation.hpp"

namespace hyperalg {

// V x V -> Q. Table entries override the rule, which makes single-cell
// mutations (for failure tests) one-line edits.
struct InnerProduct {
    using Fn = std::function<Rational(const Element&, const Element&)>;

    CarrierDesc vectors;
    std::map<std::pair<Element, Element>, Rational> table;
    Fn fn;
    std::string rule_name;

    static InnerProduct from_rule(CarrierDesc vectors, std::string name, Fn f) {
        InnerProduct ip;
        ip.vectors = std::move(vectors);
        ip.fn = std::move(f);
        ip.rule_name = std::move(name);
        return ip;
    }

    static InnerProduct from_table(CarrierDesc vectors,
                                   std::map<std::pair<Element, Element>, Rational> t) {
        InnerProduct ip;
        ip.vectors = std::move(vectors);
        ip.table = std::move(t);
        ip.rule_name = "table";
        return ip;
    }

    Rational apply(const Element& a, const Element& b) const {
        vectors.require(a, "inner product");
        vectors.require(b, "inner product");
        const auto it = table.find({a, b});
        if (it != table.end()) return it->second;
        if (fn) return fn(a, b);
        throw MalformedStructureError("inner product undefined at (" + a.to_string() + ", " +
                                      b.to_string() + ")");
    }
};

// V -> Q, same table-over-rule layering.
struct Norm {
    using Fn = std::function<Rational(const Element&)>;

    CarrierDesc vectors;
    std::map<Element, Rational> table;
    Fn fn;
    std::string rule_name;

    static Norm from_rule(CarrierDesc vectors, std::string name, Fn f) {
        Norm n;
        n.vectors = std::move(vectors);
        n.fn = std::move(f);
        n.rule_name = std::move(name);
        return n;
    }

    static Norm from_table(CarrierDesc vectors, std::map<Element, Rational> t) {
        Norm n;
        n.vectors = std::move(vectors);
        n.table = std::move(t);
        n.rule_name = "table";
        return n;
    }

    Rational apply(const Element& a) const {
        vectors.require(a, "norm");
        const auto it = table.find(a);
        if (it != table.end()) return it->second;
        if (fn) return fn(a);
        throw MalformedStructureError("norm undefined at " + a.to_string());
    }
};

// Exact maximum of a finite nonempty value set, with the element attaining it
// (ties resolved toward the canonically least element).
struct SupValue {
    Rational value;
    Element at;
};

inline InnerProduct dot_inner(std::size_t dim) {
    return InnerProduct::from_rule(CarrierDesc::rational_vectors(dim), "dot",
                                   [](const Element& a, const Element& b) {
                                       return vec_dot(a.as_vector(), b.as_vector());
                                   });
}

inline Norm max_norm(std::size_t dim) {
    return Norm::from_rule(CarrierDesc::rational_vectors(dim), "max", [](const Element& a) {
        Rational m(0);
        for (const auto& c : a.as_vector()) {
            const Rational v = rational_abs(c);
            if (v > m) m = v;
        }
        return m;
    });
}

// sup of <x, gamma> over x in S.
inline SupValue sup_inner_left(const InnerProduct& ip, const ElementSet& S, const Element& gamma) {
    if (S.empty()) throw DomainError("sup over empty set");
    std::optional<SupValue> best;
    for (const auto& x : S) {
        const Rational v = ip.apply(x, gamma);
        if (!best || v > best->value) best = SupValue{v, x};
    }
    return *best;
}

// sup of <alpha, y> over y in S.
inline SupValue sup_inner_right(const InnerProduct& ip, const Element& alpha, const ElementSet& S) {
    if (S.empty()) throw DomainError("sup over empty set");
    std::optional<SupValue> best;
    for (const auto& y : S) {
        const Rational v = ip.apply(alpha, y);
        if (!best || v > best->value) best = SupValue{v, y};
    }
    return *best;
}

// sup of <x, x> over x in S (squared induced norm of a set).
inline SupValue sup_inner_square(const InnerProduct& ip, const ElementSet& S) {
    if (S.empty()) throw DomainError("sup over empty set");
    std::optional<SupValue> best;
    for (const auto& x : S) {
        const Rational v = ip.apply(x, x);
        if (!best || v > best->value) best = SupValue{v, x};
    }
    return *best;
}

// sup of ||x|| over x in S.
inline SupValue sup_norm(const Norm& n, const ElementSet& S) {
    if (S.empty()) throw DomainError("sup over empty set");
    std::optional<SupValue> best;
    for (const auto& x : S) {
        const Rational v = n.apply(x);
        if (!best || v > best->value) best = SupValue{v, x};
    }
    return *best;
}

namespace detail {

inline void require_rational_scalars(const HyperVectorSpace& W, const char* who) {
    if (W.scalars.carrier.kind != CarrierDesc::Kind::AllScalars)
        throw PreconditionError(std::string(who) + " requires the rational scalar carrier");
}

} // namespace detail

// Norm axioms on the sample grids:
//   NORM.positive   ||v|| >= 0
//   NORM.zero       ||v|| = 0  exactly when  v = theta
//   NORM.triangle   sup ||u # v||  <=  ||u|| + ||v||
//   NORM.homog      sup ||a * v||  <=  |a| ||v||
inline Violations check_norm_axioms(const HyperVectorSpace& W, const Norm& norm,
                                    const std::vector<Element>& scalar_samples = {},
                                    const std::vector<Element>& vector_samples = {},
                                    const CheckOptions& opts = {}) {
    if (!W.scalars.abs.defined())
        throw PreconditionError("check_norm_axioms requires an abs map on the scalars");
    const std::vector<Element> S = detail::default_samples(W.scalars.carrier, scalar_samples,
                                                           "check_norm_axioms");
    const std::vector<Element> V = detail::default_samples(W.star.vectors, vector_samples,
                                                           "check_norm_axioms");
    const Element theta = W.theta();
    Violations out;
    ViolationSink sink(opts);

    for (const auto& v : V) {
        const Rational nv = norm.apply(v);
        if (sink.open("NORM.positive") && nv < 0)
            sink.report(out, {"NORM.positive", {v}, {}, {}, nv, Rational(0), "negative norm"});
        if (sink.open("NORM.zero")) {
            if (v == theta && nv != 0)
                sink.report(out, {"NORM.zero", {v}, {}, {}, nv, Rational(0), "||theta|| is not 0"});
            if (v != theta && nv == 0)
                sink.report(out, {"NORM.zero", {v}, {}, {}, nv, Rational(0),
                                  "nonzero vector with norm 0"});
        }
    }
    for (const auto& u : V)
        for (const auto& v : V) {
            if (!sink.open("NORM.triangle")) break;
            const SupValue sup = sup_norm(norm, W.vectors.add.apply(u, v));
            const Rational bound = norm.apply(u) + norm.apply(v);
            if (sup.value > bound)
                sink.report(out, {"NORM.triangle", {u, v, sup.at}, {}, {}, sup.value, bound,
                                  "sup ||u # v|| exceeds ||u|| + ||v||"});
        }
    for (const auto& a : S)
        for (const auto& v : V) {
            if (!sink.open("NORM.homog")) break;
            const SupValue sup = sup_norm(norm, W.star.apply(a, v));
            const Rational bound = W.scalars.abs.apply(a) * norm.apply(v);
            if (sup.value > bound)
                sink.report(out, {"NORM.homog", {a, v, sup.at}, {}, {}, sup.value, bound,
                                  "sup ||a * v|| exceeds |a| ||v||"});
        }
    return out;
}

// Inner-product axioms on the sample grids:
//   IP.positive    <v, v> > 0 for v != theta
//   IP.zero        <theta, theta> = 0
//   IP.sym         <u, v> = <v, u>
//   IP.add.sup     sup <u # v, w>  =  <u, w> + <v, w>
//   IP.scalar.sup  sup <a * v, w>  =  a <v, w>
inline Violations check_inner_axioms(const HyperVectorSpace& W, const InnerProduct& ip,
                                     const std::vector<Element>& scalar_samples = {},
                                     const std::vector<Element>& vector_samples = {},
                                     const CheckOptions& opts = {}) {
    detail::require_rational_scalars(W, "check_inner_axioms");
    const std::vector<Element> S = detail::default_samples(W.scalars.carrier, scalar_samples,
                                                           "check_inner_axioms");
    const std::vector<Element> V = detail::default_samples(W.star.vectors, vector_samples,
                                                           "check_inner_axioms");
    const Element theta = W.theta();
    Violations out;
    ViolationSink sink(opts);

    for (const auto& v : V) {
        const Rational vv = ip.apply(v, v);
        if (sink.open("IP.positive") && v != theta && vv <= 0)
            sink.report(out, {"IP.positive", {v}, {}, {}, vv, Rational(0),
                              "<v, v> not positive for nonzero v"});
        if (sink.open("IP.zero") && v == theta && vv != 0)
            sink.report(out, {"IP.zero", {v}, {}, {}, vv, Rational(0), "<theta, theta> is not 0"});
    }
    for (const auto& u : V)
        for (const auto& v : V) {
            if (!sink.open("IP.sym")) break;
            const Rational uv = ip.apply(u, v), vu = ip.apply(v, u);
            if (uv != vu)
                sink.report(out, {"IP.sym", {u, v}, {}, {}, uv, vu, "<u, v> differs from <v, u>"});
        }
    for (const auto& u : V)
        for (const auto& v : V)
            for (const auto& w : V) {
                if (!sink.open("IP.add.sup")) break;
                const SupValue sup = sup_inner_left(ip, W.vectors.add.apply(u, v), w);
                const Rational expect = ip.apply(u, w) + ip.apply(v, w);
                if (sup.value != expect)
                    sink.report(out, {"IP.add.sup", {u, v, w, sup.at}, {}, {}, sup.value, expect,
                                      "sup <u # v, w> differs from <u, w> + <v, w>"});
            }
    for (const auto& a : S)
        for (const auto& v : V)
            for (const auto& w : V) {
                if (!sink.open("IP.scalar.sup")) break;
                const SupValue sup = sup_inner_left(ip, W.star.apply(a, v), w);
                const Rational expect = a.as_scalar() * ip.apply(v, w);
                if (sup.value != expect)
                    sink.report(out, {"IP.scalar.sup", {a, v, w, sup.at}, {}, {}, sup.value, expect,
                                      "sup <a * v, w> differs from a <v, w>"});
            }
    return out;
}

// Right-slot linearity and vanishing against theta:
//   IP.add.right     sup <u, v # w>  =  <u, v> + <u, w>
//   IP.scalar.right  sup <u, a * v>  =  a <u, v>
//   IP.zero.vector   <v, theta> = <theta, v> = 0
inline Violations check_inner_right_linearity(const HyperVectorSpace& W, const InnerProduct& ip,
                                              const std::vector<Element>& scalar_samples = {},
                                              const std::vector<Element>& vector_samples = {},
                                              const CheckOptions& opts = {}) {
    detail::require_rational_scalars(W, "check_inner_right_linearity");
    const std::vector<Element> S = detail::default_samples(W.scalars.carrier, scalar_samples,
                                                           "check_inner_right_linearity");
    const std::vector<Element> V = detail::default_samples(W.star.vectors, vector_samples,
                                                           "check_inner_right_linearity");
    const Element theta = W.theta();
    Violations out;
    ViolationSink sink(opts);

    for (const auto& u : V)
        for (const auto& v : V)
            for (const auto& w : V) {
                if (!sink.open("IP.add.right")) break;
                const SupValue sup = sup_inner_right(ip, u, W.vectors.add.apply(v, w));
                const Rational expect = ip.apply(u, v) + ip.apply(u, w);
                if (sup.value != expect)
                    sink.report(out, {"IP.add.right", {u, v, w, sup.at}, {}, {}, sup.value, expect,
                                      "sup <u, v # w> differs from <u, v> + <u, w>"});
            }
    for (const auto& a : S)
        for (const auto& u : V)
            for (const auto& v : V) {
                if (!sink.open("IP.scalar.right")) break;
                const SupValue sup = sup_inner_right(ip, u, W.star.apply(a, v));
                const Rational expect = a.as_scalar() * ip.apply(u, v);
                if (sup.value != expect)
                    sink.report(out, {"IP.scalar.right", {a, u, v, sup.at}, {}, {}, sup.value,
                                      expect, "sup <u, a * v> differs from a <u, v>"});
            }
    for (const auto& v : V) {
        if (!sink.open("IP.zero.vector")) break;
        const Rational l = ip.apply(v, theta), r = ip.apply(theta, v);
        if (l != 0 || r != 0)
            sink.report(out, {"IP.zero.vector", {v}, {}, {}, l, r,
                              "<v, theta> or <theta, v> is not 0"});
    }
    return out;
}

// Four-term expansion of sup <u # a*v, w # b*x>: the enumerated supremum over
// both hypersums against the closed formula <u,w> + a<v,w> + b<u,x> + ab<v,x>.
struct BilinearExpansion {
    Rational enumerated;
    Element at_left, at_right; // attaining pair
    Rational formula;
    bool agrees = false;
};

inline BilinearExpansion bilinear_expand(const HyperVectorSpace& W, const InnerProduct& ip,
                                         const Element& u, const Element& a, const Element& v,
                                         const Element& w, const Element& b, const Element& x) {
    detail::require_rational_scalars(W, "bilinear_expand");
    const ElementSet left = extend_point_set(W.vectors.add, u, W.star.apply(a, v));
    const ElementSet right = extend_point_set(W.vectors.add, w, W.star.apply(b, x));
    std::optional<BilinearExpansion> best;
    for (const auto& p : left)
        for (const auto& q : right) {
            const Rational val = ip.apply(p, q);
            if (!best || val > best->enumerated) {
                BilinearExpansion e;
                e.enumerated = val;
                e.at_left = p;
                e.at_right = q;
                best = e;
            }
        }
    const Rational as = a.as_scalar(), bs = b.as_scalar();
    best->formula = ip.apply(u, w) + as * ip.apply(v, w) + bs * ip.apply(u, x) +
                    as * bs * ip.apply(v, x);
    best->agrees = (best->enumerated == best->formula);
    return *best;
}

// ||v|| = sqrt(<v, v>), held as the exact square. exact_value() yields the
// root only when it is rational.
struct InducedNorm {
    Rational squared;
    std::optional<Rational> exact_value() const { return exact_rational_sqrt(squared); }
};

inline InducedNorm induced_norm(const InnerProduct& ip, const Element& v) {
    const Rational sq = ip.apply(v, v);
    if (sq < 0)
        throw MalformedStructureError("induced norm: <v, v> is negative at " + v.to_string());
    return InducedNorm{sq};
}

// CS.ineq: <u, v>^2 <= <u, u> <v, v> on all sample pairs.
inline Violations check_cauchy_schwarz(const InnerProduct& ip,
                                       const std::vector<Element>& vector_samples,
                                       const CheckOptions& opts = {}) {
    Violations out;
    ViolationSink sink(opts);
    for (const auto& u : vector_samples)
        for (const auto& v : vector_samples) {
            if (!sink.open("CS.ineq")) break;
            const Rational uv = ip.apply(u, v);
            const Rational lhs = uv * uv;
            const Rational rhs = ip.apply(u, u) * ip.apply(v, v);
            if (lhs > rhs)
                sink.report(out, {"CS.ineq", {u, v}, {}, {}, lhs, rhs,
                                  "<u, v>^2 exceeds <u, u> <v, v>"});
        }
    return out;
}

namespace detail {

// sqrt comparison without roots: L <= A + B + 2 sqrt(A B), all nonnegative,
// holds iff L - A - B <= 0 or (L - A - B)^2 <= 4 A B.
inline bool squared_triangle_holds(const Rational& L, const Rational& A, const Rational& B) {
    const Rational d = L - A - B;
    if (d <= 0) return true;
    return d * d <= 4 * A * B;
}

} // namespace detail

// The induced norm satisfies the norm axioms, compared on squares:
//   INORM.positive  <v, v> >= 0
//   INORM.zero      <v, v> = 0 exactly when v = theta
//   INORM.triangle  sup <x, x> over x in u # v  <=  (||u|| + ||v||)^2
//   INORM.homog     sup <x, x> over x in a * v  <=  a^2 <v, v>
inline Violations check_induced_norm(const HyperVectorSpace& W, const InnerProduct& ip,
                                     const std::vector<Element>& scalar_samples = {},
                                     const std::vector<Element>& vector_samples = {},
                                     const CheckOptions& opts = {}) {
    detail::require_rational_scalars(W, "check_induced_norm");
    const std::vector<Element> S = detail::default_samples(W.scalars.carrier, scalar_samples,
                                                           "check_induced_norm");
    const std::vector<Element> V = detail::default_samples(W.star.vectors, vector_samples,
                                                           "check_induced_norm");
    const Element theta = W.theta();
    Violations out;
    ViolationSink sink(opts);

    for (const auto& v : V) {
        const Rational vv = ip.apply(v, v);
        if (sink.open("INORM.positive") && vv < 0)
            sink.report(out, {"INORM.positive", {v}, {}, {}, vv, Rational(0),
                              "negative squared norm"});
        if (sink.open("INORM.zero")) {
            if (v == theta && vv != 0)
                sink.report(out, {"INORM.zero", {v}, {}, {}, vv, Rational(0),
                                  "||theta||^2 is not 0"});
            if (v != theta && vv == 0)
                sink.report(out, {"INORM.zero", {v}, {}, {}, vv, Rational(0),
                                  "nonzero vector with zero squared norm"});
        }
    }
    for (const auto& u : V)
        for (const auto& v : V) {
            if (!sink.open("INORM.triangle")) break;
            const Rational A = ip.apply(u, u), B = ip.apply(v, v);
            if (A < 0 || B < 0) continue; // INORM.positive already reported
            const SupValue sup = sup_inner_square(ip, W.vectors.add.apply(u, v));
            if (!detail::squared_triangle_holds(sup.value, A, B))
                sink.report(out, {"INORM.triangle", {u, v, sup.at}, {}, {}, sup.value, A + B,
                                  "sup <x, x> over u # v exceeds (||u|| + ||v||)^2"});
        }
    for (const auto& a : S)
        for (const auto& v : V) {
            if (!sink.open("INORM.homog")) break;
            const SupValue sup = sup_inner_square(ip, W.star.apply(a, v));
            const Rational bound = a.as_scalar() * a.as_scalar() * ip.apply(v, v);
            if (sup.value > bound)
                sink.report(out, {"INORM.homog", {a, v, sup.at}, {}, {}, sup.value, bound,
                                  "sup <x, x> over a * v exceeds a^2 <v, v>"});
        }
    return out;
}

// PAR.ineq: sup ||u # v||^2 + sup ||u # (-v)||^2 <= 2 ||u||^2 + 2 ||v||^2.
inline Violations check_parallelogram(const HyperVectorSpace& W, const InnerProduct& ip,
                                      const std::vector<Element>& vector_samples,
                                      const CheckOptions& opts = {}) {
    Violations out;
    ViolationSink sink(opts);
    for (const auto& u : vector_samples)
        for (const auto& v : vector_samples) {
            if (!sink.open("PAR.ineq")) break;
            const Rational plus = sup_inner_square(ip, W.vectors.add.apply(u, v)).value;
            const Rational minus = sup_inner_square(ip, W.vectors.add.apply(u, W.vector_neg(v))).value;
            const Rational bound = 2 * (ip.apply(u, u) + ip.apply(v, v));
            if (plus + minus > bound)
                sink.report(out, {"PAR.ineq", {u, v}, {}, {}, plus + minus, bound,
                                  "parallelogram sum exceeds 2||u||^2 + 2||v||^2"});
        }
    return out;
}

// Pairwise orthogonality; orthonormal additionally pins every <v, v> to 1.
inline bool is_orthogonal_set(const InnerProduct& ip, const std::vector<Element>& S) {
    if (S.empty()) throw DomainError("is_orthogonal_set: empty set");
    for (std::size_t i = 0; i < S.size(); ++i)
        for (std::size_t j = i + 1; j < S.size(); ++j)
            if (ip.apply(S[i], S[j]) != 0 || ip.apply(S[j], S[i]) != 0) return false;
    return true;
}

inline bool is_orthonormal_set(const InnerProduct& ip, const std::vector<Element>& S) {
    if (!is_orthogonal_set(ip, S)) return false;
    for (const auto& v : S)
        if (ip.apply(v, v) != 1) return false;
    return true;
}

// Orthogonal families of nonzero vectors must be weakly linearly independent.
// A counterexample is reported as ORTH.weak_indep, with the offending hypersum
// on the left and the matching 0 * P set on the right.
inline Violations check_orthogonal_weak_independence(const HyperVectorSpace& W,
                                                     const InnerProduct& ip,
                                                     const std::vector<Element>& S,
                                                     const CoefficientPool& pool,
                                                     const VectorUniverse& universe,
                                                     const CheckOptions& opts = {}) {
    if (S.empty()) throw PreconditionError("orthogonal weak independence: empty set");
    const Element theta = W.theta();
    for (const auto& v : S)
        if (v == theta)
            throw PreconditionError("orthogonal weak independence: theta is not allowed in S");
    if (!is_orthogonal_set(ip, S))
        throw PreconditionError("orthogonal weak independence: set is not orthogonal");

    Violations out;
    const WeakIndependenceVerdict verdict = is_weak_linearly_independent(W, S, pool, universe, opts);
    if (!verdict.weakly_independent) {
        ElementSet sum = linear_combination(W, verdict.coefficients, verdict.subset);
        ElementSet zp;
        for (const auto& p : verdict.P) zp.unite(W.star.apply(W.scalars.zero_or_throw(), p));
        std::string detail = "coefficients (";
        for (std::size_t i = 0; i < verdict.coefficients.size(); ++i)
            detail += (i ? ", " : "") + verdict.coefficients[i].to_string();
        detail += ") over a subset reproduce a 0 * P set";
        out.push_back({"ORTH.weak_indep", verdict.subset, sum, zp, {}, {}, detail});
    }
    return out;
}

// lambda_i = <alpha, v_i> / <v_i, v_i> for an orthogonal family.
inline RatVec fourier_coefficients(const InnerProduct& ip, const Element& alpha,
                                   const std::vector<Element>& S) {
    if (S.empty()) throw DomainError("fourier_coefficients: empty family");
    RatVec out;
    for (const auto& v : S) {
        const Rational denom = ip.apply(v, v);
        if (denom == 0)
            throw DomainError("fourier_coefficients: <v, v> = 0 at " + v.to_string());
        out.push_back(ip.apply(alpha, v) / denom);
    }
    return out;
}

struct GramSchmidtStep {
    std::size_t index = 0;             // 1-based position of the produced vector
    RatVec coefficients;               // projection coefficients against v_1..v_{k-1}
    ElementSet candidates;             // the candidate set C_k
    Element chosen;
};

struct GramSchmidtResult {
    std::vector<Element> vectors;
    std::vector<GramSchmidtStep> steps;
};

// Set-valued orthogonalization. v_1 = w_1; afterwards the correction set is
// the hypersum of the projections, C_k = {w_k} # (-T), and v_k is the
// canonically least candidate with <v, v> != 0. Exhausting the candidates
// means the input family was not linearly independent.
inline GramSchmidtResult gram_schmidt(const HyperVectorSpace& W, const InnerProduct& ip,
                                      const std::vector<Element>& inputs) {
    detail::require_rational_scalars(W, "gram_schmidt");
    if (inputs.empty()) throw DomainError("gram_schmidt: empty input");
    for (const auto& w : inputs) W.star.vectors.require(w, "gram_schmidt");

    GramSchmidtResult res;
    for (std::size_t k = 0; k < inputs.size(); ++k) {
        GramSchmidtStep step;
        step.index = k + 1;
        ElementSet candidates;
        if (k == 0) {
            candidates = ElementSet::singleton(inputs[0]);
        } else {
            std::vector<Element> coeffs;
            for (const auto& v : res.vectors) {
                const Rational lam = ip.apply(inputs[k], v) / ip.apply(v, v);
                step.coefficients.push_back(lam);
                coeffs.push_back(Element::scalar(lam));
            }
            const ElementSet T = linear_combination(W, coeffs, res.vectors);
            for (const auto& t : T)
                candidates.unite(W.vectors.add.apply(inputs[k], W.vector_neg(t)));
        }
        step.candidates = candidates;
        std::optional<Element> chosen;
        for (const auto& c : candidates)
            if (ip.apply(c, c) != 0) { chosen = c; break; }
        if (!chosen) throw DependentInputError("input not linearly independent");
        step.chosen = *chosen;
        res.vectors.push_back(*chosen);
        res.steps.push_back(std::move(step));
    }
    return res;
}

// SPAN.agree: every probe is pool-reachable over S exactly when it is
// pool-reachable over S2 (typically the Gram-Schmidt output for S).
inline Violations check_span_agreement(const HyperVectorSpace& W, const std::vector<Element>& S,
                                       const std::vector<Element>& S2,
                                       const CoefficientPool& pool,
                                       const std::vector<Element>& probes,
                                       const CheckOptions& opts = {}) {
    const std::vector<Element> a = detail::dedup_vectors(W, S, "check_span_agreement");
    const std::vector<Element> b = detail::dedup_vectors(W, S2, "check_span_agreement");
    Violations out;
    ViolationSink sink(opts);
    for (const auto& probe : probes) {
        if (!sink.open("SPAN.agree")) break;
        W.star.vectors.require(probe, "check_span_agreement probe");
        const bool ra = detail::pool_reachable(W, a, pool, probe);
        const bool rb = detail::pool_reachable(W, b, pool, probe);
        if (ra != rb)
            sink.report(out, {"SPAN.agree", {probe}, {}, {}, {}, {},
                              std::string("probe reachable over ") + (ra ? "S only" : "S2 only")});
    }
    return out;
}

} // namespace hyperalg
