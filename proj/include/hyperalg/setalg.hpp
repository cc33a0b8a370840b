#pragma once

// Set-valued binary operations and their pointwise extensions:
//   x # y        -> hyper_apply        (one cell, always a nonempty subset)
//   x # B        -> extend_point_set   (union of x # b over b in B)
//   A # B        -> extend_set_set     (union over both arguments)
// Operations are backed either by explicit tables on finite carriers or by
// rules; rule-backed results still get carrier-validated on every call, which
// is what turns "finite carrier not closed under the rule" into a hard error.

#include <functional>
#include <map>
#include <string>
#include <utility>

#include "hyperalg/element.hpp"
#include "hyperalg/errors.hpp"

namespace hyperalg {

class HyperOp {
public:
    using Table = std::map<std::pair<Element, Element>, ElementSet>;
    using Rule  = std::function<ElementSet(const Element&, const Element&)>;

    static HyperOp from_table(CarrierDesc carrier, Table table) {
        if (!carrier.finite_carrier())
            throw DomainError("hyperoperation table requires a finite carrier");
        HyperOp op;
        op.carrier_ = std::move(carrier);
        op.table_ = std::move(table);
        op.rule_name_ = "table";
        for (const auto& a : op.carrier_.members)
            for (const auto& b : op.carrier_.members) {
                const auto it = op.table_.find({a, b});
                if (it == op.table_.end())
                    throw MalformedStructureError("missing table cell " + a.to_string() + " # " + b.to_string());
                op.validate_result(a, b, it->second);
            }
        return op;
    }

    static HyperOp from_rule(CarrierDesc carrier, std::string rule_name, Rule rule) {
        HyperOp op;
        op.carrier_ = std::move(carrier);
        op.rule_ = std::move(rule);
        op.rule_name_ = std::move(rule_name);
        return op;
    }

    const CarrierDesc& carrier() const { return carrier_; }
    bool table_backed() const { return !table_.empty() || !rule_; }
    const Table& table() const { return table_; }
    const std::string& rule_name() const { return rule_name_; }

    ElementSet apply(const Element& x, const Element& y) const {
        carrier_.require(x, "hyper_apply");
        carrier_.require(y, "hyper_apply");
        if (!table_.empty()) {
            const auto it = table_.find({x, y});
            if (it == table_.end())
                throw MalformedStructureError("missing table cell " + x.to_string() + " # " + y.to_string());
            return it->second;
        }
        if (!rule_) throw MalformedStructureError("hyperoperation has neither table nor rule");
        ElementSet out = rule_(x, y);
        validate_result(x, y, out);
        return out;
    }

    bool commutative_on_finite() const {
        if (!carrier_.finite_carrier()) return false;
        for (const auto& a : carrier_.members)
            for (const auto& b : carrier_.members)
                if (apply(a, b) != apply(b, a)) return false;
        return true;
    }

private:
    void validate_result(const Element& x, const Element& y, const ElementSet& r) const {
        if (r.empty())
            throw MalformedStructureError("empty result for " + x.to_string() + " # " + y.to_string());
        for (const auto& e : r)
            if (!carrier_.contains(e))
                throw MalformedStructureError("result of " + x.to_string() + " # " + y.to_string() +
                                              " leaves the carrier: " + e.to_string());
    }

    CarrierDesc carrier_;
    Table table_;
    Rule rule_;
    std::string rule_name_;
};

inline ElementSet hyper_apply(const HyperOp& op, const Element& x, const Element& y) {
    return op.apply(x, y);
}

inline ElementSet extend_point_set(const HyperOp& op, const Element& x, const ElementSet& B) {
    if (B.empty()) throw DomainError("extend_point_set: empty right argument");
    ElementSet out;
    for (const auto& b : B) out.unite(op.apply(x, b));
    return out;
}

inline ElementSet extend_set_set(const HyperOp& op, const ElementSet& A, const ElementSet& B) {
    if (A.empty() || B.empty()) throw DomainError("extend_set_set: empty argument");
    ElementSet out;
    for (const auto& a : A)
        for (const auto& b : B) out.unite(op.apply(a, b));
    return out;
}

// Snapshot a rule-backed operation into an explicit table (finite carriers only).
inline HyperOp materialize(const HyperOp& op) {
    if (!op.carrier().finite_carrier())
        throw DomainError("materialize requires a finite carrier");
    HyperOp::Table table;
    for (const auto& a : op.carrier().members)
        for (const auto& b : op.carrier().members)
            table[{a, b}] = op.apply(a, b);
    return HyperOp::from_table(op.carrier(), std::move(table));
}

// Single-valued binary operation (multiplication of scalars).
struct ScalarOp {
    using Table = std::map<std::pair<Element, Element>, Element>;
    using Fn    = std::function<Element(const Element&, const Element&)>;

    CarrierDesc carrier;
    Table table;          // finite carriers
    Fn fn;                // rule-backed
    std::string rule_name;

    static ScalarOp from_table(CarrierDesc c, Table t) {
        ScalarOp op;
        op.carrier = std::move(c);
        op.table = std::move(t);
        op.rule_name = "table";
        for (const auto& a : op.carrier.members)
            for (const auto& b : op.carrier.members) {
                const auto it = op.table.find({a, b});
                if (it == op.table.end())
                    throw MalformedStructureError("missing table cell " + a.to_string() + " . " + b.to_string());
                if (!op.carrier.contains(it->second))
                    throw MalformedStructureError("product leaves the carrier: " + it->second.to_string());
            }
        return op;
    }

    static ScalarOp from_rule(CarrierDesc c, std::string name, Fn f) {
        ScalarOp op;
        op.carrier = std::move(c);
        op.fn = std::move(f);
        op.rule_name = std::move(name);
        return op;
    }

    Element apply(const Element& x, const Element& y) const {
        carrier.require(x, "scalar op");
        carrier.require(y, "scalar op");
        if (!table.empty()) {
            const auto it = table.find({x, y});
            if (it == table.end())
                throw MalformedStructureError("missing table cell " + x.to_string() + " . " + y.to_string());
            return it->second;
        }
        if (!fn) throw MalformedStructureError("scalar operation has neither table nor rule");
        Element out = fn(x, y);
        carrier.require(out, "scalar op result");
        return out;
    }
};

// Single-valued unary map (negation, multiplicative inverse, absolute value target).
struct UnaryMap {
    std::map<Element, Element> table;
    std::function<Element(const Element&)> fn;
    std::string rule_name;

    bool defined() const { return !table.empty() || static_cast<bool>(fn); }
    bool defined_at(const Element& x) const {
        if (table.count(x)) return true;
        return static_cast<bool>(fn);
    }

    Element apply(const Element& x) const {
        const auto it = table.find(x);
        if (it != table.end()) return it->second;
        if (fn) return fn(x);
        throw DomainError("unary map undefined at " + x.to_string());
    }
};

} // namespace hyperalg
