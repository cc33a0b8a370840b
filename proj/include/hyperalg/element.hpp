#pragma once

// Carrier members and finite sets of them. An Element is a value: a named atom
// of some finite carrier (ordered by declaration), an exact rational scalar, or
// an exact rational coordinate vector. ElementSet keeps the canonical order
// (sorted, deduplicated), so equality, iteration and witness selection are
// deterministic everywhere.

#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hyperalg/errors.hpp"
#include "hyperalg/rational.hpp"

namespace hyperalg {

struct Atom {
    std::uint32_t index = 0; // declaration position inside its carrier
    std::string name;        // display only; identity is the index
};

class Element {
public:
    enum class Kind { Atom = 0, Scalar = 1, Vector = 2 };

    Element() : value_(Rational(0)) {}

    static Element atom(std::uint32_t index, std::string name) {
        Element e;
        e.value_ = Atom{index, std::move(name)};
        return e;
    }
    static Element scalar(Rational r) {
        Element e;
        e.value_ = std::move(r);
        return e;
    }
    static Element scalar(long n) { return scalar(Rational(n)); }
    static Element vector(RatVec v) {
        Element e;
        e.value_ = std::move(v);
        return e;
    }

    Kind kind() const { return static_cast<Kind>(value_.index()); }
    bool is_atom() const { return kind() == Kind::Atom; }
    bool is_scalar() const { return kind() == Kind::Scalar; }
    bool is_vector() const { return kind() == Kind::Vector; }

    const Atom& as_atom() const {
        if (!is_atom()) throw DomainError("element is not an atom: " + to_string());
        return std::get<Atom>(value_);
    }
    const Rational& as_scalar() const {
        if (!is_scalar()) throw DomainError("element is not a scalar: " + to_string());
        return std::get<Rational>(value_);
    }
    const RatVec& as_vector() const {
        if (!is_vector()) throw DomainError("element is not a vector: " + to_string());
        return std::get<RatVec>(value_);
    }

    std::string to_string() const {
        switch (kind()) {
            case Kind::Atom:   return std::get<Atom>(value_).name;
            case Kind::Scalar: return format_rational(std::get<Rational>(value_));
            case Kind::Vector: return format_vector(std::get<RatVec>(value_));
        }
        return "?";
    }

    // Total canonical order: atoms (by declaration index) < scalars < vectors.
    friend int compare(const Element& a, const Element& b) {
        if (a.value_.index() != b.value_.index())
            return a.value_.index() < b.value_.index() ? -1 : 1;
        switch (a.kind()) {
            case Kind::Atom: {
                const auto &x = std::get<Atom>(a.value_), &y = std::get<Atom>(b.value_);
                if (x.index != y.index) return x.index < y.index ? -1 : 1;
                return 0;
            }
            case Kind::Scalar:
                return compare_rational(std::get<Rational>(a.value_), std::get<Rational>(b.value_));
            case Kind::Vector:
                return compare_vec(std::get<RatVec>(a.value_), std::get<RatVec>(b.value_));
        }
        return 0;
    }

    friend bool operator==(const Element& a, const Element& b) { return compare(a, b) == 0; }
    friend bool operator!=(const Element& a, const Element& b) { return compare(a, b) != 0; }
    friend bool operator<(const Element& a, const Element& b) { return compare(a, b) < 0; }

private:
    std::variant<Atom, Rational, RatVec> value_;
};

// Finite set of elements in canonical order.
class ElementSet {
public:
    ElementSet() = default;
    ElementSet(std::initializer_list<Element> items) {
        for (const auto& e : items) insert(e);
    }

    static ElementSet singleton(Element e) {
        ElementSet s;
        s.items_.push_back(std::move(e));
        return s;
    }

    void insert(const Element& e) {
        const auto it = lower_bound(e);
        if (it == items_.end() || *it != e) items_.insert(it, e);
    }

    void unite(const ElementSet& other) {
        for (const auto& e : other.items_) insert(e);
    }

    bool contains(const Element& e) const {
        const auto it = lower_bound(e);
        return it != items_.end() && *it == e;
    }

    bool subset_of(const ElementSet& other) const {
        for (const auto& e : items_)
            if (!other.contains(e)) return false;
        return true;
    }

    bool empty() const { return items_.empty(); }
    std::size_t size() const { return items_.size(); }

    const Element& least() const {
        if (items_.empty()) throw DomainError("least() of empty set");
        return items_.front();
    }

    const std::vector<Element>& items() const { return items_; }
    auto begin() const { return items_.begin(); }
    auto end() const { return items_.end(); }

    friend bool operator==(const ElementSet& a, const ElementSet& b) { return a.items_ == b.items_; }
    friend bool operator!=(const ElementSet& a, const ElementSet& b) { return !(a == b); }

    std::string to_string() const {
        std::string out = "{";
        for (std::size_t i = 0; i < items_.size(); ++i) {
            if (i) out += ", ";
            out += items_[i].to_string();
        }
        out += '}';
        return out;
    }

private:
    std::vector<Element>::const_iterator lower_bound(const Element& e) const {
        std::size_t lo = 0, hi = items_.size();
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (compare(items_[mid], e) < 0)
                lo = mid + 1;
            else
                hi = mid;
        }
        return items_.begin() + static_cast<std::ptrdiff_t>(lo);
    }
    std::vector<Element>::iterator lower_bound(const Element& e) {
        const auto cit = static_cast<const ElementSet*>(this)->lower_bound(e);
        return items_.begin() + (cit - items_.cbegin());
    }

    std::vector<Element> items_;
};

// What a structure's elements range over. Finite carriers list their members in
// canonical order; the two unbounded carriers are handled pointwise by rules.
struct CarrierDesc {
    enum class Kind { FiniteList, AllScalars, AllVectors };

    Kind kind = Kind::FiniteList;
    std::vector<Element> members; // FiniteList only, canonical order
    std::size_t dimension = 0;    // AllVectors only

    static CarrierDesc atoms(const std::vector<std::string>& names) {
        CarrierDesc c;
        c.kind = Kind::FiniteList;
        c.members.reserve(names.size());
        for (std::uint32_t i = 0; i < names.size(); ++i)
            c.members.push_back(Element::atom(i, names[i]));
        return c;
    }

    static CarrierDesc finite(std::vector<Element> members) {
        CarrierDesc c;
        c.kind = Kind::FiniteList;
        ElementSet dedup;
        for (auto& e : members) dedup.insert(e);
        c.members.assign(dedup.begin(), dedup.end());
        return c;
    }

    static CarrierDesc rationals() {
        CarrierDesc c;
        c.kind = Kind::AllScalars;
        return c;
    }

    static CarrierDesc rational_vectors(std::size_t dim) {
        CarrierDesc c;
        c.kind = Kind::AllVectors;
        c.dimension = dim;
        return c;
    }

    bool finite_carrier() const { return kind == Kind::FiniteList; }
    std::size_t size() const { return members.size(); }

    bool contains(const Element& e) const {
        switch (kind) {
            case Kind::FiniteList:
                for (const auto& m : members)
                    if (m == e) return true;
                return false;
            case Kind::AllScalars:
                return e.is_scalar();
            case Kind::AllVectors:
                return e.is_vector() && e.as_vector().size() == dimension;
        }
        return false;
    }

    void require(const Element& e, const char* where) const {
        if (!contains(e))
            throw DomainError(std::string(where) + ": element outside carrier: " + e.to_string());
    }

    // Atom lookup by display name, for parsers and designated constants.
    const Element* find_named(const std::string& name) const {
        for (const auto& m : members)
            if (m.is_atom() && m.as_atom().name == name) return &m;
        return nullptr;
    }
};

} // namespace hyperalg
