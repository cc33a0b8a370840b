#pragma once

// Structure files: the line-oriented text format the CLI reads and writes.
//
//   # comments run to end of line; blank lines separate nothing.
//   carrier = 0 1            finite scalar carrier, atom names in order
//   carrier = rationals      the rational field with built-in operations
//   zero = 0                 designated constants (finite carriers)
//   one = 1
//   hyperadd                 section of rows "a + b = {x, y}"
//   mul                      section of rows "a * b = c"
//   neg / inv                sections of rows "a = b"
//   abs                      section of rows "a = p/q"
//   vectors = rational 2     the rational vector family of that dimension
//   vectors = (0, 0) (1, 0)  finite vector carrier (explicit literals)
//   theta = (0, 0)           designated vector zero (finite vector carriers)
//   star = scale             built-in actions: scale | cone | scale-keep
//   star                     section of rows "a * (x, y) = {(u, v), …}"
//   inner = dot              built-in dot product; explicit rows may override:
//   inner                    section of rows "(x, y) (u, v) = p/q"
//   norm = max               built-in max norm, same override layering
//   norm                     section of rows "(x, y) = p/q"
//   pool = 0 1 -1 1/2        scalar sample list
//   universe = (0,0) (1,0)   vector sample lists
//   probes = (2, 3)
//   orthogonal = (1,0) (0,1)
//   gs = (1, 1) (1, 0)       orthogonalization input list
//
// Rationals are written p/q, vectors "(p/q, …)". Parsing either succeeds or
// raises ParseError with the line and column; a parsed bundle serializes back
// to a canonical text whose reparse is identical.

#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hyperalg/element.hpp"
#include "hyperalg/errors.hpp"
#include "hyperalg/fixtures.hpp"
#include "hyperalg/hyperspace.hpp"
#include "hyperalg/hyperstructures.hpp"
#include "hyperalg/inner.hpp"
#include "hyperalg/setalg.hpp"

namespace hyperalg {

// Everything one file can declare. Absent parts stay disengaged; accessors
// throw DomainError naming the missing section.
struct StructureBundle {
    std::optional<Hypergroup> scalar_group; // finite carrier + hyperadd
    std::optional<Hyperfield> field;        // + mul (or the built-in rationals)
    bool scalar_rationals = false;

    std::optional<Hypergroup> vector_group;
    bool vector_rationals = false;
    std::size_t dimension = 0;

    std::optional<StarOp> star;
    std::optional<InnerProduct> inner;
    std::optional<Norm> norm;

    std::vector<Element> pool, universe, probes, orthogonal, gs;

    const Hypergroup& need_scalar_group() const {
        if (!scalar_group) throw DomainError("no finite scalar carrier with a hyperadd table");
        return *scalar_group;
    }
    const Hyperfield& need_field() const {
        if (!field) throw DomainError("no scalar field: need carrier with hyperadd and mul, or carrier = rationals");
        return *field;
    }
    const Hypergroup& need_vector_group() const {
        if (!vector_group) throw DomainError("no vector carrier declared");
        return *vector_group;
    }
    const StarOp& need_star() const {
        if (!star) throw DomainError("no star operation declared");
        return *star;
    }
    const InnerProduct& need_inner() const {
        if (!inner) throw DomainError("no inner product declared");
        return *inner;
    }
    const Norm& need_norm() const {
        if (!norm) throw DomainError("no norm declared");
        return *norm;
    }
    HyperVectorSpace space() const {
        HyperVectorSpace W;
        W.scalars = need_field();
        W.vectors = need_vector_group();
        W.star = need_star();
        return W;
    }
};

namespace detail {

struct Tok {
    enum Kind { Word, Vec, Sym } kind;
    std::string text;   // word text or the single symbol
    RatVec vec;         // engaged for Kind::Vec
    std::size_t col = 0;
};

inline bool word_char(char c) {
    return !std::isspace(static_cast<unsigned char>(c)) &&
           c != '(' && c != ')' && c != '{' && c != '}' && c != ',' && c != '=' && c != '+' &&
           c != '*' && c != '#';
}

inline Rational parse_rational_text(const std::string& s, std::size_t line, std::size_t col) {
    const auto bad = [&]() -> ParseError {
        return ParseError(line, col, "expected a rational p/q, got \"" + s + "\"");
    };
    std::size_t i = 0;
    const auto digits = [&](std::size_t from) {
        std::size_t j = from;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        return j;
    };
    if (i < s.size() && s[i] == '-') ++i;
    const std::size_t num_end = digits(i);
    if (num_end == i) throw bad();
    std::string num = s.substr(0, num_end);
    std::string den = "1";
    if (num_end < s.size()) {
        if (s[num_end] != '/') throw bad();
        const std::size_t den_end = digits(num_end + 1);
        if (den_end == num_end + 1 || den_end != s.size()) throw bad();
        den = s.substr(num_end + 1, den_end - num_end - 1);
    }
    const Integer d(den);
    if (d == 0) throw ParseError(line, col, "zero denominator in \"" + s + "\"");
    return Rational(Integer(num), d);
}

inline std::vector<Tok> tokenize_line(const std::string& raw, std::size_t line) {
    std::vector<Tok> out;
    std::string s = raw;
    if (const auto hash = s.find('#'); hash != std::string::npos) s.resize(hash);
    std::size_t i = 0;
    while (i < s.size()) {
        const char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
        const std::size_t col = i + 1;
        if (c == '(') {
            const std::size_t close = s.find(')', i);
            if (close == std::string::npos) throw ParseError(line, col, "unterminated vector literal");
            const std::string body = s.substr(i + 1, close - i - 1);
            RatVec v;
            std::size_t start = 0, comp_col = col + 1;
            for (std::size_t j = 0; j <= body.size(); ++j) {
                if (j == body.size() || body[j] == ',') {
                    std::string part = body.substr(start, j - start);
                    std::size_t lead = 0;
                    while (lead < part.size() && std::isspace(static_cast<unsigned char>(part[lead]))) ++lead;
                    std::size_t tail = part.size();
                    while (tail > lead && std::isspace(static_cast<unsigned char>(part[tail - 1]))) --tail;
                    part = part.substr(lead, tail - lead);
                    if (part.empty()) throw ParseError(line, comp_col, "empty vector component");
                    v.push_back(parse_rational_text(part, line, comp_col + lead));
                    start = j + 1;
                    comp_col = col + 1 + start;
                }
            }
            out.push_back({Tok::Vec, s.substr(i, close - i + 1), std::move(v), col});
            i = close + 1;
            continue;
        }
        if (c == ')' ) throw ParseError(line, col, "stray ')'");
        if (c == '{' || c == '}' || c == ',' || c == '=' || c == '+' || c == '*') {
            out.push_back({Tok::Sym, std::string(1, c), {}, col});
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < s.size() && word_char(s[j])) ++j;
        out.push_back({Tok::Word, s.substr(i, j - i), {}, col});
        i = j;
    }
    return out;
}

inline const std::vector<std::string>& format_keywords() {
    static const std::vector<std::string> kws = {
        "carrier", "vectors", "hyperadd", "mul", "neg", "inv", "abs", "zero", "one",
        "theta", "star", "inner", "norm", "pool", "universe", "probes", "orthogonal", "gs"};
    return kws;
}

inline bool is_keyword(const std::string& w) {
    for (const auto& k : format_keywords())
        if (k == w) return true;
    return false;
}

class StructureParser {
public:
    StructureBundle run(const std::string& text) {
        std::size_t start = 0, line_no = 0;
        while (start <= text.size()) {
            std::size_t end = text.find('\n', start);
            if (end == std::string::npos) end = text.size();
            ++line_no;
            handle_line(text.substr(start, end - start), line_no);
            if (end == text.size()) break;
            start = end + 1;
        }
        finalize();
        return std::move(bundle_);
    }

private:
    enum class Section { None, HyperAdd, Mul, Neg, Inv, Abs, Star, Inner, Norm };

    StructureBundle bundle_;
    Section section_ = Section::None;

    bool has_carrier_ = false, carrier_rationals_ = false;
    std::vector<std::string> atoms_;
    CarrierDesc scalar_carrier_;

    bool has_vectors_ = false, vectors_rational_ = false;
    std::vector<Element> vector_members_;
    std::optional<std::size_t> dim_;

    std::optional<Element> zero_, one_, theta_;
    HyperOp::Table scalar_add_, vector_add_;
    ScalarOp::Table mul_;
    std::map<Element, Element> neg_, inv_;
    std::map<Element, Rational> abs_;
    StarOp::Table star_rows_;
    std::map<std::pair<Element, Element>, Rational> inner_rows_;
    std::map<Element, Rational> norm_rows_;
    std::string star_rule_, inner_rule_, norm_rule_;

    std::size_t scalar_add_line_ = 0, vector_add_line_ = 0, mul_line_ = 0, star_line_ = 0;
    std::map<std::string, std::size_t> seen_rows_; // duplicate detection, key = section + cell

    static ParseError err(std::size_t line, std::size_t col, const std::string& m) {
        return ParseError(line, col, m);
    }

    void expect_sym(const std::vector<Tok>& t, std::size_t i, char c, std::size_t line) {
        if (i >= t.size() || t[i].kind != Tok::Sym || t[i].text[0] != c)
            throw err(line, i < t.size() ? t[i].col : 0,
                      std::string("expected '") + c + "'");
    }

    void no_trailing(const std::vector<Tok>& t, std::size_t i, std::size_t line) {
        if (i < t.size()) throw err(line, t[i].col, "unexpected trailing input");
    }

    void unique_row(const std::string& key, std::size_t line, std::size_t col) {
        const auto [it, fresh] = seen_rows_.emplace(key, line);
        if (!fresh)
            throw err(line, col, "duplicate row (first on line " + std::to_string(it->second) + ")");
    }

    // --- element resolution --------------------------------------------------

    Element scalar_elem(const Tok& t, std::size_t line) {
        if (t.kind != Tok::Word) throw err(line, t.col, "expected a scalar here");
        if (!has_carrier_) throw err(line, t.col, "no carrier declared yet");
        if (carrier_rationals_) return Element::scalar(parse_rational_text(t.text, line, t.col));
        if (const Element* e = scalar_carrier_.find_named(t.text)) return *e;
        throw err(line, t.col, "unknown element \"" + t.text + "\"");
    }

    Element vector_elem(const Tok& t, std::size_t line) {
        if (t.kind != Tok::Vec) throw err(line, t.col, "expected a vector literal here");
        if (!has_vectors_) throw err(line, t.col, "no vector carrier declared yet");
        if (dim_ && t.vec.size() != *dim_)
            throw err(line, t.col, "dimension mismatch: got " + std::to_string(t.vec.size()) +
                                       ", carrier has " + std::to_string(*dim_));
        const Element e = Element::vector(t.vec);
        if (!vectors_rational_) {
            bool member = false;
            for (const auto& m : vector_members_) member = member || m == e;
            if (!member) throw err(line, t.col, "unknown element " + e.to_string());
        }
        return e;
    }

    ElementSet elem_set(const std::vector<Tok>& t, std::size_t& i, bool vectors, std::size_t line) {
        expect_sym(t, i, '{', line);
        const std::size_t brace_col = t[i].col;
        ++i;
        ElementSet out;
        bool first = true;
        while (true) {
            if (i >= t.size()) throw err(line, brace_col, "unterminated set");
            if (t[i].kind == Tok::Sym && t[i].text == "}") {
                if (first)
                    throw err(line, t[i].col, "empty cell: hyperoperation results must be nonempty");
                ++i;
                return out;
            }
            if (!first) {
                expect_sym(t, i, ',', line);
                ++i;
            }
            out.insert(vectors ? vector_elem(t[i], line) : scalar_elem(t[i], line));
            ++i;
            first = false;
        }
    }

    // --- line dispatch ---------------------------------------------------------

    void handle_line(const std::string& raw, std::size_t line) {
        const std::vector<Tok> t = tokenize_line(raw, line);
        if (t.empty()) return;
        if (t[0].kind == Tok::Word && is_keyword(t[0].text)) {
            const std::string& kw = t[0].text;
            const bool has_eq = t.size() >= 2 && t[1].kind == Tok::Sym && t[1].text == "=";
            if (kw == "hyperadd" || kw == "mul" || kw == "neg" || kw == "inv" || kw == "abs") {
                no_trailing(t, 1, line);
                section_ = kw == "hyperadd" ? Section::HyperAdd
                         : kw == "mul"      ? Section::Mul
                         : kw == "neg"      ? Section::Neg
                         : kw == "inv"      ? Section::Inv
                                            : Section::Abs;
                if (section_ == Section::Mul && mul_line_ == 0) mul_line_ = line;
                return;
            }
            if ((kw == "star" || kw == "inner" || kw == "norm") && !has_eq) {
                no_trailing(t, 1, line);
                section_ = kw == "star" ? Section::Star
                         : kw == "inner" ? Section::Inner
                                         : Section::Norm;
                if (section_ == Section::Star && star_line_ == 0) star_line_ = line;
                return;
            }
            if (!has_eq) throw err(line, t[0].col, "expected '=' after \"" + kw + "\"");
            section_ = Section::None;
            declaration(kw, t, line);
            return;
        }
        row(t, line);
    }

    void declaration(const std::string& kw, const std::vector<Tok>& t, std::size_t line) {
        std::size_t i = 2;
        if (i >= t.size()) throw err(line, t[1].col, "missing value after '='");
        if (kw == "carrier") {
            if (has_carrier_) throw err(line, t[0].col, "carrier already declared");
            has_carrier_ = true;
            if (t[i].kind == Tok::Word && t[i].text == "rationals" && t.size() == 3) {
                carrier_rationals_ = true;
                scalar_carrier_ = CarrierDesc::rationals();
                return;
            }
            for (; i < t.size(); ++i) {
                if (t[i].kind != Tok::Word) throw err(line, t[i].col, "atom names expected");
                if (is_keyword(t[i].text))
                    throw err(line, t[i].col, "\"" + t[i].text + "\" is a reserved word");
                atoms_.push_back(t[i].text);
            }
            scalar_carrier_ = CarrierDesc::atoms(atoms_);
            if (scalar_carrier_.members.size() != atoms_.size())
                throw err(line, t[2].col, "duplicate atom name");
            return;
        }
        if (kw == "vectors") {
            if (has_vectors_) throw err(line, t[0].col, "vectors already declared");
            has_vectors_ = true;
            if (t[i].kind == Tok::Word && t[i].text == "rational") {
                if (t.size() != 4 || t[3].kind != Tok::Word)
                    throw err(line, t[i].col, "expected: vectors = rational <dimension>");
                std::size_t d = 0;
                for (const char c : t[3].text) {
                    if (!std::isdigit(static_cast<unsigned char>(c)))
                        throw err(line, t[3].col, "dimension must be a positive integer");
                    d = d * 10 + static_cast<std::size_t>(c - '0');
                }
                if (d == 0 || d > 16) throw err(line, t[3].col, "dimension must be in 1..16");
                vectors_rational_ = true;
                dim_ = d;
                return;
            }
            for (; i < t.size(); ++i) {
                if (t[i].kind != Tok::Vec)
                    throw err(line, t[i].col, "vector literals or \"rational <dim>\" expected");
                if (!dim_) dim_ = t[i].vec.size();
                if (t[i].vec.size() != *dim_) throw err(line, t[i].col, "dimension mismatch");
                vector_members_.push_back(Element::vector(t[i].vec));
            }
            if (vector_members_.empty()) throw err(line, t[1].col, "empty vector carrier");
            return;
        }
        if (kw == "zero" || kw == "one") {
            if (carrier_rationals_)
                throw err(line, t[0].col, "the rational carrier has built-in constants");
            auto& slot = kw == "zero" ? zero_ : one_;
            if (slot) throw err(line, t[0].col, kw + " already declared");
            slot = scalar_elem(t[i], line);
            no_trailing(t, i + 1, line);
            return;
        }
        if (kw == "theta") {
            if (theta_) throw err(line, t[0].col, "theta already declared");
            theta_ = vector_elem(t[i], line);
            no_trailing(t, i + 1, line);
            if (vectors_rational_) {
                const RatVec& v = theta_->as_vector();
                for (const auto& c : v)
                    if (c != 0)
                        throw err(line, t[i].col,
                                  "theta of the rational vector family is the origin");
            }
            return;
        }
        if (kw == "star" || kw == "inner" || kw == "norm") {
            if (t.size() != 3 || t[i].kind != Tok::Word)
                throw err(line, t[i].col, "expected a single rule name");
            auto& slot = kw == "star" ? star_rule_ : kw == "inner" ? inner_rule_ : norm_rule_;
            if (!slot.empty()) throw err(line, t[0].col, kw + " rule already declared");
            slot = t[i].text;
            if (kw == "star" && star_line_ == 0) star_line_ = line;
            return;
        }
        // scalar or vector sample lists
        std::vector<Element>* list = kw == "pool"       ? &bundle_.pool
                                   : kw == "universe"   ? &bundle_.universe
                                   : kw == "probes"     ? &bundle_.probes
                                   : kw == "orthogonal" ? &bundle_.orthogonal
                                                        : &bundle_.gs;
        if (!list->empty()) throw err(line, t[0].col, kw + " already declared");
        for (; i < t.size(); ++i)
            list->push_back(kw == "pool" ? scalar_elem(t[i], line) : vector_elem(t[i], line));
        if (list->empty()) throw err(line, t[1].col, "empty list");
        return;
    }

    void row(const std::vector<Tok>& t, std::size_t line) {
        std::size_t i = 0;
        switch (section_) {
        case Section::None:
            throw err(line, t[0].col, "row outside any section");
        case Section::HyperAdd: {
            const bool vec_row = t[0].kind == Tok::Vec;
            if (vec_row && vector_add_line_ == 0) vector_add_line_ = line;
            if (!vec_row && scalar_add_line_ == 0) scalar_add_line_ = line;
            if (!vec_row && carrier_rationals_)
                throw err(line, t[0].col, "the rational carrier has built-in addition");
            if (vec_row && vectors_rational_)
                throw err(line, t[0].col, "the rational vector family has built-in addition");
            const Element a = vec_row ? vector_elem(t[i], line) : scalar_elem(t[i], line);
            ++i;
            expect_sym(t, i, '+', line);
            ++i;
            const Element b = vec_row ? vector_elem(t[i], line) : scalar_elem(t[i], line);
            ++i;
            expect_sym(t, i, '=', line);
            ++i;
            const ElementSet rhs = elem_set(t, i, vec_row, line);
            no_trailing(t, i, line);
            unique_row("add:" + a.to_string() + "|" + b.to_string(), line, t[0].col);
            (vec_row ? vector_add_ : scalar_add_)[{a, b}] = rhs;
            return;
        }
        case Section::Mul: {
            if (carrier_rationals_)
                throw err(line, t[0].col, "the rational carrier has built-in multiplication");
            const Element a = scalar_elem(t[i], line);
            ++i;
            expect_sym(t, i, '*', line);
            ++i;
            const Element b = scalar_elem(t[i], line);
            ++i;
            expect_sym(t, i, '=', line);
            ++i;
            if (i >= t.size()) throw err(line, 0, "missing product");
            const Element c = scalar_elem(t[i], line);
            no_trailing(t, i + 1, line);
            unique_row("mul:" + a.to_string() + "|" + b.to_string(), line, t[0].col);
            mul_[{a, b}] = c;
            return;
        }
        case Section::Neg:
        case Section::Inv: {
            if (carrier_rationals_)
                throw err(line, t[0].col, "the rational carrier has built-in negation and inverses");
            const Element a = scalar_elem(t[i], line);
            ++i;
            expect_sym(t, i, '=', line);
            ++i;
            if (i >= t.size()) throw err(line, 0, "missing image");
            const Element b = scalar_elem(t[i], line);
            no_trailing(t, i + 1, line);
            auto& m = section_ == Section::Neg ? neg_ : inv_;
            unique_row((section_ == Section::Neg ? "neg:" : "inv:") + a.to_string(), line, t[0].col);
            m[a] = b;
            return;
        }
        case Section::Abs: {
            if (carrier_rationals_)
                throw err(line, t[0].col, "the rational carrier has a built-in absolute value");
            const Element a = scalar_elem(t[i], line);
            ++i;
            expect_sym(t, i, '=', line);
            ++i;
            if (i >= t.size() || t[i].kind != Tok::Word) throw err(line, 0, "missing value");
            const Rational r = parse_rational_text(t[i].text, line, t[i].col);
            no_trailing(t, i + 1, line);
            unique_row("abs:" + a.to_string(), line, t[0].col);
            abs_[a] = r;
            return;
        }
        case Section::Star: {
            const Element a = scalar_elem(t[i], line);
            ++i;
            expect_sym(t, i, '*', line);
            ++i;
            const Element v = vector_elem(t[i], line);
            ++i;
            expect_sym(t, i, '=', line);
            ++i;
            const ElementSet rhs = elem_set(t, i, true, line);
            no_trailing(t, i, line);
            unique_row("star:" + a.to_string() + "|" + v.to_string(), line, t[0].col);
            star_rows_[{a, v}] = rhs;
            return;
        }
        case Section::Inner: {
            const Element u = vector_elem(t[i], line);
            ++i;
            const Element v = vector_elem(t[i], line);
            ++i;
            expect_sym(t, i, '=', line);
            ++i;
            if (i >= t.size() || t[i].kind != Tok::Word) throw err(line, 0, "missing value");
            const Rational r = parse_rational_text(t[i].text, line, t[i].col);
            no_trailing(t, i + 1, line);
            unique_row("inner:" + u.to_string() + "|" + v.to_string(), line, t[0].col);
            inner_rows_[{u, v}] = r;
            return;
        }
        case Section::Norm: {
            const Element u = vector_elem(t[i], line);
            ++i;
            expect_sym(t, i, '=', line);
            ++i;
            if (i >= t.size() || t[i].kind != Tok::Word) throw err(line, 0, "missing value");
            const Rational r = parse_rational_text(t[i].text, line, t[i].col);
            no_trailing(t, i + 1, line);
            unique_row("norm:" + u.to_string(), line, t[0].col);
            norm_rows_[u] = r;
            return;
        }
        }
    }

    // --- assembly --------------------------------------------------------------

    void require_complete_pairs(const CarrierDesc& c, const HyperOp::Table& t, std::size_t line,
                                const char* what) {
        for (const auto& a : c.members)
            for (const auto& b : c.members)
                if (!t.count({a, b}))
                    throw err(line, 1, std::string(what) + " table is missing " + a.to_string() +
                                           " + " + b.to_string());
    }

    void finalize() {
        // scalar side
        if (carrier_rationals_) {
            bundle_.scalar_rationals = true;
            bundle_.field = fixtures::rational_hyperfield();
        } else if (has_carrier_) {
            if (!scalar_add_.empty()) {
                require_complete_pairs(scalar_carrier_, scalar_add_, scalar_add_line_, "hyperadd");
                Hypergroup H;
                H.carrier = scalar_carrier_;
                H.add = HyperOp::from_table(scalar_carrier_, scalar_add_);
                H.zero = zero_;
                H.neg.table = neg_;
                H.commutative = H.add.commutative_on_finite();
                bundle_.scalar_group = H;
            }
            if (!mul_.empty()) {
                if (!bundle_.scalar_group)
                    throw err(mul_line_, 1, "mul requires a hyperadd table");
                for (const auto& a : scalar_carrier_.members)
                    for (const auto& b : scalar_carrier_.members)
                        if (!mul_.count({a, b}))
                            throw err(mul_line_, 1, "mul table is missing " + a.to_string() +
                                                        " * " + b.to_string());
                Hyperfield F;
                F.carrier = scalar_carrier_;
                F.add = bundle_.scalar_group->add;
                F.mul = ScalarOp::from_table(scalar_carrier_, mul_);
                F.zero = zero_;
                F.one = one_;
                F.neg.table = neg_;
                F.inv.table = inv_;
                F.abs.table = abs_;
                F.name = "file";
                bundle_.field = F;
            }
        } else if (zero_ || one_ || !scalar_add_.empty() || !mul_.empty() || !neg_.empty() ||
                   !inv_.empty() || !abs_.empty()) {
            throw err(1, 1, "scalar declarations without a carrier");
        }

        // vector side
        if (has_vectors_) {
            if (vectors_rational_) {
                bundle_.vector_rationals = true;
                bundle_.dimension = *dim_;
                bundle_.vector_group = fixtures::vector_group_q(*dim_);
            } else {
                bundle_.dimension = *dim_;
                const CarrierDesc vc = CarrierDesc::finite(vector_members_);
                if (!theta_) throw err(1, 1, "finite vector carriers need a theta declaration");
                if (vector_add_.empty())
                    throw err(1, 1, "finite vector carriers need a hyperadd table");
                require_complete_pairs(vc, vector_add_, vector_add_line_, "vector hyperadd");
                Hypergroup H;
                H.carrier = vc;
                H.add = HyperOp::from_table(vc, vector_add_);
                H.zero = theta_;
                for (const auto& m : vc.members) {
                    const Element n = Element::vector(vec_neg(m.as_vector()));
                    if (vc.contains(n)) H.neg.table[m] = n;
                }
                H.commutative = H.add.commutative_on_finite();
                bundle_.vector_group = H;
            }
        } else if (theta_ || !vector_add_.empty()) {
            throw err(1, 1, "vector declarations without a vectors line");
        }

        // star
        if (!star_rule_.empty() && !star_rows_.empty())
            throw err(star_line_, 1, "explicit star rows conflict with a star rule");
        if (!star_rule_.empty()) {
            if (!bundle_.scalar_rationals || !vectors_rational_)
                throw err(star_line_, 1,
                          "star rules need carrier = rationals and vectors = rational <dim>");
            bundle_.star = fixtures::star_rule_q(*dim_, star_rule_); // validates the name
        } else if (!star_rows_.empty()) {
            if (!has_carrier_ || !has_vectors_)
                throw err(star_line_, 1, "star rows need scalar and vector carriers");
            bundle_.star = StarOp::from_table(scalar_carrier_,
                                              bundle_.vector_group->carrier, star_rows_);
        }

        // inner and norm: rule with optional table overrides
        if (!inner_rule_.empty() || !inner_rows_.empty()) {
            if (!has_vectors_) throw err(1, 1, "inner product needs a vector carrier");
            InnerProduct ip;
            if (!inner_rule_.empty()) {
                if (inner_rule_ != "dot") throw err(1, 1, "unknown inner rule " + inner_rule_);
                ip = dot_inner(*dim_);
            } else {
                ip.vectors = bundle_.vector_group->carrier;
                ip.rule_name = "table";
            }
            for (const auto& [k, r] : inner_rows_) ip.table[k] = r;
            ip.vectors = bundle_.vector_group->carrier;
            bundle_.inner = std::move(ip);
        }
        if (!norm_rule_.empty() || !norm_rows_.empty()) {
            if (!has_vectors_) throw err(1, 1, "norm needs a vector carrier");
            Norm n;
            if (!norm_rule_.empty()) {
                if (norm_rule_ != "max") throw err(1, 1, "unknown norm rule " + norm_rule_);
                n = max_norm(*dim_);
            } else {
                n.vectors = bundle_.vector_group->carrier;
                n.rule_name = "table";
            }
            for (const auto& [k, r] : norm_rows_) n.table[k] = r;
            n.vectors = bundle_.vector_group->carrier;
            bundle_.norm = std::move(n);
        }
    }
};

} // namespace detail

inline StructureBundle parse_structure(const std::string& text) {
    detail::StructureParser p;
    return p.run(text);
}

// ---------------------------------------------------------------------------
// Canonical serialization. Reparsing the output reproduces the bundle, and
// serializing again reproduces the text byte for byte.
// ---------------------------------------------------------------------------

namespace detail {

inline std::string render_elem(const Element& e) { return e.to_string(); }

inline std::string render_set(const ElementSet& s) {
    std::string out = "{";
    bool first = true;
    for (const auto& e : s) {
        if (!first) out += ", ";
        out += render_elem(e);
        first = false;
    }
    return out + "}";
}

inline void emit_list(std::string& out, const char* name, const std::vector<Element>& xs) {
    if (xs.empty()) return;
    out += name;
    out += " =";
    for (const auto& e : xs) {
        out += " ";
        out += render_elem(e);
    }
    out += "\n";
}

} // namespace detail

inline std::string serialize_structure(const StructureBundle& b) {
    std::string out;
    const auto blank = [&]() {
        if (!out.empty() && out.back() == '\n' && out.size() >= 2 && out[out.size() - 2] != '\n')
            out += "\n";
    };

    if (b.scalar_rationals) {
        out += "carrier = rationals\n";
    } else if (b.scalar_group || b.field) {
        const Hypergroup& G = b.scalar_group ? *b.scalar_group
                                             : fixtures::additive_hypergroup(*b.field);
        out += "carrier =";
        for (const auto& m : G.carrier.members) out += " " + detail::render_elem(m);
        out += "\n";
        const std::optional<Element> zero = b.field ? b.field->zero : G.zero;
        if (zero) out += "zero = " + detail::render_elem(*zero) + "\n";
        if (b.field && b.field->one) out += "one = " + detail::render_elem(*b.field->one) + "\n";
        blank();
        out += "hyperadd\n";
        for (const auto& a : G.carrier.members)
            for (const auto& c : G.carrier.members)
                out += detail::render_elem(a) + " + " + detail::render_elem(c) + " = " +
                       detail::render_set(G.add.apply(a, c)) + "\n";
        if (b.field) {
            blank();
            out += "mul\n";
            for (const auto& a : G.carrier.members)
                for (const auto& c : G.carrier.members)
                    out += detail::render_elem(a) + " * " + detail::render_elem(c) + " = " +
                           detail::render_elem(b.field->mul.apply(a, c)) + "\n";
        }
        const auto& neg = b.field ? b.field->neg.table : G.neg.table;
        if (!neg.empty()) {
            blank();
            out += "neg\n";
            for (const auto& [k, v] : neg)
                out += detail::render_elem(k) + " = " + detail::render_elem(v) + "\n";
        }
        if (b.field && !b.field->inv.table.empty()) {
            blank();
            out += "inv\n";
            for (const auto& [k, v] : b.field->inv.table)
                out += detail::render_elem(k) + " = " + detail::render_elem(v) + "\n";
        }
        if (b.field && !b.field->abs.table.empty()) {
            blank();
            out += "abs\n";
            for (const auto& [k, v] : b.field->abs.table)
                out += detail::render_elem(k) + " = " + format_rational(v) + "\n";
        }
    }

    if (b.vector_group) {
        blank();
        if (b.vector_rationals) {
            out += "vectors = rational " + std::to_string(b.dimension) + "\n";
        } else {
            out += "vectors =";
            for (const auto& m : b.vector_group->carrier.members)
                out += " " + detail::render_elem(m);
            out += "\n";
            out += "theta = " + detail::render_elem(*b.vector_group->zero) + "\n";
            blank();
            out += "hyperadd\n";
            for (const auto& a : b.vector_group->carrier.members)
                for (const auto& c : b.vector_group->carrier.members)
                    out += detail::render_elem(a) + " + " + detail::render_elem(c) + " = " +
                           detail::render_set(b.vector_group->add.apply(a, c)) + "\n";
        }
    }

    if (b.star) {
        blank();
        if (b.star->rule_name != "table") {
            out += "star = " + b.star->rule_name + "\n";
        } else {
            out += "star\n";
            for (const auto& [k, s] : b.star->table)
                out += detail::render_elem(k.first) + " * " + detail::render_elem(k.second) +
                       " = " + detail::render_set(s) + "\n";
        }
    }
    if (b.inner) {
        blank();
        if (b.inner->rule_name != "table") out += "inner = " + b.inner->rule_name + "\n";
        if (!b.inner->table.empty()) {
            out += "inner\n";
            for (const auto& [k, r] : b.inner->table)
                out += detail::render_elem(k.first) + " " + detail::render_elem(k.second) + " = " +
                       format_rational(r) + "\n";
        }
    }
    if (b.norm) {
        blank();
        if (b.norm->rule_name != "table") out += "norm = " + b.norm->rule_name + "\n";
        if (!b.norm->table.empty()) {
            out += "norm\n";
            for (const auto& [k, r] : b.norm->table)
                out += detail::render_elem(k) + " = " + format_rational(r) + "\n";
        }
    }

    blank();
    detail::emit_list(out, "pool", b.pool);
    detail::emit_list(out, "universe", b.universe);
    detail::emit_list(out, "probes", b.probes);
    detail::emit_list(out, "orthogonal", b.orthogonal);
    detail::emit_list(out, "gs", b.gs);
    return out;
}

} // namespace hyperalg
