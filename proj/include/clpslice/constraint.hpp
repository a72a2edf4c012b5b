#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "clpslice/term.hpp"

namespace clpslice {

enum class RelOp : std::uint8_t { Eq, Ne, Lt, Le, Gt, Ge };

const char* relop_text(RelOp op);  // "#=", "#\\=", ...
RelOp negate(RelOp op);

// Constant a token variable is bound to.
Symbol token_value();

class AtomicConstraint {
public:
    enum class Kind : std::uint8_t { True, False, Eq, InDomain, Lin };

    AtomicConstraint() = default;  // True

    static AtomicConstraint truth() { return {}; }
    static AtomicConstraint falsity();
    static AtomicConstraint equal(Term lhs, Term rhs);
    static AtomicConstraint in_domain(Term var, std::int64_t lo, std::int64_t hi);
    static AtomicConstraint linear(RelOp op, Term lhs, Term rhs);
    // A named token such as `beat`, encoded as beat = '$present'.
    static AtomicConstraint token(std::string_view name);

    Kind kind() const { return kind_; }
    const Term& lhs() const { return lhs_; }
    const Term& rhs() const { return rhs_; }
    RelOp op() const { return op_; }
    std::int64_t lo() const { return lo_; }
    std::int64_t hi() const { return hi_; }
    bool is_token() const;

    std::vector<Symbol> vars() const;
    void collect_vars(std::vector<Symbol>& out) const;
    AtomicConstraint substitute(const Substitution& s) const;
    std::string to_string() const;

    friend bool operator==(const AtomicConstraint& a, const AtomicConstraint& b);

private:
    Kind kind_ = Kind::True;
    RelOp op_ = RelOp::Eq;
    Term lhs_, rhs_;
    std::int64_t lo_ = 0, hi_ = 0;
};

// Sugar expanded at atomize time, possibly against the current store.
struct GlobalConstraint {
    enum class Kind : std::uint8_t { AllDifferent, FdDomain, In };
    Kind kind = Kind::AllDifferent;
    std::vector<Term> args;  // AllDifferent: [list]; FdDomain: [list, lo, hi]; In: [x, lo, hi]

    std::string to_string() const;
    friend bool operator==(const GlobalConstraint&, const GlobalConstraint&) = default;
};

// ∃exists. (item_1 ⊔ ... ⊔ item_n); an empty item list denotes t.
class Constraint {
public:
    struct Item {
        enum class Kind : std::uint8_t { Atom, Global, Hole, Nested };
        Kind kind = Kind::Atom;
        AtomicConstraint atom;
        GlobalConstraint global;
        std::shared_ptr<const Constraint> nested;

        friend bool operator==(const Item& a, const Item& b);
    };

    Constraint() = default;
    static Constraint truth() { return {}; }
    static Constraint of(AtomicConstraint a);
    static Constraint hole();

    Constraint& add(AtomicConstraint a);
    Constraint& add(GlobalConstraint g);
    Constraint& add_hole();
    Constraint& add(Constraint nested);

    const std::vector<Item>& items() const { return items_; }
    const std::vector<Symbol>& exists() const { return exists_; }
    void set_exists(std::vector<Symbol> vars) { exists_ = std::move(vars); }

    bool is_true() const;
    bool has_hole() const;
    bool all_holes() const;
    // Single atomic item and no quantifier.
    bool is_atomic() const;

    std::vector<Symbol> free_vars() const;
    void collect_free_vars(std::vector<Symbol>& out) const;
    // Capture-avoiding: quantified variables are renamed with a prime when needed.
    Constraint substitute(const Substitution& s) const;
    std::string to_string() const;

    friend bool operator==(const Constraint& a, const Constraint& b);

private:
    std::vector<Symbol> exists_;
    std::vector<Item> items_;
};

}  // namespace clpslice
