#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fort/fields.hpp"

namespace fort {

// Sparse linear combination over the witness vector. Variable 0 is the
// constant one, so constants are just terms on index 0.
struct LinComb {
    std::vector<std::pair<uint32_t, Fr>> terms;  // sorted by index, nonzero

    static LinComb variable(uint32_t index) {
        LinComb l;
        l.terms.push_back({index, Fr::one()});
        return l;
    }
    static LinComb constant(const Fr& v) {
        LinComb l;
        if (!v.is_zero()) l.terms.push_back({0, v});
        return l;
    }

    LinComb operator+(const LinComb& o) const {
        LinComb r;
        size_t i = 0, j = 0;
        while (i < terms.size() || j < o.terms.size()) {
            if (j == o.terms.size() ||
                (i < terms.size() && terms[i].first < o.terms[j].first)) {
                r.terms.push_back(terms[i++]);
            } else if (i == terms.size() || o.terms[j].first < terms[i].first) {
                r.terms.push_back(o.terms[j++]);
            } else {
                Fr c = terms[i].second + o.terms[j].second;
                if (!c.is_zero()) r.terms.push_back({terms[i].first, c});
                ++i;
                ++j;
            }
        }
        return r;
    }

    LinComb operator*(const Fr& c) const {
        LinComb r;
        if (c.is_zero()) return r;
        r.terms = terms;
        for (auto& t : r.terms) t.second *= c;
        return r;
    }

    LinComb operator-(const LinComb& o) const { return *this + o * (-Fr::one()); }
    LinComb operator+(const Fr& c) const { return *this + constant(c); }
    LinComb operator-(const Fr& c) const { return *this + constant(-c); }
    LinComb operator-() const { return *this * (-Fr::one()); }

    bool is_empty() const { return terms.empty(); }
};

struct Constraint {
    LinComb a, b, c;    // <a,w> * <b,w> = <c,w>
    uint32_t category;  // index into ConstraintSystem::categories()
};

class ConstraintSystem {
  public:
    size_t num_variables() const { return num_vars_; }
    size_t num_public() const { return num_public_; }

    uint32_t add_variable() { return uint32_t(num_vars_++); }

    // public inputs are the variable prefix [0, n), index 0 the constant one
    void set_public_count(size_t n);

    void enforce(LinComb a, LinComb b, LinComb c, std::string_view category);

    const std::vector<Constraint>& constraints() const { return constraints_; }
    const std::vector<std::string>& categories() const { return categories_; }
    const std::string& category_of(size_t constraint_index) const {
        return categories_[constraints_[constraint_index].category];
    }

    static Fr eval(const LinComb& lc, std::span<const Fr> assignment);

    // index of the first violated constraint, or nullopt if all hold
    std::optional<size_t> first_unsatisfied(std::span<const Fr> assignment) const;
    bool is_satisfied(std::span<const Fr> assignment) const {
        return !first_unsatisfied(assignment).has_value();
    }

    // schema: {"variables": n, "public": k, "constraints":
    //   [{"a": [[index, hex-coeff], ...], "b": ..., "c": ...}, ...]}
    std::string to_json() const;

  private:
    size_t num_vars_ = 1;
    size_t num_public_ = 1;
    std::vector<Constraint> constraints_;
    std::vector<std::string> categories_;
};

// Records constraints and, when in compute mode, fills in the assignment as
// variables are allocated. Running the same synthesis code in both modes
// keeps the circuit shape and the witness generator in lock step.
class Builder {
  public:
    explicit Builder(ConstraintSystem& cs, bool compute)
        : cs_(cs), compute_(compute) {
        if (compute) assignment_.push_back(Fr::one());
    }

    ConstraintSystem& cs() { return cs_; }
    bool computing() const { return compute_; }

    LinComb alloc(const Fr& value) {
        uint32_t idx = cs_.add_variable();
        if (compute_) assignment_.push_back(value);
        return LinComb::variable(idx);
    }

    Fr eval(const LinComb& lc) const {
        return ConstraintSystem::eval(lc, assignment_);
    }

    void enforce(const LinComb& a, const LinComb& b, const LinComb& c,
                 std::string_view category) {
        cs_.enforce(a, b, c, category);
    }

    LinComb mul(const LinComb& a, const LinComb& b, std::string_view category) {
        LinComb out = alloc(compute_ ? eval(a) * eval(b) : Fr::zero());
        cs_.enforce(a, b, out, category);
        return out;
    }

    void enforce_equal(const LinComb& a, const LinComb& b,
                       std::string_view category) {
        cs_.enforce(a - b, LinComb::constant(Fr::one()), LinComb(), category);
    }

    void enforce_boolean(const LinComb& a, std::string_view category) {
        cs_.enforce(a, a - Fr::one(), LinComb(), category);
    }

    const std::vector<Fr>& assignment() const { return assignment_; }
    std::vector<Fr> take_assignment() { return std::move(assignment_); }

  private:
    ConstraintSystem& cs_;
    bool compute_;
    std::vector<Fr> assignment_;
};

}  // namespace fort
