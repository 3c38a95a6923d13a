// B5GRoam - rank-1 constraint system
// Copyright (c) 2026 B5GRoam Developers
// MIT License

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "b5groam/field.hpp"

namespace b5g {

// Variable 0 is the constant one; public inputs occupy 1..num_public;
// private witness variables follow.
using VarIndex = uint32_t;
constexpr VarIndex VAR_ONE = 0;

struct LinearCombination {
    std::vector<std::pair<VarIndex, Fr>> terms;

    LinearCombination() = default;

    static LinearCombination variable(VarIndex v, const Fr& coeff = Fr::one()) {
        LinearCombination lc;
        lc.terms.emplace_back(v, coeff);
        return lc;
    }

    static LinearCombination constant(const Fr& c) {
        if (c.is_zero()) return {};
        return variable(VAR_ONE, c);
    }

    void add_term(VarIndex v, const Fr& coeff);

    LinearCombination operator+(const LinearCombination& o) const;
    LinearCombination operator-(const LinearCombination& o) const;
    LinearCombination scaled(const Fr& k) const;

    Fr evaluate(const std::vector<Fr>& assignment) const;

    bool empty() const { return terms.empty(); }
};

struct Constraint {
    LinearCombination a, b, c; // <a,w> * <b,w> = <c,w>
};

class ConstraintSystem {
  public:
    explicit ConstraintSystem(std::vector<std::string> public_labels);

    // Allocates a private witness variable.
    VarIndex allocate();

    void enforce(LinearCombination a, LinearCombination b, LinearCombination c);

    size_t num_variables() const { return num_vars_; }             // includes ONE
    size_t num_public() const { return public_labels_.size(); }    // excludes ONE
    size_t num_constraints() const { return constraints_.size(); }
    const std::vector<Constraint>& constraints() const { return constraints_; }
    const std::vector<std::string>& public_labels() const { return public_labels_; }

    VarIndex public_var(size_t i) const { return VarIndex(1 + i); }

    // Returns true iff every constraint holds; on failure writes the index
    // of the first violated constraint if requested.
    bool is_satisfied(const std::vector<Fr>& assignment, size_t* violated = nullptr) const;

    std::vector<uint8_t> serialize() const;
    static ConstraintSystem deserialize(const uint8_t* data, size_t len);

  private:
    size_t num_vars_;
    std::vector<std::string> public_labels_;
    std::vector<Constraint> constraints_;
};

} // namespace b5g
