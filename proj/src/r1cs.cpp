// B5GRoam - rank-1 constraint system
// Copyright (c) 2026 B5GRoam Developers
// MIT License

#include "b5groam/r1cs.hpp"

#include <algorithm>
#include <map>

#include "b5groam/errors.hpp"

namespace b5g {

// Terms stay sorted by variable index; that keeps serialization canonical
// and lets merges run in linear time.
void LinearCombination::add_term(VarIndex v, const Fr& coeff) {
    if (coeff.is_zero()) return;
    auto it = std::lower_bound(terms.begin(), terms.end(), v,
                               [](const auto& t, VarIndex idx) { return t.first < idx; });
    if (it != terms.end() && it->first == v) {
        it->second += coeff;
        if (it->second.is_zero()) terms.erase(it);
    } else {
        terms.emplace(it, v, coeff);
    }
}

namespace {

LinearCombination merge(const LinearCombination& a, const LinearCombination& b, bool negate_b) {
    LinearCombination r;
    r.terms.reserve(a.terms.size() + b.terms.size());
    size_t i = 0, j = 0;
    while (i < a.terms.size() || j < b.terms.size()) {
        if (j == b.terms.size() || (i < a.terms.size() && a.terms[i].first < b.terms[j].first)) {
            r.terms.push_back(a.terms[i++]);
        } else if (i == a.terms.size() || b.terms[j].first < a.terms[i].first) {
            const auto& [v, c] = b.terms[j++];
            r.terms.emplace_back(v, negate_b ? -c : c);
        } else {
            Fr c = negate_b ? a.terms[i].second - b.terms[j].second
                            : a.terms[i].second + b.terms[j].second;
            if (!c.is_zero()) r.terms.emplace_back(a.terms[i].first, c);
            i++;
            j++;
        }
    }
    return r;
}

} // namespace

LinearCombination LinearCombination::operator+(const LinearCombination& o) const {
    return merge(*this, o, false);
}

LinearCombination LinearCombination::operator-(const LinearCombination& o) const {
    return merge(*this, o, true);
}

LinearCombination LinearCombination::scaled(const Fr& k) const {
    LinearCombination r;
    if (k.is_zero()) return r;
    r.terms.reserve(terms.size());
    for (const auto& [v, c] : terms) r.terms.emplace_back(v, c * k);
    return r;
}

Fr LinearCombination::evaluate(const std::vector<Fr>& assignment) const {
    Fr acc = Fr::zero();
    for (const auto& [v, c] : terms) acc += c * assignment.at(v);
    return acc;
}

ConstraintSystem::ConstraintSystem(std::vector<std::string> public_labels)
    : num_vars_(1 + public_labels.size()), public_labels_(std::move(public_labels)) {}

VarIndex ConstraintSystem::allocate() { return VarIndex(num_vars_++); }

void ConstraintSystem::enforce(LinearCombination a, LinearCombination b, LinearCombination c) {
    constraints_.push_back({std::move(a), std::move(b), std::move(c)});
}

bool ConstraintSystem::is_satisfied(const std::vector<Fr>& assignment, size_t* violated) const {
    if (assignment.size() != num_vars_ || assignment[VAR_ONE] != Fr::one()) {
        if (violated) *violated = size_t(-1);
        return false;
    }
    for (size_t i = 0; i < constraints_.size(); i++) {
        const auto& cons = constraints_[i];
        if (cons.a.evaluate(assignment) * cons.b.evaluate(assignment) !=
            cons.c.evaluate(assignment)) {
            if (violated) *violated = i;
            return false;
        }
    }
    return true;
}

namespace {

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
    for (int i = 0; i < 4; i++) out.push_back(uint8_t(v >> (8 * i)));
}

uint32_t get_u32(const uint8_t*& p, const uint8_t* end) {
    if (end - p < 4) throw B5gError(Errc::SerializationError, "r1cs: truncated");
    uint32_t v = 0;
    for (int i = 0; i < 4; i++) v |= uint32_t(*p++) << (8 * i);
    return v;
}

void put_lc(std::vector<uint8_t>& out, const LinearCombination& lc) {
    put_u32(out, uint32_t(lc.terms.size()));
    for (const auto& [v, c] : lc.terms) {
        put_u32(out, v);
        auto bytes = c.to_bytes_be();
        out.insert(out.end(), bytes.begin(), bytes.end());
    }
}

LinearCombination get_lc(const uint8_t*& p, const uint8_t* end) {
    uint32_t n = get_u32(p, end);
    LinearCombination lc;
    lc.terms.reserve(n);
    for (uint32_t i = 0; i < n; i++) {
        uint32_t v = get_u32(p, end);
        if (end - p < 32) throw B5gError(Errc::SerializationError, "r1cs: truncated term");
        Fr c = Fr::from_bytes_be(p);
        p += 32;
        lc.terms.emplace_back(VarIndex(v), c);
    }
    return lc;
}

} // namespace

std::vector<uint8_t> ConstraintSystem::serialize() const {
    std::vector<uint8_t> out;
    put_u32(out, uint32_t(num_vars_));
    put_u32(out, uint32_t(public_labels_.size()));
    for (const auto& label : public_labels_) {
        put_u32(out, uint32_t(label.size()));
        out.insert(out.end(), label.begin(), label.end());
    }
    put_u32(out, uint32_t(constraints_.size()));
    for (const auto& c : constraints_) {
        put_lc(out, c.a);
        put_lc(out, c.b);
        put_lc(out, c.c);
    }
    return out;
}

ConstraintSystem ConstraintSystem::deserialize(const uint8_t* data, size_t len) {
    const uint8_t* p = data;
    const uint8_t* end = data + len;
    uint32_t num_vars = get_u32(p, end);
    uint32_t num_public = get_u32(p, end);
    std::vector<std::string> labels;
    for (uint32_t i = 0; i < num_public; i++) {
        uint32_t n = get_u32(p, end);
        if (size_t(end - p) < n) throw B5gError(Errc::SerializationError, "r1cs: truncated label");
        labels.emplace_back(reinterpret_cast<const char*>(p), n);
        p += n;
    }
    ConstraintSystem cs(labels);
    uint32_t num_constraints = get_u32(p, end);
    while (cs.num_variables() < num_vars) cs.allocate();
    for (uint32_t i = 0; i < num_constraints; i++) {
        LinearCombination a = get_lc(p, end);
        LinearCombination b = get_lc(p, end);
        LinearCombination c = get_lc(p, end);
        cs.enforce(std::move(a), std::move(b), std::move(c));
    }
    return cs;
}

} // namespace b5g
