#include "fort/r1cs.hpp"

#include <stdexcept>

#include <json.hpp>

namespace fort {

void ConstraintSystem::set_public_count(size_t n) {
    if (n < 1 || n > num_vars_)
        throw std::invalid_argument("public count out of range");
    num_public_ = n;
}

void ConstraintSystem::enforce(LinComb a, LinComb b, LinComb c,
                               std::string_view category) {
    uint32_t cat = 0;
    for (; cat < categories_.size(); ++cat)
        if (categories_[cat] == category) break;
    if (cat == categories_.size()) categories_.emplace_back(category);
    constraints_.push_back(
        {std::move(a), std::move(b), std::move(c), cat});
}

Fr ConstraintSystem::eval(const LinComb& lc, std::span<const Fr> assignment) {
    Fr acc = Fr::zero();
    for (const auto& [idx, coeff] : lc.terms) acc += assignment[idx] * coeff;
    return acc;
}

std::optional<size_t> ConstraintSystem::first_unsatisfied(
    std::span<const Fr> assignment) const {
    if (assignment.size() != num_vars_)
        throw std::invalid_argument("assignment length mismatch");
    if (assignment[0] != Fr::one())
        throw std::invalid_argument("assignment must start with one");
    for (size_t i = 0; i < constraints_.size(); ++i) {
        const Constraint& k = constraints_[i];
        if (eval(k.a, assignment) * eval(k.b, assignment) !=
            eval(k.c, assignment))
            return i;
    }
    return std::nullopt;
}

namespace {

nlohmann::json lincomb_json(const LinComb& lc) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [idx, coeff] : lc.terms) {
        uint8_t b[32];
        coeff.to_bytes(b);
        static const char* digits = "0123456789abcdef";
        std::string hex;
        for (int i = 0; i < 32; ++i) {
            hex.push_back(digits[b[i] >> 4]);
            hex.push_back(digits[b[i] & 15]);
        }
        arr.push_back({idx, hex});
    }
    return arr;
}

}  // namespace

std::string ConstraintSystem::to_json() const {
    nlohmann::json j;
    j["variables"] = num_vars_;
    j["public"] = num_public_;
    j["categories"] = categories_;
    nlohmann::json cons = nlohmann::json::array();
    for (const Constraint& k : constraints_) {
        cons.push_back({{"a", lincomb_json(k.a)},
                        {"b", lincomb_json(k.b)},
                        {"c", lincomb_json(k.c)},
                        {"category", k.category}});
    }
    j["constraints"] = std::move(cons);
    return j.dump();
}

}  // namespace fort
