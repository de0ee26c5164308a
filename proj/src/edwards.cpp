#include "fort/edwards.hpp"

namespace fort {

const Fr& EdwardsParams::a() {
    static const Fr v = Fr::from_u64(168700);
    return v;
}

const Fr& EdwardsParams::d() {
    static const Fr v = Fr::from_u64(168696);
    return v;
}

const U256& EdwardsParams::subgroup_order() { return Fl::modulus(); }

const EdPoint& EdPoint::base() {
    // prime-order base point: 8 * (curve generator)
    static const EdPoint p = from_affine(
        Fr::from_u256(u256_from_dec(
            "5299619240641551281634865583518297030282874472190772894086521144482721001553")),
        Fr::from_u256(u256_from_dec(
            "16950150798460657717958625567821834550301663161624707787222815936182638968203")));
    return p;
}

}  // namespace fort
