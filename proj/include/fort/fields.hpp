#pragma once

#include "fort/ff.hpp"

namespace fort {

// BN254 base field (coordinates of the pairing groups).
inline constexpr FieldCfg FQ_CFG = make_field_cfg(
    "21888242871839275222246405745257275088696311157297823662689037894645226208583");

// BN254 scalar field; also the base field of the embedded Edwards curve,
// and the field every circuit wire lives in.
inline constexpr FieldCfg FR_CFG = make_field_cfg(
    "21888242871839275222246405745257275088548364400416034343698204186575808495617");

// Order of the prime subgroup of the embedded Edwards curve; scalar field
// of the commitment group (Pedersen, Bulletproofs).
inline constexpr FieldCfg FL_CFG = make_field_cfg(
    "2736030358979909402780800718157159386076813972158567259200215660948447373041");

using Fq = Fp<&FQ_CFG>;
using Fr = Fp<&FR_CFG>;
using Fl = Fp<&FL_CFG>;

// Canonical-integer conversion between scalar domains. The Edwards group
// has order l < r, so an Fl scalar always fits in Fr; the reverse reduces
// mod l.
inline Fr fl_to_fr(const Fl& x) { return Fr::from_u256(x.to_u256()); }

inline Fl fr_to_fl(const Fr& x) {
    U256 v = x.to_u256();
    while (u256_cmp(v, Fl::modulus()) >= 0) u256_sub(v, v, Fl::modulus());
    return Fl::from_u256(v);
}

}  // namespace fort
