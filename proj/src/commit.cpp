#include "fort/commit.hpp"

namespace fort {

const PedersenParams& PedersenParams::defaults() {
    static const PedersenParams p = [] {
        auto gens = derive_generators("fort/ped", 2);
        return PedersenParams{gens[0], gens[1]};
    }();
    return p;
}

}  // namespace fort
