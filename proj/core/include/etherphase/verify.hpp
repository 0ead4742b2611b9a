#pragma once

#include "etherphase/torsion.hpp"

#include <cstdint>
#include <map>
#include <string>

namespace etherphase {

struct VerifyOptions {
    std::string fixture = "euclid_weyl_2n";
    std::map<std::string, double> params;
    uint64_t seed = 12345;
    int samples = 100;       // cheap pointwise identities
    int samples_small = 6;   // membrane / nested-solver identities
    double corrupt_scale = 0;  // when nonzero, H is scaled by this factor
    double newton_tol = 0;     // when nonzero, overrides the fixture default
};

// runs every identity applicable to the chosen fixture and returns one record
// per identity tag
CheckReport run_verify(const VerifyOptions& opts);

}  // namespace etherphase
