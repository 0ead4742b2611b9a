#pragma once

#include "etherphase/ether.hpp"

#include <map>
#include <string>
#include <vector>

namespace etherphase {

// Built-in structures, each with an independent oracle:
//   euclid_weyl_2n   - closed forms throughout (params: n)
//   darboux_pullback - Euclidean structure conjugated by (q,p) -> (q, p+eps q^2)
//                      (params: eps)
//   sphere_chart     - stereographic hemisphere chart, rotation-by-pi
//                      reflections, Hamiltonian built by the reconstruction
//                      integral
//   torsion_const    - constant-coefficient internal Hamiltonian, non-involutive
//                      inversions (params: b)
EtherStructure make_fixture(const std::string& name,
                            const std::map<std::string, double>& params = {});

std::vector<std::string> fixture_names();
std::string describe_fixture(const std::string& name,
                             const std::map<std::string, double>& params = {});

// fault injection for suite-sensitivity checks: H scaled by `factor`
EtherStructure corrupt_scale_H(const EtherStructure& E, double factor);

// box used for randomized identity sampling (well inside the chart domain)
Vec sampling_halfwidth(const EtherStructure& E);

}  // namespace etherphase
