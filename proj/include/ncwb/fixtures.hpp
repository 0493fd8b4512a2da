// Copyright 2026 The ncwb Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * The shipped JSON fixtures, generated from the library's own constructions.
 */

#pragma once

#include <map>
#include <string>

#include "ncwb/assign.hpp"
#include "ncwb/io.hpp"
#include "ncwb/ontology.hpp"
#include "ncwb/wigner.hpp"

namespace ncwb {

/// Qubit theory with |0>, |1>, I/2, a Z measurement and two fair coins.
inline OperationalTheory fair_coin_theory() {
    const auto half = HermitianOperator(0.5 * Matrix::Identity(2, 2));
    const Povm coin = Povm::from_operators({half, half});
    const Povm z = Povm::from_basis(Matrix::Identity(2, 2));
    return build_quantum_theory({{"zero", DensityOperator::pure(basis_ket(2, 0))},
                                 {"one", DensityOperator::pure(basis_ket(2, 1))},
                                 {"mixed", DensityOperator::maximally_mixed(2)}},
                                {{"Z", z, true}, {"coin", coin, false}, {"coin'", coin, false}});
}

/// Two ontic states; Z reads the state, both coins answer (½, ½) everywhere.
inline OntologicalModel fair_coin_model() {
    return OntologicalModel({"l0", "l1"},
                            {{"zero", {1.0, 0.0}}, {"one", {0.0, 1.0}}, {"mixed", {0.5, 0.5}}},
                            {{"Z", {{1.0, 0.0}, {0.0, 1.0}}},
                             {"coin", {{0.5, 0.5}, {0.5, 0.5}}},
                             {"coin'", {{0.5, 0.5}, {0.5, 0.5}}}});
}

/// File name -> contents for every shipped fixture.
inline std::map<std::string, io::json> fixture_set() {
    std::map<std::string, io::json> out;
    out["fair-coin.theory.json"] = io::to_json(fair_coin_theory());
    out["fair-coin.model.json"] = io::to_json(fair_coin_model());
    out["fair-coin.problem.json"] = io::to_json(fair_coin_problem());
    out["cabello-nakamura.json"] = io::to_json(cabello_nakamura_problem());
    out["same-effect-twice.json"] = io::to_json(same_effect_twice_problem(true));
    out["coarse-grain-paradox.json"] = io::to_json(coarse_grain_paradox_problem());
    out["trine.json"] = io::to_json(trine_problem());
    out["pauli-projectors.json"] = io::to_json(pauli_projector_problem());
    out["bit-flip.theory.json"] = io::to_json(fair_coin_pair_theory());
    out["bit-flip.extended-model.json"] = io::to_json(discretize(bit_flip_extension()));
    const auto fragment = wigner::stabilizer_fragment();
    out["wigner-qutrit.theory.json"] = io::to_json(fragment);
    out["wigner-qutrit.model.json"] = io::to_json(wigner::wigner_model(fragment));

    io::json bad = out["fair-coin.model.json"];
    bad["responses"]["coin"][1][1] = 0.75;
    out["bad-model.response-sum.json"] = std::move(bad);
    return out;
}

} // namespace ncwb
