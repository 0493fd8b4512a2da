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


#include <random>

#include <gtest/gtest.h>

#include "ncwb/demos.hpp"
#include "ncwb/fixtures.hpp"
#include "ncwb/ontology.hpp"

namespace ncwb {
namespace {

using Responses = OntologicalModel::Responses;

OntologicalModel with_coin_prime(const Responses &xi) {
    const auto base = fair_coin_model();
    auto responses = base.responses();
    responses["coin'"] = xi;
    return OntologicalModel(base.ontic_states(), base.epistemic(), responses);
}

TEST(OntologicalModel, ResponseSumViolationNamesEntry) {
    try {
        OntologicalModel m({"a", "b"}, {{"P", {0.5, 0.5}}}, {{"M", {{0.5, 1.0}, {0.5, 0.25}}}});
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::SchemaViolation);
        EXPECT_NE(std::string(e.what()).find("M=M"), std::string::npos) << e.what();
        EXPECT_NE(std::string(e.what()).find("lambda=b"), std::string::npos) << e.what();
    }
}

TEST(OntologicalModel, ValidatesShapes) {
    EXPECT_THROW(OntologicalModel({"a"}, {{"P", {0.5}}}, {{"M", {{1.0}}}}), Error);
    EXPECT_THROW(OntologicalModel({"a", "a"}, {{"P", {0.5, 0.5}}}, {{"M", {{1.0, 1.0}}}}), Error);
    EXPECT_THROW(OntologicalModel({"a"}, {{"P", {1.0}}}, {{"M", {{1.5}, {-0.5}}}}), Error);
    const OntologicalModel ok({"a"}, {{"P", {1.0}}}, {{"M", {{1.0}}}});
    try {
        (void)ok.mu("Q");
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::LabelMismatch);
    }
}

TEST(Adequacy, FairCoinModelReproducesTable) {
    EXPECT_TRUE(empirical_adequacy(fair_coin_model(), fair_coin_theory()).passed());
    const auto off = with_coin_prime({{0.6, 0.6}, {0.4, 0.4}});
    const Report r = empirical_adequacy(off, fair_coin_theory());
    EXPECT_FALSE(r.passed());
    EXPECT_EQ(r.verdicts.front().violations.size(), 6U);
}

TEST(Adequacy, ResidualsMatchHandComputation) {
    const auto off = with_coin_prime({{0.6, 0.2}, {0.4, 0.8}});
    const auto res = adequacy_residuals(off, fair_coin_theory());
    const auto t = fair_coin_theory();
    const std::size_t m = *t.measurement_index("coin'");
    const std::size_t p = *t.preparation_index("mixed");
    EXPECT_NEAR(res[m][p][0], 0.5 * 0.6 + 0.5 * 0.2 - 0.5, 1e-15);
}

TEST(Determinism, IffSharpOnFairCoin) {
    const auto model = fair_coin_model();
    EXPECT_TRUE(is_outcome_deterministic(model, "Z"));
    EXPECT_FALSE(is_outcome_deterministic(model, "coin"));
    EXPECT_TRUE(verify_determinism_iff_sharp(model, fair_coin_theory()).passed());
    const auto det_coin = with_coin_prime({{1.0, 0.0}, {0.0, 1.0}});
    const Report r = verify_determinism_iff_sharp(det_coin, fair_coin_theory());
    EXPECT_FALSE(r.passed());
    EXPECT_FALSE(r.find("deterministic implies sharp")->passed);
    EXPECT_TRUE(r.find("sharp implies deterministic")->passed);
}

TEST(MeasurementNC, EquivalentCoinsMustShareResponses) {
    EXPECT_TRUE(check_measurement_noncontextual(fair_coin_model(), fair_coin_theory()).passed());
    const auto split = with_coin_prime({{0.75, 0.25}, {0.25, 0.75}});
    const Report r = check_measurement_noncontextual(split, fair_coin_theory());
    ASSERT_FALSE(r.passed());
    EXPECT_NE(r.verdicts.front().violations.front().find("coin ~ coin'"), std::string::npos);
}

TEST(MeasurementNC, OutcomePermutationIsOptIn) {
    // A coin whose responses are swapped is equivalent under the outcome map [1,0].
    const auto swapped = with_coin_prime({{0.75, 0.25}, {0.25, 0.75}});
    auto responses = swapped.responses();
    responses["coin"] = {{0.25, 0.75}, {0.75, 0.25}};
    const OntologicalModel m(swapped.ontic_states(), swapped.epistemic(), responses);
    EXPECT_FALSE(check_measurement_noncontextual(m, fair_coin_theory()).passed());
    const Report perm = check_measurement_noncontextual(m, fair_coin_theory(), {1e-9, 1e-9, true});
    EXPECT_FALSE(perm.passed());
    bool saw_identity = false;
    for (const auto &v : perm.verdicts.front().violations) saw_identity |= v.find("[0,1]") != std::string::npos;
    EXPECT_TRUE(saw_identity);
}

TEST(PreparationNC, EqualStatisticsRequireEqualEpistemicStates) {
    const auto t = build_quantum_theory({{"a", DensityOperator::maximally_mixed(2)},
                                         {"b", DensityOperator::maximally_mixed(2)}},
                                        {{"Z", Povm::from_basis(Matrix::Identity(2, 2)), true}});
    const OntologicalModel good({"l0", "l1"}, {{"a", {0.5, 0.5}}, {"b", {0.5, 0.5}}},
                                {{"Z", {{1.0, 0.0}, {0.0, 1.0}}}});
    EXPECT_TRUE(check_preparation_noncontextual(good, t).passed());
    const OntologicalModel bad({"l0", "l1", "l2"}, {{"a", {0.5, 0.5, 0.0}}, {"b", {0.25, 0.25, 0.5}}},
                               {{"Z", {{1.0, 0.0, 0.5}, {0.0, 1.0, 0.5}}}});
    EXPECT_TRUE(empirical_adequacy(bad, t).passed());
    const Report r = check_preparation_noncontextual(bad, t);
    ASSERT_FALSE(r.passed());
    EXPECT_NE(r.verdicts.front().violations.front().find("a ~ b"), std::string::npos);
}

TEST(IntervalResponse, ValidatesTiling) {
    EXPECT_NO_THROW(IntervalResponse({{{0.0, 0.25}, {0.25, 0.75}}}));
    EXPECT_THROW(IntervalResponse({{{0.0, 0.25}, {0.5, 0.5}}}), Error);
    EXPECT_THROW(IntervalResponse({{{0.0, 0.25}, {0.25, 0.5}}}), Error);
}

TEST(IntervalResponse, ValuesAtCutPoints) {
    const IntervalResponse r({{{0.0, 0.25}, {0.25, 0.0}, {0.25, 0.75}}});
    EXPECT_EQ(r.value(0, 0, 0.0), 1);
    EXPECT_EQ(r.value(0, 0, 0.25), 0);
    EXPECT_EQ(r.value(1, 0, 0.25), 0);
    EXPECT_EQ(r.value(2, 0, 0.25), 1);
    EXPECT_EQ(r.value(2, 0, 1.0), 1);
    EXPECT_EQ(r.value(0, 0, 1.0), 0);
}

TEST(IntervalResponse, DisagreementOfBitFlip) {
    const IntervalResponse m = interval_response({{0.5}, {0.5}});
    const IntervalResponse flipped = m.relabelled({1, 0});
    EXPECT_DOUBLE_EQ(disagreement_measure(m, flipped, 0, 0), 1.0);
    EXPECT_DOUBLE_EQ(disagreement_measure(m, m, 0, 0), 0.0);
}

// Oracle for the extension: cut points are running sums of ξ over outcomes.
TEST(OnticExtension, CutPointsAreRunningSums) {
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<int> ontic(1, 10), outcomes(2, 5);
    for (int trial = 0; trial < 100; ++trial) {
        const auto inst = sample::random_diagonal_instance(rng, ontic(rng), outcomes(rng));
        const auto ext = ontic_extend(inst.model);
        for (const auto &[label, xi] : inst.model.responses()) {
            const auto &resp = ext.response(label);
            for (std::size_t s = 0; s < inst.model.ontic_count(); ++s) {
                double running = 0.0;
                for (std::size_t k = 0; k < xi.size(); ++k) {
                    EXPECT_EQ(resp.interval(k, s).lower, running);
                    EXPECT_EQ(resp.length(k, s), xi[k][s]);
                    running += xi[k][s];
                }
            }
        }
        EXPECT_EQ(adequacy_residuals(inst.model, inst.theory), extended_residuals(ext, inst.theory));
        EXPECT_TRUE(empirical_adequacy(inst.model, inst.theory).passed());
    }
}

TEST(OnticExtension, DiscretizedModelKeepsPredictions) {
    const auto t = fair_coin_theory();
    const auto d = discretize(ontic_extend(fair_coin_model()));
    EXPECT_TRUE(empirical_adequacy(d, t).passed());
    for (const auto &m : t.measurements()) EXPECT_TRUE(is_outcome_deterministic(d, m.label));
}

TEST(BitFlip, DemonstrationReproduces) {
    const Report r = appendix_c_demo();
    EXPECT_TRUE(r.passed());
    EXPECT_EQ(r.verdicts.size(), 6U);
    const Verdict *ctx = r.find("extended model fails measurement noncontextuality");
    ASSERT_NE(ctx, nullptr);
    EXPECT_NE(ctx->detail.find("M ~ M'"), std::string::npos);
}

TEST(BitFlip, ExtendedModelIsContextualButSystemModelIsNot) {
    const auto theory = fair_coin_pair_theory();
    EXPECT_TRUE(check_measurement_noncontextual(fair_coin_pair_model(), theory).passed());
    const auto discrete = discretize(bit_flip_extension());
    EXPECT_TRUE(empirical_adequacy(discrete, theory).passed());
    EXPECT_FALSE(check_measurement_noncontextual(discrete, theory).passed());
}

} // namespace
} // namespace ncwb
