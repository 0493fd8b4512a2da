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


// Acceptance driver: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "ncwb/assign.hpp"
#include "ncwb/demos.hpp"
#include "ncwb/io.hpp"
#include "ncwb/ontology.hpp"
#include "ncwb/wigner.hpp"
#include "oracles.hpp"

namespace {

using namespace ncwb;

int failures = 0;

void report(int n, bool ok, const std::string &detail) {
    std::printf("AC%d %s: %s\n", n, ok ? "PASS" : "FAIL", detail.c_str());
    failures += ok ? 0 : 1;
}

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

template <typename F> void guarded(int n, F &&f) {
    try {
        f();
    } catch (const std::exception &e) {
        report(n, false, std::string("exception: ") + e.what());
    }
}

void ac1() {
    const auto det = fair_coin_problem(AssignmentMode::deterministic);
    const auto spec = fair_coin_problem(AssignmentMode::spectral);
    const auto d = enumerate_deterministic_assignments(det);
    const auto s = enumerate_spectral_assignments(spec);
    const bool unique_half = s.size() == 1 && std::abs(s[0].values[0] - 0.5) <= 1e-9;
    report(1, d.empty() && oracle::brute_force(det).empty() && unique_half,
           "deterministic " + std::to_string(d.size()) + " assignments, spectral " + std::to_string(s.size()) +
               " with w(I/2) = " + (s.empty() ? std::string("-") : num(s[0].values[0])));
}

void ac2() {
    const auto p = cabello_nakamura_problem();
    const std::size_t candidates = std::size_t{1} << p.effects().size();
    const auto d = enumerate_deterministic_assignments(p);
    report(2, candidates == 64 && p.relations().size() == 3 && d.empty() && oracle::brute_force(p).empty(),
           std::to_string(candidates) + " candidates, " + std::to_string(d.size()) + " assignments");
}

void ac3() {
    auto p = coarse_grain_paradox_problem(1.0 / 3.0, 0.25);
    const auto d = enumerate_deterministic_assignments(p);
    p.set_mode(AssignmentMode::spectral);
    const auto s = enumerate_spectral_assignments(p);
    bool scalar_ok = s.size() == 1;
    for (std::size_t i = 0; scalar_ok && i < p.effects().size(); ++i) {
        const Matrix &m = p.effects()[i].matrix();
        const double c = m(0, 0).real();
        scalar_ok = max_abs(m - c * Matrix::Identity(m.rows(), m.cols())) == 0.0 && std::abs(s[0].values[i] - c) <= 1e-12;
    }
    report(3, d.empty() && oracle::brute_force(coarse_grain_paradox_problem()).empty() && scalar_ok,
           "deterministic " + std::to_string(d.size()) + ", spectral " + std::to_string(s.size()) +
               (scalar_ok ? " with w(sI) = s" : " (w(sI) = s violated)"));
}

void ac4() {
    const auto p = trine_problem();
    Matrix sum = Matrix::Zero(2, 2);
    bool spectra_ok = p.effects().size() == 3;
    for (const auto &e : p.effects()) {
        sum += e.matrix();
        Eigen::SelfAdjointEigenSolver<Matrix> es(e.matrix());
        const auto ev = es.eigenvalues();
        spectra_ok = spectra_ok && std::abs(ev(0)) <= 1e-9 && std::abs(ev(1) - 2.0 / 3.0) <= 1e-9;
    }
    const double gap = max_abs(sum - Matrix::Identity(2, 2));
    const auto s = enumerate_spectral_assignments(p);
    report(4, gap <= 1e-9 && spectra_ok && s.empty(),
           "normalization gap " + num(gap) + ", spectral assignments " + std::to_string(s.size()));
}

void ac5() {
    const auto p = pauli_projector_problem();
    const auto vals = enumerate_deterministic_assignments(p);
    bool all_ok = vals.size() == 8;
    double worst_norm_gap = 0.0;
    for (const auto &v : vals) {
        const auto cert = gleason_feasibility(p.effects(), v.values);
        const auto r = oracle::bloch_vector(v.values);
        const double oracle_norm = std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]);
        worst_norm_gap = std::max({worst_norm_gap, std::abs(oracle_norm - std::sqrt(3.0)),
                                   cert.bloch_norm ? std::abs(*cert.bloch_norm - oracle_norm) : 1.0});
        all_ok = all_ok && check_ks_rules(v, p).passed() && !cert.feasible &&
                 cert.witness == GleasonCertificate::Witness::positivity && cert.unique;
    }
    all_ok = all_ok && worst_norm_gap <= 1e-9;

    // Recovery of a known state from its Born values.
    Matrix rho0(2, 2);
    rho0 << 0.7, Complex(0.1, -0.2), Complex(0.1, 0.2), 0.3;
    std::vector<double> w;
    for (const auto &e : p.effects()) w.push_back((rho0 * e.matrix()).trace().real());
    const auto cert = gleason_feasibility(p.effects(), w);
    const double rec = cert.rho ? max_abs(cert.rho->matrix() - rho0) : 1.0;
    report(5, all_ok && cert.feasible && rec <= 1e-8,
           std::to_string(vals.size()) + " KS valuations, all PSD-infeasible, max |Bloch norm - sqrt 3| " +
               num(worst_norm_gap) + ", recovery error " + num(rec));
}

void ac6() {
    const auto [first, second] = fair_coin_naimark_pair();
    const HermitianOperator half(0.5 * Matrix::Identity(2, 2));
    const Povm target = Povm::from_operators({half, half});
    const double r1 = first.residue(target);
    const double r2 = second.residue(target, true);

    const Vector a = basis_ket(3, 2);
    const Matrix probe = kron(Matrix(0.5 * Matrix::Identity(2, 2)), Matrix(a * a.adjoint()));
    auto stats = [&](const Povm &m) {
        std::vector<double> out;
        for (const auto &e : m.effects()) out.push_back((probe * e.matrix()).trace().real());
        return out;
    };
    const auto s1 = stats(first.joint_pvm), s2 = stats(second.joint_pvm);
    const bool s1_ok = s1.size() == 2 && std::abs(s1[0] - 0.5) <= 1e-9 && std::abs(s1[1] - 0.5) <= 1e-9;
    const bool s2_ok = s2.size() == 3 && std::abs(s2[0]) <= 1e-9 && std::abs(s2[1]) <= 1e-9 && std::abs(s2[2] - 1.0) <= 1e-9;
    report(6, r1 <= 1e-9 && r2 <= 1e-9 && s1_ok && s2_ok,
           "residues " + num(r1) + ", " + num(r2) + "; probe gives (" + num(s1.at(0)) + ", " + num(s1.at(1)) +
               ") and (" + num(s2.at(0)) + ", " + num(s2.at(1)) + ", " + num(s2.at(2)) + ")");
}

void ac7() {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> ontic_d(1, 10), outcome_d(2, 5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int bad = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const auto inst = sample::random_diagonal_instance(rng, ontic_d(rng), outcome_d(rng));
        const auto ext = ontic_extend(inst.model);
        bool ok = true;
        for (const auto &[label, resp] : ext.responses) {
            const auto &xi = inst.model.xi(label);
            for (std::size_t s = 0; s < resp.ontic_count(); ++s) {
                for (std::size_t k = 0; k < resp.outcomes(); ++k) ok = ok && resp.length(k, s) == xi[k][s];
                for (int probe = 0; probe < 20; ++probe) {
                    const double a = u(rng);
                    int ones = 0;
                    for (std::size_t k = 0; k < resp.outcomes(); ++k) {
                        const int v = resp.value(k, s, a);
                        ok = ok && (v == 0 || v == 1);
                        ones += v;
                    }
                    ok = ok && ones == 1;
                }
            }
        }
        ok = ok && extended_residuals(ext, inst.theory) == adequacy_residuals(inst.model, inst.theory) &&
             extended_adequacy(ext, inst.theory).passed();
        bad += ok ? 0 : 1;
    }
    report(7, bad == 0, "100 random instances, " + std::to_string(bad) + " violations");
}

void ac8() {
    const auto base = fair_coin_pair_model();
    const bool system_equal = base.xi("M") == base.xi("M'") && base.xi("M")[0][0] == 0.5 && base.xi("M")[1][0] == 0.5;
    const auto ext = bit_flip_extension();
    const double gap0 = disagreement_measure(ext.response("M"), ext.response("M'"), 0, 0);
    const double gap1 = disagreement_measure(ext.response("M"), ext.response("M'"), 1, 0);
    report(8, system_equal && gap0 == 1.0 && gap1 == 1.0 && extended_adequacy(ext, fair_coin_pair_theory()).passed(),
           "system responses (1/2, 1/2) for both; extended responses disagree on ancilla measure " + num(gap0));
}

void ac9() {
    const auto theory = wigner::stabilizer_fragment();
    const auto model = wigner::wigner_model(theory);
    double worst = 0.0;
    std::size_t entries = 0;
    for (std::size_t m = 0; m < theory.measurements().size(); ++m) {
        const auto &xi = model.xi(theory.measurements()[m].label);
        for (std::size_t p = 0; p < theory.preparations().size(); ++p) {
            const auto &mu = model.mu(theory.preparations()[p].label);
            ++entries;
            for (std::size_t k = 0; k < xi.size(); ++k) {
                double pred = 0.0;
                for (std::size_t l = 0; l < mu.size(); ++l) pred += mu[l] * xi[k][l];
                const double born_p =
                    (theory.preparations()[p].rho.matrix() * theory.measurements()[m].povm.effect(k).matrix()).trace().real();
                worst = std::max(worst, std::abs(pred - born_p));
            }
        }
    }
    std::size_t sharp = 0, unsharp = 0;
    for (const auto &m : theory.measurements()) (m.sharp ? sharp : unsharp) += 1;
    const auto rep = wigner::verify_subtheory_noncontextual_model();
    const auto magic = wigner::wigner_distribution(wigner::strange_state());
    const double min_magic = *std::min_element(magic.begin(), magic.end());
    report(9, entries == 130 && worst <= 1e-9 && sharp == 4 && unsharp == 6 && rep.passed() && min_magic < -1e-9,
           std::to_string(entries) + " entries, max residual " + num(worst) + ", " + std::to_string(rep.verdicts.size()) +
               " verdicts " + (rep.passed() ? "pass" : "fail") + ", magic-state min mu " + num(min_magic));
}

void ac10() {
    std::mt19937_64 rng(10);
    std::uniform_int_distribution<int> dim_d(1, 4);
    int bad = 0, projectors = 0;
    for (int i = 0; i < 50; ++i) {
        const Effect e = sample::random_effect(rng, dim_d(rng), i);
        Eigen::SelfAdjointEigenSolver<Matrix> es(e.matrix());
        const Eigen::VectorXd ev = es.eigenvalues();
        const bool proj = is_projector(e.op());
        projectors += proj ? 1 : 0;
        bool ok = true;
        bool all_binary = true;
        for (double w : response_values_over_valuations(e)) {
            double nearest = 1.0;
            for (Eigen::Index j = 0; j < ev.size(); ++j) nearest = std::min(nearest, std::abs(ev(j) - w));
            ok = ok && nearest <= 1e-7;
            all_binary = all_binary && (std::abs(w) <= 1e-9 || std::abs(w - 1.0) <= 1e-9);
        }
        ok = ok && all_binary == proj;
        const auto sr = spectral_realization(e);
        const Povm back = post_process(sr.pvm, sr.map);
        ok = ok && max_abs(back.effect(sr.distinguished_outcome).matrix() - e.matrix()) <= 1e-9;
        ok = ok && sr.intrinsically_random == !proj;
        bad += ok ? 0 : 1;
    }
    report(10, bad == 0 && projectors > 0 && projectors < 50,
           "50 random effects (" + std::to_string(projectors) + " projectors), " + std::to_string(bad) + " violations");
}

bool agrees(const AssignmentProblem &p) {
    const auto lib = enumerate_deterministic_assignments(p);
    if (p.refined()) {
        const auto ref = oracle::brute_force_refined(p);
        return lib.size() == ref.count() && oracle::slot_projection(lib, variable_layout(p)) == ref.slot_vectors;
    }
    std::vector<std::vector<double>> values;
    for (const auto &a : lib) values.push_back(a.values);
    return values == oracle::brute_force(p);
}

void ac11() {
    int checked = 0, bad = 0;
    const std::string dir = NCWB_FIXTURES_DIR;
    for (const char *name : {"fair-coin.problem.json", "cabello-nakamura.json", "same-effect-twice.json",
                             "coarse-grain-paradox.json", "trine.json", "pauli-projectors.json"}) {
        auto p = io::problem_from_json(io::read_file(dir + "/" + name));
        p.set_mode(AssignmentMode::deterministic);
        ++checked;
        bad += agrees(p) ? 0 : 1;
    }
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const auto p = oracle::random_problem(rng, 12);
        ++checked;
        bad += (p.effects().size() <= 12 && agrees(p)) ? 0 : 1;
    }
    report(11, bad == 0, std::to_string(checked) + " problems compared, " + std::to_string(bad) + " disagreements");
}

} // namespace

int main() {
    guarded(1, ac1);
    guarded(2, ac2);
    guarded(3, ac3);
    guarded(4, ac4);
    guarded(5, ac5);
    guarded(6, ac6);
    guarded(7, ac7);
    guarded(8, ac8);
    guarded(9, ac9);
    guarded(10, ac10);
    guarded(11, ac11);
    std::printf("%d of 11 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
