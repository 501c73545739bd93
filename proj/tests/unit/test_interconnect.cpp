/*
 Copyright 2026 The behavioral-ibc Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/
#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "ibc/errors.hpp"
#include "ibc/experiment.hpp"
#include "ibc/interconnect.hpp"
#include "oracles.hpp"

using namespace ibc;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

Trajectory from_oracle(const oracle::DiscreteTf& g, int length, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    const VectorXd u = oracle::uniform(rng, length);
    return {u, oracle::filter(g, u), 1.0, {}};
}

MatrixXd windows(const VectorXd& u, const VectorXd& y, int depth)
{
    MatrixXd w(2 * depth, u.size() - depth + 1);
    w << oracle::hankel(u, depth), oracle::hankel(y, depth);
    return w;
}

} // namespace

TEST(Regenerate, ZeroInput)
{
    const RegenerationContext ctx(fixture::record(fixture::plant(), 8, 1), 2, 2);
    EXPECT_EQ(oracle::max_abs(ctx.regenerate(VectorXd::Zero(40))), 0.0);
}

TEST(Regenerate, MatchesZeroStateResponse)
{
    const DiscreteStateSpace g = fixture::plant();
    const RegenerationContext ctx(fixture::record(g, 8, 2), 2, 2);
    std::mt19937_64 rng(3);
    const VectorXd u = oracle::uniform(rng, 1000);
    EXPECT_LT(oracle::max_rel_error(ctx.regenerate(u), oracle::filter(fixture::plant_oracle(), u)), 1e-7);
}

TEST(Regenerate, Linear)
{
    const RegenerationContext ctx(fixture::record(fixture::plant(), 8, 2), 2, 2);
    std::mt19937_64 rng(4);
    const VectorXd u = oracle::uniform(rng, 200);
    const VectorXd y = ctx.regenerate(u);
    EXPECT_LT(oracle::max_abs(ctx.regenerate(-3.5 * u) + 3.5 * y), 1e-10 * oracle::max_abs(y) * 3.5 + 1e-12);
}

TEST(Regenerate, LongRunStaysFinite)
{
    const RegenerationContext ctx(fixture::record(fixture::plant(), 8, 5), 2, 2);
    std::mt19937_64 rng(6);
    const VectorXd y = ctx.regenerate(oracle::uniform(rng, 10000));
    EXPECT_TRUE(y.allFinite());
}

TEST(Regenerate, UncertifiedDataRejected)
{
    EXPECT_THROW(RegenerationContext(fixture::record(fixture::plant(), 6, 1), 2, 2), CertificationError);
    EXPECT_THROW(RegenerationContext(fixture::record(fixture::plant(), 8, 1), 1, 2), ConfigError);
}

TEST(ZeroIc, RestDataUnchanged)
{
    const Trajectory t = fixture::record(fixture::plant(), 30, 7);
    const Trajectory z = zero_ic_trajectory(t, 2, 2);
    EXPECT_EQ(z.u, t.u);
    EXPECT_LT(oracle::max_abs(z.y - t.y), 1e-9);
}

TEST(ZeroIc, RemovesFreeResponse)
{
    const DiscreteStateSpace g = fixture::plant();
    std::mt19937_64 rng(8);
    const VectorXd u = oracle::uniform(rng, 60);
    VectorXd x0(2);
    x0 << 1.0, -2.0;
    const Trajectory t{u, simulate(g, u, x0), g.ts(), {}};
    const Trajectory z = zero_ic_trajectory(t, 2, 2);
    const VectorXd free = simulate(g, VectorXd::Zero(60), x0);
    EXPECT_LT(oracle::max_abs(t.y - z.y - free), 1e-8);
}

TEST(ZeroIc, ZeroInputAnyState)
{
    const DiscreteStateSpace g = fixture::plant();
    // certify on rest data, then regenerate a zero input
    const RegenerationContext ctx(fixture::record(g, 8, 9), 2, 2);
    EXPECT_EQ(oracle::max_abs(ctx.regenerate(VectorXd::Zero(20))), 0.0);
}

TEST(Series, MatchesCascadeSimulation)
{
    const DiscreteStateSpace g1 = fixture::plant();
    // 1/(s+1) sampled at 0.01
    const oracle::DiscreteTf g2 = oracle::zoh_partial_fractions({1.0}, {1.0, 1.0}, {-1.0}, 0.01);
    std::mt19937_64 rng(10);
    const VectorXd u1 = oracle::uniform(rng, 150);
    VectorXd x0(2);
    x0 << 0.5, 0.1;
    const Trajectory w1{u1, simulate(g1, u1, x0), 0.01, "g1"};
    const Trajectory w2 = [&] {
        const VectorXd u = oracle::uniform(rng, 10);
        return Trajectory{u, oracle::filter(g2, u), 0.01, "g2"};
    }();
    const auto ws = series(w1, w2, 2, 1);
    EXPECT_EQ(ws.kind, InterconnectionKind::series);
    EXPECT_EQ(ws.u, u1);
    EXPECT_EQ(ws.y.size(), u1.size());
    EXPECT_LT(oracle::max_rel_error(ws.y, oracle::filter(g2, w1.y)), 1e-7);
}

TEST(Series, StaticGain)
{
    const Trajectory w1 = fixture::record(fixture::plant(), 40, 11);
    const Trajectory w2 = from_oracle({{2.5}, {1.0}}, 6, 12);
    const auto ws = series(w1, w2, 1, 0);
    EXPECT_LT(oracle::max_abs(ws.y - 2.5 * w1.y), 1e-12);
}

TEST(Series, ZeroInputFromRest)
{
    const Trajectory w1{VectorXd::Zero(20), VectorXd::Zero(20), 1.0, {}};
    const Trajectory w2 = from_oracle({{0.0, 1.0}, {1.0, -0.5}}, 8, 13);
    EXPECT_EQ(oracle::max_abs(series(w1, w2, 1, 1).y), 0.0);
}

TEST(Series, LengthFollowsFirstRecord)
{
    const Trajectory w1 = from_oracle({{0.0, 1.0}, {1.0, -0.5}}, 33, 14);
    const Trajectory w2 = from_oracle({{0.0, 0.4}, {1.0, 0.2}}, 90, 15);
    EXPECT_EQ(series(w1, w2, 1, 1).y.size(), 33);
}

TEST(Feedback, ZeroSecondSystemIsOpenLoop)
{
    const Trajectory w1 = fixture::record(fixture::plant(), 40, 16);
    const Trajectory w2{VectorXd::LinSpaced(6, 1.0, 6.0), VectorXd::Zero(6), 1.0, {}};
    const auto wf = feedback(w1, w2, 1, 0);
    EXPECT_EQ(wf.kind, InterconnectionKind::positive_feedback);
    EXPECT_LT(oracle::max_abs(wf.u - w1.u), 1e-15);
    EXPECT_EQ(wf.y, w1.y);
}

TEST(Feedback, StaticLoopGain)
{
    const double g1 = 0.8;
    const double g2 = 0.5;
    const Trajectory w1 = from_oracle({{g1}, {1.0}}, 30, 17);
    const Trajectory w2 = from_oracle({{g2}, {1.0}}, 6, 18);
    const auto wf = feedback(w1, w2, 1, 0);
    for (Eigen::Index t = 0; t < wf.u.size(); ++t) {
        if (std::abs(wf.u(t)) > 1e-6) EXPECT_NEAR(wf.y(t) / wf.u(t), g1 / (1.0 - g1 * g2), 1e-10);
    }
}

TEST(Feedback, AdmissibleForClosedLoop)
{
    std::mt19937_64 sys_rng(19);
    oracle::DiscreteTf g1, g2;
    do {
        g1 = oracle::random_stable(sys_rng, 2);
        g2 = oracle::random_stable(sys_rng, 1);
    } while (!oracle::is_stable(oracle::positive_feedback(g1, g2).a));
    const Trajectory w1 = from_oracle(g1, 120, 20);
    const Trajectory w2 = from_oracle(g2, 10, 21);
    const auto wf = feedback(w1, w2, 1, 1);
    const oracle::DiscreteTf gf = oracle::positive_feedback(g1, g2);
    const Trajectory rich = from_oracle(gf, 400, 22);
    const int depth = 8;
    EXPECT_LT(oracle::column_space_residual(windows(rich.u, rich.y, depth), windows(wf.u, wf.y, depth)), 1e-7);
}

TEST(NegativeFeedback, SignFlip)
{
    const Trajectory w1 = from_oracle({{0.0, 1.0}, {1.0, -0.3}}, 50, 23);
    const Trajectory w2 = from_oracle({{0.0, 0.7}, {1.0, 0.4}}, 10, 24);
    const auto pos = feedback(w1, w2, 1, 1);
    const auto neg = negative_feedback(w1, w2, 1, 1);
    EXPECT_LT(oracle::max_abs((pos.u - w1.u) + (neg.u - w1.u)), 1e-12);
    EXPECT_EQ(neg.kind, InterconnectionKind::negative_feedback);
}

TEST(Parallel, SumsOutputs)
{
    const oracle::DiscreteTf g1{{0.0, 1.0}, {1.0, -0.3}};
    const oracle::DiscreteTf g2{{0.0, 0.7}, {1.0, 0.4}};
    const Trajectory w1 = from_oracle(g1, 50, 25);
    const Trajectory w2 = from_oracle(g2, 10, 26);
    const auto wp = parallel(w1, w2, 1, 1);
    EXPECT_LT(oracle::max_abs(wp.y - w1.y - oracle::filter(g2, w1.u)), 1e-9);
}

TEST(Interconnect, SecondRecordMustCertify)
{
    const Trajectory w1 = fixture::record(fixture::plant(), 20, 27);
    const Trajectory w2 = from_oracle({{0.0, 1.0, 0.2}, {1.0, -0.3, 0.02}}, 4, 28);
    EXPECT_THROW(series(w1, w2, 2, 2), CertificationError);
}

TEST(UnifiedTrajectory, FilteredSignals)
{
    const Trajectory t = fixture::record(fixture::plant(), 50, 29);
    const ImcFilter f = make_imc_filter(0.5, 0.01, 1);
    const auto wc = unified_controller_trajectory(t.u, t.y, f);
    EXPECT_EQ(wc.kind, InterconnectionKind::controller);
    const oracle::DiscreteTf fo = oracle::imc_filter(0.5, 0.01, 1);
    EXPECT_LT(oracle::max_abs(wc.u - (t.y - oracle::filter(fo, t.y))), 1e-12);
    EXPECT_LT(oracle::max_abs(wc.y - oracle::filter(fo, t.u)), 1e-12);
}

TEST(UnifiedTrajectory, FastestFilterIsOneSampleDelay)
{
    // tau = Ts gives F = z^-1: ubar is u delayed, y - ybar is the first difference of y.
    const Trajectory t = fixture::record(fixture::plant(), 30, 30);
    const auto wc = unified_controller_trajectory(t.u, t.y, make_imc_filter(0.01, 0.01, 1));
    EXPECT_EQ(wc.y(0), 0.0);
    EXPECT_LT(oracle::max_abs(wc.y.tail(29) - t.u.head(29)), 1e-15);
    EXPECT_LT(oracle::max_abs(wc.u.tail(29) - (t.y.tail(29) - t.y.head(29))), 1e-15);
}

TEST(UnifiedTrajectory, ControllerPredictionMatchesParametricController)
{
    // C = G^-1 F / (1 - F). With G = z^-1 b(z^-1)/a(z^-1) and F = z^-1 c / p(z^-1),
    // C = c a / (b (p - c z^-1)).
    const DiscreteStateSpace g = fixture::plant();
    const Trajectory t = fixture::record(g, 7, 31);
    const ImcFilter f = make_imc_filter(0.5, 0.01, 1);
    const auto wc = unified_controller_trajectory(t.u, t.y, f);
    ForwardDataMatrix hc = build_controller_matrix(wc.u, wc.y, 2).blocks;
    ASSERT_TRUE(hc.certify(2).pass);
    const ForwardPredictor pc(hc);

    const oracle::DiscreteTf go = fixture::plant_oracle();
    const oracle::DiscreteTf fo = oracle::imc_filter(0.5, 0.01, 1);
    const oracle::Poly b(go.b.begin() + 1, go.b.end());
    const oracle::Poly c(fo.b.begin() + 1, fo.b.end());
    const oracle::Poly p_minus = oracle::poly_add(fo.a, oracle::poly_scale(oracle::poly_mul({0.0, 1.0}, c), -1.0));
    const oracle::DiscreteTf ctrl{oracle::poly_mul(c, go.a), oracle::poly_mul(b, p_minus)};

    std::mt19937_64 rng(32);
    const VectorXd e = oracle::uniform(rng, 300);
    const VectorXd u = oracle::filter(ctrl, e);
    for (Eigen::Index k = 2; k < e.size(); ++k) {
        EXPECT_NEAR(pc.predict(e.segment(k - 2, 2), e(k), u.segment(k - 2, 2)), u(k),
                    1e-6 * std::max(1.0, oracle::max_abs(u)));
    }
}
