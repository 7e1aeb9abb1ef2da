// Minimal tour of the library: evaluate the analytical model, cross-check it
// against a short Monte Carlo run, and search for the best guard radius.
//
// Build target: demo_quickstart

#include <cstdio>

#include "hetsec/analytic.hpp"
#include "hetsec/optimizer.hpp"
#include "hetsec/presets.hpp"
#include "hetsec/simulator.hpp"

int main() {
    using namespace hetsec;

    // Two-tier layout: macro BSs at 46 dBm, picos at 30 dBm, full-duplex
    // users and dedicated jammers at 23 dBm, selection threshold -80 dBW.
    const NetworkConfig cfg = baseline_config();
    const AnalyticContext ctx(cfg);

    std::printf("tier association shares:");
    for (int k = 0; k < ctx.tier_count(); ++k)
        std::printf(" %.3f", association_probability(ctx, k));
    std::printf("\n");

    // Connection and secrecy probabilities at 0 dB decoding thresholds.
    const double theta = 1.0;
    const double pc = connection_probability(ctx, theta);
    const double ps = secrecy_probability(ctx, theta);
    std::printf("analytic   P_c = %.4f   P_s = %.4f\n", pc, ps);

    // Same quantities from 500 random network realizations.
    const SinrBatch batch = run_batch(cfg, SimulationRegion{}, 500, /*seed=*/1,
                                      /*with_eavesdroppers=*/true);
    const TierwiseEstimate mc_pc = batch_connection(batch, theta);
    const TierwiseEstimate mc_ps = batch_secrecy(batch, theta);
    std::printf("simulated  P_c = %.4f +- %.4f   P_s = %.4f +- %.4f\n",
                mc_pc.overall.mean, mc_pc.overall.ci_half_width,
                mc_ps.overall.mean, mc_ps.overall.ci_half_width);

    // Pick decoding thresholds and a guard radius: maximize the connection
    // probability subject to a 90% secrecy target at 1 bps/Hz rate gap.
    // Coarse 25 m steps and loose quadrature keep the demo quick.
    const AnalyticContext search_ctx(cfg, QuadratureSettings{1e-4, 1e-12, 4000});
    OptimizerSettings settings;
    settings.step_m = 25.0;
    const QosRequirements qos{};  // target_secrecy = 0.9, target_rate = 1.0
    const OptimizationResult best = optimize_thresholds(search_ctx, qos, settings);
    std::printf("optimized  R_tau = %.0f m  theta_c = %.2f dB  theta_s = %.2f dB\n",
                best.r_tau_star, 10.0 * std::log10(best.theta_c_star),
                10.0 * std::log10(best.theta_s_star));
    std::printf("           P_c = %.4f with P_s = %.4f\n", best.achieved_pc,
                best.achieved_ps);
    return 0;
}
