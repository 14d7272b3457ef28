#include <doctest.h>

#include <cmath>
#include <random>

#include "bnnfit/errors.hpp"
#include "bnnfit/losses.hpp"
#include "gradcheck.hpp"
#include "oracles.hpp"

using namespace bnnfit;

namespace {

PointCloudFunction cloud(std::vector<double> xs, std::vector<double> ys) {
    return PointCloudFunction(std::move(xs), std::move(ys));
}

}  // namespace

TEST_SUITE("losses") {
    TEST_CASE("loss names round trip") {
        for (LossKind k : kAllLossKinds) CHECK(parse_loss_kind(to_string(k)) == k);
        CHECK_THROWS_AS(parse_loss_kind("huber"), InvalidArgument);
        CHECK(is_topological(LossKind::Pe));
        CHECK(is_topological(LossKind::Lwpe));
        CHECK_FALSE(is_topological(LossKind::Mse));
    }

    TEST_CASE("prediction at the reference abscissas") {
        const BaseConfiguration cfg({0.0, 1.0, 2.0}, {0.0, 2.0, 0.0});
        const auto pred = predict_cloud(cfg, cloud({0.0, 0.5, 1.0, 1.5, 2.0}, {9, 9, 9, 9, 9}));
        CHECK(pred.xs() == std::vector<double>{0.0, 0.5, 1.0, 1.5, 2.0});
        CHECK(pred.ys() == std::vector<double>{0.0, 1.0, 2.0, 1.0, 0.0});
        CHECK_THROWS_AS(predict_cloud(cfg, cloud({0.0, 3.0}, {1.0, 1.0})), SampleOutOfDomain);
    }

    TEST_CASE("classical loss values") {
        const auto ref = cloud({0.0, 1.0}, {0.0, 0.0});
        const auto pred = cloud({0.0, 1.0}, {1.0, -1.0});
        CHECK(classical_loss(pred, ref, LossKind::Mse) == 1.0);
        CHECK(classical_loss(pred, ref, LossKind::Rmse) == 1.0);
        CHECK(classical_loss(pred, ref, LossKind::Mae) == 1.0);
        CHECK(classical_loss(pred, ref, LossKind::LogCosh) == doctest::Approx(std::log(std::cosh(1.0))));
        CHECK(classical_loss(ref, ref, LossKind::LogCosh) == 0.0);

        // Large residuals must not overflow cosh.
        const auto far = cloud({0.0, 1.0}, {1000.0, -1000.0});
        CHECK(classical_loss(far, ref, LossKind::LogCosh) == doctest::Approx(1000.0 - std::log(2.0)));

        const auto mixed = cloud({0.0, 1.0, 2.0}, {3.0, 0.0, 0.0});
        const auto zero = cloud({0.0, 1.0, 2.0}, {0.0, 0.0, 0.0});
        CHECK(classical_loss(mixed, zero, LossKind::Mse) == 3.0);
        CHECK(classical_loss(mixed, zero, LossKind::Rmse) == doctest::Approx(std::sqrt(3.0)));
        CHECK(classical_loss(mixed, zero, LossKind::Mae) == 1.0);

        CHECK_THROWS_AS(classical_loss(cloud({0.0, 2.0}, {0.0, 0.0}), ref, LossKind::Mse), DimensionMismatch);
    }

    TEST_CASE("topological loss values") {
        // Reference bars have lengths {3, 1}; the monotone prediction has one bar.
        const auto ref = cloud({0.0, 1.0, 2.0, 3.0}, {0.0, 2.0, 1.0, 3.0});
        const auto pred = cloud({0.0, 1.0, 2.0, 3.0}, {0.0, 1.0, 2.0, 3.0});
        CHECK(topo_loss(pred, ref, LossKind::Pe) == doctest::Approx(0.5623351446));
        CHECK(topo_loss(pred, ref, LossKind::Lwpe) == doctest::Approx(2.2493405));
        CHECK(topo_loss(ref, ref, LossKind::Lwpe) == 0.0);
        CHECK(topo_loss(pred, ref, LossKind::Pe) == topo_loss(ref, pred, LossKind::Pe));
    }

    TEST_CASE("descriptor derivatives") {
        const std::vector<double> lengths{3.0, 1.0};
        const auto dw = lwpe_length_gradient(lengths);
        CHECK(dw[0] == doctest::Approx(-std::log(0.75)));
        CHECK(dw[0] == doctest::Approx(0.2876820725));
        CHECK(dw[1] == doctest::Approx(-std::log(0.25)));

        std::mt19937_64 rng(12);
        std::uniform_real_distribution<double> len(0.1, 4.0);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<double> ls(2 + trial % 6);
            for (auto& l : ls) l = len(rng);
            const auto dpe = pe_length_gradient(ls);
            const auto dlw = lwpe_length_gradient(ls);
            for (std::size_t j = 0; j < ls.size(); ++j) {
                const double fd_pe = oracle::central_difference(
                    [](const std::vector<double>& v) { return persistent_entropy(v); }, ls, j, 1e-6);
                const double fd_lw =
                    oracle::central_difference([](const std::vector<double>& v) { return lwpe(v); }, ls, j, 1e-6);
                CHECK(dpe[j] == doctest::Approx(fd_pe).epsilon(1e-6));
                CHECK(dlw[j] == doctest::Approx(fd_lw).epsilon(1e-6));
            }
        }
    }

    TEST_CASE("exact fit has zero loss and zero gradient") {
        // RMSE and MAE are not differentiable at a zero residual.
        const BaseConfiguration cfg({0.0, 1.0, 3.0}, {1.0, -1.0, 2.0});
        std::vector<double> xs, ys;
        for (int i = 0; i <= 30; ++i) {
            xs.push_back(0.1 * i);
            ys.push_back(oracle::interp(cfg.xs(), cfg.ys(), xs.back()));
        }
        const auto ref = cloud(xs, ys);
        for (LossKind k : {LossKind::Mse, LossKind::LogCosh}) {
            const auto r = loss_gradient(cfg, ref, k);
            CHECK(r.value <= 1e-24);
            for (double g : r.gradient_ys) CHECK(std::abs(g) <= 1e-12);
            for (double g : r.gradient_xs) CHECK(std::abs(g) <= 1e-12);
        }
    }

    TEST_CASE("constant reference rejects topological losses") {
        const auto flat = cloud({0.0, 1.0, 2.0}, {4.0, 4.0, 4.0});
        CHECK_THROWS_AS(LossEvaluator(flat, LossKind::Pe), DegenerateBarcode);
        CHECK_THROWS_AS(LossEvaluator(flat, LossKind::Lwpe), DegenerateBarcode);
        CHECK_NOTHROW(LossEvaluator(flat, LossKind::Mse));
    }

    TEST_CASE("value and evaluate agree") {
        std::mt19937_64 rng(31);
        const auto ref = gradcheck::smooth_reference(rng, 80, 0.0, 10.0);
        for (LossKind k : kAllLossKinds) {
            const LossEvaluator loss(ref, k);
            for (int trial = 0; trial < 20; ++trial) {
                const auto cfg = gradcheck::random_config(rng, 7, 0.0, 10.0);
                const auto pred = predict_cloud(cfg, ref);
                const double direct =
                    is_topological(k) ? topo_loss(pred, ref, k) : classical_loss(pred, ref, k);
                CHECK(loss.value(cfg) == doctest::Approx(direct).epsilon(1e-12));
                CHECK(loss.evaluate(cfg).value == doctest::Approx(direct).epsilon(1e-12));
            }
        }
    }

    TEST_CASE("analytic gradients match central differences") {
        std::mt19937_64 rng(2025);
        for (LossKind k : kAllLossKinds) {
            int checked = 0;
            int attempts = 0;
            while (checked < 100 && attempts < 5000) {
                ++attempts;
                const auto ref = gradcheck::smooth_reference(rng, 60, 0.0, 10.0);
                const LossEvaluator loss(ref, k);
                const auto cfg = gradcheck::random_config(rng, 8, 0.0, 10.0);
                if (!gradcheck::differentiable_here(cfg, loss)) continue;
                const auto r = gradcheck::compare(cfg, loss);
                if (r.gradient_norm < 1e-6) continue;
                ++checked;
                INFO("loss = " << to_string(k) << ", attempt " << attempts);
                CHECK(r.relative_error <= 1e-4);
            }
            CHECK(checked == 100);
        }
    }

    TEST_CASE("classical losses ignore sample order") {
        std::mt19937_64 rng(6);
        const auto ref = gradcheck::smooth_reference(rng, 40, 0.0, 5.0);
        const auto cfg = gradcheck::random_config(rng, 6, 0.0, 5.0);
        std::vector<std::pair<double, double>> shuffled;
        for (std::size_t i = 0; i < ref.size(); ++i) shuffled.emplace_back(ref.xs()[i], ref.ys()[i]);
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        const PointCloudFunction permuted(shuffled);
        for (LossKind k : kAllLossKinds) {
            CHECK(LossEvaluator(permuted, k).value(cfg) == LossEvaluator(ref, k).value(cfg));
        }
    }

    TEST_CASE("entropy loss is blind to amplitude, LWPE is not") {
        // Scaling the reference about its minimum scales every bar length.
        std::mt19937_64 rng(44);
        const auto ref = gradcheck::smooth_reference(rng, 100, 0.0, 10.0);
        const double lo = *std::min_element(ref.ys().begin(), ref.ys().end());
        std::vector<double> tall(ref.ys());
        for (auto& y : tall) y = lo + 3.0 * (y - lo);
        const PointCloudFunction scaled(ref.xs(), tall);
        const LossEvaluator pe_a(ref, LossKind::Pe), pe_b(scaled, LossKind::Pe);
        const LossEvaluator lw_a(ref, LossKind::Lwpe), lw_b(scaled, LossKind::Lwpe);
        CHECK(std::abs(pe_a.reference_descriptor() - pe_b.reference_descriptor()) <= 1e-12);
        CHECK(lw_b.reference_descriptor() == doctest::Approx(3.0 * lw_a.reference_descriptor()).epsilon(1e-12));
        if (lw_a.reference_descriptor() > 0.0) {
            const auto cfg = gradcheck::random_config(rng, 6, 0.0, 10.0);
            CHECK(lw_a.value(cfg) != doctest::Approx(lw_b.value(cfg)));
        }
    }
}
