#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"

using namespace tensorclt;
using tctest::random_dense;
using tctest::random_double;

namespace {

/// Direct alternating-sign evaluation of the projection sum; the oracle for
/// the axis-centering implementation.
DenseTensor hoeffding_by_subsets(const DenseTensor& a) {
    const int s = a.s, n = a.n;
    std::vector<DenseTensor> proj(1u << s);
    for (std::uint32_t bits = 0; bits < (1u << s); ++bits)
        proj[bits] = project_single(a, SubsetMask(s, bits), ProjectionMode::avg);
    DenseTensor out(s, n);
    std::vector<int> digits(s);
    for (std::size_t off = 0; off < out.size(); ++off) {
        std::size_t rem = off;
        for (int k = s - 1; k >= 0; --k) {
            digits[k] = static_cast<int>(rem % n) + 1;
            rem /= n;
        }
        double acc = 0.0;
        for (std::uint32_t bits = 0; bits < (1u << s); ++bits) {
            std::vector<int> restricted;
            for (int slot = 1; slot <= s; ++slot)
                if ((bits >> (slot - 1)) & 1u) restricted.push_back(digits[slot - 1]);
            const double term = proj[bits].at(restricted);
            acc += ((s - __builtin_popcount(bits)) % 2 == 0) ? term : -term;
        }
        out.values[off] = acc;
    }
    return out;
}

}  // namespace

TEST_CASE("project_single: grand mean, identity, row sums") {
    DenseTensor a(1, 3, {1, 2, 3});
    auto mean = project_single(a, SubsetMask::empty(1), ProjectionMode::avg);
    CHECK(mean.s == 0);
    CHECK(mean.values[0] == doctest::Approx(2.0));
    auto same = project_single(a, SubsetMask::full(1), ProjectionMode::sum);
    CHECK(same.values == a.values);

    DenseTensor ones(2, 2, {1, 1, 1, 1});
    auto rows = project_single(ones, SubsetMask(2, 0b01), ProjectionMode::sum);
    CHECK(rows.values == std::vector<double>{2, 2});
}

TEST_CASE("hoeffding_single: centering and cancellation") {
    DenseTensor a(1, 3, {1, 2, 3});
    CHECK(hoeffding_single(a).values == std::vector<double>{-1, 0, 1});

    DenseTensor c(3, 2, std::vector<double>(8, 4.2));
    for (double v : hoeffding_single(c).values) CHECK(v == doctest::Approx(0.0));

    DenseTensor m(2, 2, {1, 0, 0, 1});
    auto h = hoeffding_single(m);
    CHECK(h.values[0] == doctest::Approx(0.5));
    CHECK(h.values[1] == doctest::Approx(-0.5));
    CHECK(h.values[2] == doctest::Approx(-0.5));
    CHECK(h.values[3] == doctest::Approx(0.5));
}

TEST_CASE("axis centering equals the alternating subset sum") {
    Rng rng(3);
    for (int s : {1, 2, 3}) {
        for (int n : {2, 3, 4}) {
            DenseTensor a = random_dense(s, n, rng);
            auto fast = hoeffding_single(a);
            auto direct = hoeffding_by_subsets(a);
            for (std::size_t k = 0; k < fast.size(); ++k)
                CHECK(fast.values[k] == doctest::Approx(direct.values[k]).epsilon(1e-12));
        }
    }
}

TEST_CASE("project_double: grand mean, identity, product factorization") {
    DoubleTensor ones(1, 2, {1, 1, 1, 1});
    auto grand = project_double(ones, SubsetMask::empty(1), SubsetMask::empty(1));
    CHECK(grand.values[0] == doctest::Approx(1.0));

    Rng rng(5);
    DoubleTensor z = random_double(2, 3, rng);
    auto same = project_double(z, SubsetMask::full(2), SubsetMask::full(2));
    CHECK(same.values == z.values);

    // z(i,p) = a(i) b(p) => A_{F,G}[z] = A_F[a] (x) A_G[b]
    DenseTensor a = random_dense(2, 3, rng), b = random_dense(2, 3, rng);
    DoubleTensor prod(2, 3);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t p = 0; p < b.size(); ++p)
            prod.values[i * b.size() + p] = a.values[i] * b.values[p];
    for (std::uint32_t fb = 0; fb < 4; ++fb) {
        for (std::uint32_t gb = 0; gb < 4; ++gb) {
            auto lhs = project_double(prod, SubsetMask(2, fb), SubsetMask(2, gb));
            auto fa = project_single(a, SubsetMask(2, fb), ProjectionMode::avg);
            auto gb_t = project_single(b, SubsetMask(2, gb), ProjectionMode::avg);
            for (std::size_t i = 0; i < fa.size(); ++i)
                for (std::size_t p = 0; p < gb_t.size(); ++p)
                    CHECK(lhs.values[i * gb_t.size() + p] ==
                          doctest::Approx(fa.values[i] * gb_t.values[p]).epsilon(1e-12));
        }
    }
}

TEST_CASE("hoeffding_double: double centering, constants, product coherence") {
    DoubleTensor z(1, 2, {1, 0, 0, 1});
    auto h = hoeffding_double(z);
    CHECK(h.values[0] == doctest::Approx(0.5));
    CHECK(h.values[1] == doctest::Approx(-0.5));
    CHECK(h.values[2] == doctest::Approx(-0.5));
    CHECK(h.values[3] == doctest::Approx(0.5));

    DoubleTensor c(2, 2, std::vector<double>(16, -3.7));
    for (double v : hoeffding_double(c).values) CHECK(v == doctest::Approx(0.0));

    // product coherence: H[a b](i,p) = H[a](i) H[b](p)
    Rng rng(9);
    for (int s : {1, 2}) {
        for (int n : {2, 3, 4}) {
            DenseTensor a = random_dense(s, n, rng), b = random_dense(s, n, rng);
            DoubleTensor prod(s, n);
            const std::size_t half = a.size();
            for (std::size_t i = 0; i < half; ++i)
                for (std::size_t p = 0; p < half; ++p)
                    prod.values[i * half + p] = a.values[i] * b.values[p];
            auto h2 = hoeffding_double(prod);
            auto ha = hoeffding_single(a), hb = hoeffding_single(b);
            double scale = 0.0;
            for (double v : prod.values) scale = std::max(scale, std::abs(v));
            for (std::size_t i = 0; i < half; ++i)
                for (std::size_t p = 0; p < half; ++p)
                    CHECK(h2.values[i * half + p] ==
                          doctest::Approx(ha.values[i] * hb.values[p]).epsilon(1e-12).scale(scale));
        }
    }
}

TEST_CASE("idempotence at 1e-12 relative") {
    Rng rng(13);
    for (int s : {1, 2, 3}) {
        DoubleTensor z = random_double(s, 4, rng);
        auto h1 = hoeffding_double(z);
        auto h2 = hoeffding_double(h1);
        const double scale = std::max(1e-300, h1.max_abs());
        for (std::size_t k = 0; k < h1.size(); ++k)
            CHECK(std::abs(h1.values[k] - h2.values[k]) <= 1e-12 * scale);
    }
}

TEST_CASE("linearity up to floating rounding") {
    Rng rng(17);
    DoubleTensor z1 = random_double(2, 3, rng), z2 = random_double(2, 3, rng);
    const double a = 1.7, b = -0.3;
    DoubleTensor mix(2, 3);
    for (std::size_t k = 0; k < mix.size(); ++k)
        mix.values[k] = a * z1.values[k] + b * z2.values[k];
    auto hm = hoeffding_double(mix);
    auto h1 = hoeffding_double(z1);
    auto h2 = hoeffding_double(z2);
    for (std::size_t k = 0; k < mix.size(); ++k)
        CHECK(hm.values[k] == doctest::Approx(a * h1.values[k] + b * h2.values[k]).epsilon(1e-12));
}

TEST_CASE("is_hoeffding: examples and the projection property") {
    DoubleTensor good(1, 2, {0.5, -0.5, -0.5, 0.5});
    CHECK(is_hoeffding(good, 1e-12));
    DoubleTensor ones(1, 2, {1, 1, 1, 1});
    CHECK_FALSE(is_hoeffding(ones, 1e-12));

    Rng rng(23);
    for (int t = 0; t < 50; ++t) {
        DoubleTensor z = random_double(2, 3, rng);
        CHECK(is_hoeffding(hoeffding_double(z), 1e-9));
    }
}

TEST_CASE("SubsetMask validation and shape errors") {
    CHECK_THROWS_AS(SubsetMask(2, 0b100), Error);
    DenseTensor a(2, 3);
    CHECK_THROWS_AS(project_single(a, SubsetMask::full(3), ProjectionMode::sum), Error);
    CHECK_THROWS_AS(is_hoeffding(DoubleTensor(1, 2), -1.0), Error);
}
