#include "tensorclt/models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tensorclt/parallel.hpp"

namespace tensorclt {

void ModelSpec::validate() const {
    require(n >= 1 && d >= 1, errc::spec, "model: need n >= 1, d >= 1");
    require(n <= 64, errc::spec, "model: n > 64 exceeds the dense desk-scale range");
    switch (kind) {
        case ModelKind::iid_function: {
            require(!alphabet.empty(), errc::spec, "iid-function: empty alphabet");
            require(alphabet.size() == probs.size(), errc::spec,
                    "iid-function: alphabet/probs size mismatch");
            double total = 0.0;
            for (double p : probs) {
                require(p >= 0.0, errc::spec, "iid-function: negative probability");
                total += p;
            }
            require(std::abs(total - 1.0) <= 1e-12, errc::spec,
                    "iid-function: probabilities must sum to 1");
            require(table.size() == ipow(alphabet.size(), d), errc::spec,
                    "iid-function: kernel table must have alphabet^d entries");
            break;
        }
        case ModelKind::slice_product:
            require(k >= 0 && k <= n, errc::spec, "slice-product: k out of [0, n]");
            require(n >= 2 * d, errc::spec, "slice-product: need n >= 2d");
            break;
        case ModelKind::mixture: {
            require(!components.empty() && components.size() == weights.size(), errc::spec,
                    "mixture: weights/components mismatch");
            double total = 0.0;
            for (double w : weights) {
                require(w >= 0.0, errc::spec, "mixture: negative weight");
                total += w;
            }
            require(std::abs(total - 1.0) <= 1e-12, errc::spec, "mixture: weights must sum to 1");
            for (const auto& c : components) {
                require(c.n == n && c.d == d, errc::spec,
                        "mixture: all components must share (n, d)");
                c.validate();
            }
            break;
        }
        case ModelKind::example_12_4:
            require(d == 1, errc::spec, "example-12-4 is a vector model (d = 1)");
            require(epsilon > 0.0 && epsilon <= 0.5, errc::spec,
                    "example-12-4: epsilon in (0, 1/2]");
            break;
        case ModelKind::example_12_5:
            require(d == 1, errc::spec, "example-12-5 is a vector model (d = 1)");
            require(n >= 4 && n % 2 == 0, errc::spec, "example-12-5: n must be even, >= 4");
            break;
    }
}

namespace {

/// Symmetrizes a kernel table over its d argument slots.
std::vector<double> symmetrize_table(const std::vector<double>& table, int m, int d) {
    std::vector<double> out(table.size(), 0.0);
    std::vector<int> digits(d);
    std::vector<int> perm(d);
    std::iota(perm.begin(), perm.end(), 0);
    double count = factorial(d);
    for (std::size_t off = 0; off < table.size(); ++off) {
        std::size_t rem = off;
        for (int k = d - 1; k >= 0; --k) {
            digits[k] = static_cast<int>(rem % m);
            rem /= m;
        }
        double acc = 0.0;
        std::vector<int> p = perm;
        do {
            std::size_t q = 0;
            for (int k = 0; k < d; ++k) q = q * m + digits[p[k]];
            acc += table[q];
        } while (std::next_permutation(p.begin(), p.end()));
        out[off] = acc / count;
    }
    return out;
}

}  // namespace

ModelSpec make_product_kernel_model(int n, int d) {
    ModelSpec m;
    m.kind = ModelKind::iid_function;
    m.n = n;
    m.d = d;
    m.alphabet = {-1.0, 1.0};
    m.probs = {0.5, 0.5};
    m.table.resize(ipow(2, d));
    for (std::size_t off = 0; off < m.table.size(); ++off) {
        double prod = 1.0;
        std::size_t rem = off;
        for (int k = 0; k < d; ++k) {
            prod *= m.alphabet[rem % 2];
            rem /= 2;
        }
        m.table[off] = prod;
    }
    return m;
}

ModelSpec make_centered_and_model(int n, int d, double p) {
    require(p > 0.0 && p < 1.0, errc::spec, "centered-and: p in (0, 1)");
    ModelSpec m;
    m.kind = ModelKind::iid_function;
    m.n = n;
    m.d = d;
    m.alphabet = {0.0, 1.0};
    m.probs = {1.0 - p, p};
    m.table.resize(ipow(2, d));
    for (std::size_t off = 0; off < m.table.size(); ++off) {
        std::size_t rem = off;
        double prod = 1.0;
        for (int k = 0; k < d; ++k) {
            prod *= static_cast<double>(rem % 2);
            rem /= 2;
        }
        m.table[off] = prod;
    }
    return m;
}

ModelSpec make_centered_majority_model(int n, int d) {
    ModelSpec m;
    m.kind = ModelKind::iid_function;
    m.n = n;
    m.d = d;
    m.alphabet = {-1.0, 1.0};
    m.probs = {0.5, 0.5};
    m.table.resize(ipow(2, d));
    for (std::size_t off = 0; off < m.table.size(); ++off) {
        std::size_t rem = off;
        int sum = 0;
        for (int k = 0; k < d; ++k) {
            sum += (rem % 2 == 0) ? -1 : 1;
            rem /= 2;
        }
        m.table[off] = sum > 0 ? 1.0 : (sum < 0 ? -1.0 : 0.0);
    }
    return m;
}

std::vector<int> sample_permutation(int n, Rng& rng) {
    require(n >= 1, errc::range, "sample_permutation: n >= 1");
    std::vector<int> pi(n);
    std::iota(pi.begin(), pi.end(), 1);
    for (int i = n - 1; i > 0; --i) {
        int j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(i) + 1));
        std::swap(pi[i], pi[j]);
    }
    return pi;
}

std::vector<int> compose_transposition(const std::vector<int>& pi, int i1, int i2) {
    std::vector<int> out = pi;
    std::swap(out[i1 - 1], out[i2 - 1]);
    return out;
}

PermutationPairSample sample_exchangeable_pair(int n, Rng& rng) {
    require(n >= 2, errc::range, "sample_exchangeable_pair: n >= 2");
    PermutationPairSample s;
    s.i1 = static_cast<int>(rng.next_below(n)) + 1;
    s.i2 = static_cast<int>(rng.next_below(n)) + 1;
    s.pi1 = sample_permutation(n, rng);
    s.pi2 = compose_transposition(s.pi1, s.i1, s.i2);
    return s;
}

namespace {

double falling_moment(int n, int k, int r) {
    // m_r = k(k-1)...(k-r+1) / (n(n-1)...(n-r+1))
    double num = 1.0, den = 1.0;
    for (int u = 0; u < r; ++u) {
        num *= k - u;
        den *= n - u;
    }
    return r == 0 ? 1.0 : num / den;
}

DenseTensor sample_iid_function(const ModelSpec& m, Rng& rng) {
    const int mctr = static_cast<int>(m.alphabet.size());
    std::vector<double> table = symmetrize_table(m.table, mctr, m.d);
    // exact centering constant E[h]
    double eh = 0.0;
    {
        std::vector<int> digits(m.d, 0);
        for (std::size_t off = 0; off < table.size(); ++off) {
            std::size_t rem = off;
            double p = 1.0;
            for (int k = 0; k < m.d; ++k) {
                p *= m.probs[rem % mctr];
                rem /= mctr;
            }
            eh += p * table[off];
        }
    }
    // base draws by inverse CDF over the finite alphabet
    std::vector<int> base(m.n);
    for (int i = 0; i < m.n; ++i) {
        double u = rng.next_double();
        double c = 0.0;
        int pick = mctr - 1;
        for (int a = 0; a < mctr; ++a) {
            c += m.probs[a];
            if (u < c) { pick = a; break; }
        }
        base[i] = pick;
    }
    DenseTensor x(m.d, m.n);
    std::vector<int> digits(m.d);
    for (std::size_t off = 0; off < x.size(); ++off) {
        std::size_t rem = off;
        std::uint64_t seen = 0;
        bool inj = true;
        for (int k = m.d - 1; k >= 0; --k) {
            digits[k] = static_cast<int>(rem % m.n);
            rem /= m.n;
            std::uint64_t bit = 1ULL << digits[k];
            if (seen & bit) inj = false;
            seen |= bit;
        }
        if (!inj) continue;
        std::size_t t = 0;
        for (int k = 0; k < m.d; ++k) t = t * mctr + base[digits[k]];
        x.values[off] = table[t] - eh;
    }
    return x;
}

DenseTensor sample_slice_product(const ModelSpec& m, Rng& rng) {
    const double md = falling_moment(m.n, m.k, m.d);
    // uniform k-subset: partial Fisher-Yates
    std::vector<int> pool(m.n);
    std::iota(pool.begin(), pool.end(), 0);
    std::vector<char> zeta(m.n, 0);
    for (int t = 0; t < m.k; ++t) {
        int j = t + static_cast<int>(rng.next_below(m.n - t));
        std::swap(pool[t], pool[j]);
        zeta[pool[t]] = 1;
    }
    DenseTensor x(m.d, m.n);
    std::vector<int> digits(m.d);
    for (std::size_t off = 0; off < x.size(); ++off) {
        std::size_t rem = off;
        std::uint64_t seen = 0;
        bool inj = true;
        int prod = 1;
        for (int k = m.d - 1; k >= 0; --k) {
            digits[k] = static_cast<int>(rem % m.n);
            rem /= m.n;
            std::uint64_t bit = 1ULL << digits[k];
            if (seen & bit) inj = false;
            seen |= bit;
            prod *= zeta[digits[k]];
        }
        if (!inj) continue;
        x.values[off] = static_cast<double>(prod) - md;
    }
    return x;
}

DenseTensor sample_example_12_4(const ModelSpec& m, Rng& rng) {
    DenseTensor x(1, m.n);
    if (rng.next_double() < m.epsilon) return x;  // zero vector
    const double scale = 1.0 / std::sqrt(1.0 - m.epsilon);
    for (int i = 0; i < m.n; ++i)
        x.values[i] = (rng.next_u64() & 1ULL) ? scale : -scale;
    return x;
}

DenseTensor sample_example_12_5(const ModelSpec& m, Rng& rng) {
    const int n = m.n;
    // zero-sum sign vector: shuffle n/2 plus and n/2 minus ones
    std::vector<double> xi(n, 1.0);
    for (int i = 0; i < n / 2; ++i) xi[i] = -1.0;
    for (int i = n - 1; i > 0; --i) {
        int j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(i) + 1));
        std::swap(xi[i], xi[j]);
    }
    // exactly one of the auxiliary events A_0..A_n occurs:
    // P(A_0) = 1/(n-1), P(A_i) = (n-2)/(n(n-1))
    const double p0 = 1.0 / (n - 1.0);
    const double pi_each = (n - 2.0) / (static_cast<double>(n) * (n - 1.0));
    double u = rng.next_double();
    int cat = 0;
    if (u >= p0) cat = 1 + static_cast<int>(std::min<double>(n - 1, (u - p0) / pi_each));
    const double sigma = std::sqrt(1.0 + 2.0 / (n - 2.0));
    DenseTensor x(1, n);
    for (int i = 1; i <= n; ++i) {
        double e = (cat == 0 ? 1.0 : 0.0) - (cat == i ? static_cast<double>(n) / (n - 2.0) : 0.0);
        x.values[i - 1] = (xi[i - 1] + e) / sigma;
    }
    return x;
}

}  // namespace

DenseTensor sample_tensor(const ModelSpec& m, Rng& rng) {
    m.validate();
    switch (m.kind) {
        case ModelKind::iid_function: return sample_iid_function(m, rng);
        case ModelKind::slice_product: return sample_slice_product(m, rng);
        case ModelKind::example_12_4: return sample_example_12_4(m, rng);
        case ModelKind::example_12_5: return sample_example_12_5(m, rng);
        case ModelKind::mixture: {
            double u = rng.next_double();
            double c = 0.0;
            for (std::size_t j = 0; j < m.weights.size(); ++j) {
                c += m.weights[j];
                if (u < c) return sample_tensor(m.components[j], rng);
            }
            return sample_tensor(m.components.back(), rng);
        }
    }
    throw Error(errc::spec, "sample_tensor: unknown model kind");
}

namespace {

/// Canonical index patterns behind delta_s and pc.
std::vector<int> delta_first(int d) {
    std::vector<int> i(d);
    std::iota(i.begin(), i.end(), 1);
    return i;
}

std::vector<int> delta_second(int d, int s) {
    // (1..s, d+1..2d-s)
    std::vector<int> j;
    for (int t = 1; t <= s; ++t) j.push_back(t);
    for (int t = d + 1; t <= 2 * d - s; ++t) j.push_back(t);
    if (s == 0) {
        j.clear();
        for (int t = d + 1; t <= 2 * d; ++t) j.push_back(t);
    }
    return j;
}

void pc_patterns(int d, std::vector<std::vector<int>>& idx) {
    idx.clear();
    if (d == 1) {
        idx = {{1}, {1}, {2}, {2}};
        return;
    }
    std::vector<int> i1(d), i2(d), i3(d), i4(d);
    std::iota(i1.begin(), i1.end(), 1);                       // (1..d)
    i2[0] = 1;                                                // (1, d+1..2d-1)
    for (int t = 1; t < d; ++t) i2[t] = d + t;
    std::iota(i3.begin(), i3.end(), 2 * d);                   // (2d..3d-1)
    i4[0] = 2 * d;                                            // (2d, 3d..4d-2)
    for (int t = 1; t < d; ++t) i4[t] = 3 * d + t - 1;
    idx = {i1, i2, i3, i4};
}

struct FieldAcc {
    KahanSum sum, sumsq;
    void add(double v) {
        sum.add(v);
        sumsq.add(v * v);
    }
};

}  // namespace

TensorParams estimate_params(const ModelSpec& m, std::uint64_t samples, std::uint64_t seed) {
    m.validate();
    require(samples >= 2, errc::spec, "estimate_params: need at least 2 samples");
    const int n = m.n, d = m.d;
    require(n >= 2 * d, errc::small_n, "estimate_params: delta patterns need n >= 2d");
    require(n >= 4 * d - 2, errc::small_n, "estimate_params: pc pattern needs n >= 4d-2");

    const std::vector<int> i_first = delta_first(d);
    std::vector<std::vector<int>> second(d + 1);
    for (int s = 0; s <= d; ++s) second[s] = delta_second(d, s);
    std::vector<std::vector<int>> pc_idx;
    pc_patterns(d, pc_idx);

    const std::size_t chunk = 4096;
    const std::size_t nchunks = (samples + chunk - 1) / chunk;

    struct ChunkAcc {
        std::vector<FieldAcc> delta;   // s = 0..d
        FieldAcc p4, b, k3, k4;
        std::vector<double> rowsq;     // per-sample (1/n) sum_j Y_j^2
    };
    std::vector<ChunkAcc> acc(nchunks);

    parallel_chunks(samples, chunk, [&](std::size_t c, std::size_t begin, std::size_t end) {
        ChunkAcc& a = acc[c];
        a.delta.resize(d + 1);
        a.rowsq.reserve(end - begin);
        Rng rng(seed, c);
        DenseTensor half_rows(1, n);
        for (std::size_t t = begin; t < end; ++t) {
            DenseTensor x = sample_tensor(m, rng);
            const double x_first = x.at(i_first);
            for (int s = 0; s <= d; ++s) a.delta[s].add(x_first * x.at(second[s]));
            a.p4.add(x.at(pc_idx[0]) * x.at(pc_idx[1]) * x.at(pc_idx[2]) * x.at(pc_idx[3]));
            a.k3.add(std::abs(x_first) * x_first * x_first);
            a.k4.add(x_first * x_first * x_first * x_first);
            // row means Y_j over the first slot, grand mean over everything
            const std::size_t rowlen = ipow(n, d - 1);
            double grand = 0.0, rowacc = 0.0;
            for (int j = 0; j < n; ++j) {
                double rs = 0.0;
                for (std::size_t off = 0; off < rowlen; ++off)
                    rs += x.values[static_cast<std::size_t>(j) * rowlen + off];
                grand += rs;
                const double yj = rs / static_cast<double>(rowlen);
                rowacc += yj * yj;
            }
            grand /= static_cast<double>(x.size());
            a.b.add(grand * grand);
            a.rowsq.push_back(rowacc / n);
        }
    });

    auto reduce = [&](auto pick) {
        KahanSum s1, s2;
        for (const auto& a : acc) {
            const FieldAcc& f = pick(a);
            s1.add(f.sum.value());
            s2.add(f.sumsq.value());
        }
        const double mean = s1.value() / static_cast<double>(samples);
        const double var =
            std::max(0.0, s2.value() / static_cast<double>(samples) - mean * mean);
        const double se = std::sqrt(var / static_cast<double>(samples));
        return std::pair<double, double>{mean, se};
    };

    TensorParams out;
    out.n = n;
    out.d = d;
    out.exact = false;
    out.samples = samples;
    out.seed = seed;
    out.delta.d = d;
    out.delta.delta.resize(d + 1);
    for (int s = 0; s <= d; ++s) {
        auto [mean, se] = reduce([&](const ChunkAcc& a) -> const FieldAcc& { return a.delta[s]; });
        out.delta.delta[s] = mean;
        out.stderr_map["delta_" + std::to_string(s)] = se;
    }
    out.sigma = sigma_from_delta(out.delta);
    for (int s = 0; s <= d; ++s) {
        double se = 0.0;
        for (int t = 0; t <= s; ++t)
            se += binom(s, t) * out.stderr_of("delta_" + std::to_string(t));
        out.stderr_map["sigma_" + std::to_string(s)] = se;
    }

    auto [p4, p4se] = reduce([](const ChunkAcc& a) -> const FieldAcc& { return a.p4; });
    const double d1 = out.delta.delta[1];
    const double d1se = out.stderr_of("delta_1");
    out.pc = std::abs(p4 - d1 * d1);
    out.stderr_map["pc"] = p4se + 2.0 * std::abs(d1) * d1se;

    auto [b, bse] = reduce([](const ChunkAcc& a) -> const FieldAcc& { return a.b; });
    out.B = b;
    out.stderr_map["B"] = bse;
    auto [k3, k3se] = reduce([](const ChunkAcc& a) -> const FieldAcc& { return a.k3; });
    out.K3 = k3;
    out.stderr_map["K3"] = k3se;
    auto [k4, k4se] = reduce([](const ChunkAcc& a) -> const FieldAcc& { return a.k4; });
    out.K4 = k4;
    out.stderr_map["K4"] = k4se;

    // osc reuses the estimated delta_1; the induced bias is folded into the
    // reported standard error.
    KahanSum osum, osqsum;
    for (const auto& a : acc)
        for (double v : a.rowsq) {
            const double dev = std::abs(v - d1);
            osum.add(dev);
            osqsum.add(dev * dev);
        }
    const double omean = osum.value() / static_cast<double>(samples);
    const double ovar =
        std::max(0.0, osqsum.value() / static_cast<double>(samples) - omean * omean);
    out.osc = omean;
    out.stderr_map["osc"] = std::sqrt(ovar / static_cast<double>(samples)) + d1se;

    for (auto& w : a1_warnings(out.delta)) out.warnings.push_back(w);
    return out;
}

TensorParams exact_slice_params(int n, int k, int d) {
    require(n >= 2 * d && d >= 1, errc::range, "exact_slice_params: need n >= 2d");
    require(k >= 0 && k <= n, errc::range, "exact_slice_params: k out of [0, n]");

    auto m_of = [&](int r) { return falling_moment(n, k, r); };
    const double md = m_of(d);

    TensorParams out;
    out.n = n;
    out.d = d;
    out.exact = true;
    out.delta.d = d;
    out.delta.delta.resize(d + 1);
    for (int s = 0; s <= d; ++s) out.delta.delta[s] = m_of(2 * d - s) - md * md;
    out.sigma = sigma_from_delta(out.delta);
    out.B = 0.0;  // the grand sum vanishes pointwise on the slice

    // Row means depend only on zeta_j, so (1/n) sum_j Y_j^2 is the same for
    // every slice point and the oscillation is a plain absolute deviation.
    {
        double a = 1.0, b = 1.0;
        for (int u = 0; u < d - 1; ++u) {
            a *= k - 1 - u;
            b *= n - 1 - u;
        }
        const double nd1 = static_cast<double>(ipow(n, d - 1));
        const double y_one = (a - b * md) / nd1;   // zeta_j = 1
        const double y_zero = (-b * md) / nd1;     // zeta_j = 0
        const double rowsq = (k * y_one * y_one + (n - k) * y_zero * y_zero) / n;
        out.osc = std::abs(rowsq - out.delta.delta[1]);
    }

    // pc by inclusion-exclusion over the four parallelepipedal monomials.
    if (n >= 4 * d - 2) {
        std::vector<std::vector<int>> idx;
        pc_patterns(d, idx);
        std::vector<std::uint64_t> masks(4, 0);
        for (int j = 0; j < 4; ++j)
            for (int e : idx[j]) masks[j] |= 1ULL << (e - 1);
        double e4 = 0.0;
        for (int T = 0; T < 16; ++T) {
            std::uint64_t u = 0;
            int size = 0;
            for (int j = 0; j < 4; ++j)
                if ((T >> j) & 1) { u |= masks[j]; ++size; }
            const double sign = ((4 - size) % 2 == 0) ? 1.0 : -1.0;
            e4 += sign * std::pow(md, 4 - size) * m_of(__builtin_popcountll(u));
        }
        out.pc = std::abs(e4 - out.delta.delta[1] * out.delta.delta[1]);
    } else {
        out.warnings.push_back("pc undefined: requires n >= 4d-2; reported as 0");
        out.pc = 0.0;
    }

    // entry distribution: value 1 - m_d with probability m_d, else -m_d
    out.K3 = md * std::pow(1.0 - md, 3) + (1.0 - md) * std::pow(md, 3);
    out.K4 = md * std::pow(1.0 - md, 4) + (1.0 - md) * std::pow(md, 4);

    for (auto& w : a1_warnings(out.delta)) out.warnings.push_back(w);
    return out;
}

}  // namespace tensorclt
