#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tensorclt/coefficients.hpp"
#include "tensorclt/rng.hpp"
#include "tensorclt/tensor.hpp"

namespace tensorclt {

enum class ModelKind { iid_function, slice_product, mixture, example_12_4, example_12_5 };

/// Distribution model of a symmetric exchangeable random tensor with
/// vanishing diagonal. Payload fields depend on `kind`.
struct ModelSpec {
    ModelKind kind = ModelKind::iid_function;
    int n = 0;
    int d = 1;

    // iid-function: X_i = h(xi_{i(1)}, ..., xi_{i(d)}) - E[h], xi_k i.i.d.
    // on a finite alphabet. `table` is the symmetrized kernel over
    // alphabet^d (row-major), centered at sampling time.
    std::vector<double> alphabet;
    std::vector<double> probs;
    std::vector<double> table;

    // slice-product: X_i = prod_l zeta_{i(l)} - m_d with zeta uniform on the
    // k-slice of {0,1}^n.
    int k = 0;

    // mixture
    std::vector<double> weights;
    std::vector<ModelSpec> components;

    // example-12-4: zero vector w.p. epsilon, else Rademacher/sqrt(1-eps)
    double epsilon = 0.0;

    void validate() const;
};

/// Named kernels for the iid-function class.
ModelSpec make_product_kernel_model(int n, int d);
ModelSpec make_centered_and_model(int n, int d, double p);
ModelSpec make_centered_majority_model(int n, int d);

/// Distributional summary of a random tensor.
struct TensorParams {
    int n = 0;
    int d = 0;
    DeltaVector delta;
    SigmaVector sigma;
    double osc = 0.0;
    double pc = 0.0;
    double B = 0.0;
    double K3 = 0.0;
    std::optional<double> K4;

    bool exact = true;  // exact closed form vs Monte Carlo
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::map<std::string, double> stderr_map;  // per-field standard errors
    std::vector<std::string> warnings;

    double stderr_of(const std::string& field) const {
        auto it = stderr_map.find(field);
        return it == stderr_map.end() ? 0.0 : it->second;
    }
};

/// Stein exchangeable pair of permutations: pi2 = pi1 o t(I1, I2).
struct PermutationPairSample {
    std::vector<int> pi1;
    std::vector<int> pi2;
    int i1 = 0;
    int i2 = 0;
};

/// Uniform permutation of [1..n] (index-swap shuffle).
std::vector<int> sample_permutation(int n, Rng& rng);

PermutationPairSample sample_exchangeable_pair(int n, Rng& rng);

/// pi o t(i1, i2) as used by the exchangeable pair.
std::vector<int> compose_transposition(const std::vector<int>& pi, int i1, int i2);

/// One realization of the model as a dense tensor: always symmetric with
/// vanishing diagonal.
DenseTensor sample_tensor(const ModelSpec& m, Rng& rng);

/// Monte Carlo estimation of delta_s, osc, pc, B and the absolute moments,
/// with standard errors per field. Deterministic in (seed, chunking) and
/// independent of the worker count. Requires n >= 4d-2 (pc pattern).
TensorParams estimate_params(const ModelSpec& m, std::uint64_t samples, std::uint64_t seed);

/// Exact parameters of the slice-product model: delta_s = m_{2d-s} - m_d^2
/// with m_r the falling-factorial moments of the slice, B = 0 exactly,
/// closed-form osc/pc and entry moments.
TensorParams exact_slice_params(int n, int k, int d);

}  // namespace tensorclt
