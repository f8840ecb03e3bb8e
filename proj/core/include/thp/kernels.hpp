#pragma once

#include <string>
#include <variant>

namespace thp {

// κ(t) = exp(-decay * t) for t > 0.
struct ExponentialKernel {
    double decay = 0.11;
};

// κ(t) = N(t; mean, stddev²) for t > 0, normalized over the whole real line.
struct GaussianKernel {
    double mean = 10.0;
    double stddev = 4.0;
};

// κ(t) = 1/scale on the open interval (start, start + scale).
struct UniformKernel {
    double start = 10.0;
    double scale = 4.0;
};

using DecayKernel = std::variant<ExponentialKernel, GaussianKernel, UniformKernel>;

// Throws InvalidInput for non-positive decay, stddev or scale.
void validate(const DecayKernel& kernel);

// Kernel value at lag t. Exactly zero for t <= 0.
double evaluate(const DecayKernel& kernel, double t);

// Largest lag at which the kernel still exceeds 1e-12 of its peak.
double support_end(const DecayKernel& kernel);

// One step of the exponential temporal summary:
//   S(t) = exp(-decay * bin_width) * (S(t - Δt) + X(t - Δt)).
// Throws UnsupportedKernel for non-exponential kernels.
double temporal_summary_step(const DecayKernel& kernel, double previous_summary, double previous_count,
                             double bin_width);

std::string kernel_name(const DecayKernel& kernel);

} // namespace thp
