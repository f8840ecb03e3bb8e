#include "thp/kernels.hpp"

#include "thp/error.hpp"

#include <cmath>
#include <numbers>

namespace thp {

namespace {

constexpr double kTruncation = 1e-12;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

} // namespace

void validate(const DecayKernel& kernel) {
    std::visit(overloaded{
                   [](const ExponentialKernel& k) {
                       if (!(k.decay > 0.0) || !std::isfinite(k.decay)) {
                           throw InvalidInput("exponential kernel decay must be positive");
                       }
                   },
                   [](const GaussianKernel& k) {
                       if (!(k.stddev > 0.0) || !std::isfinite(k.mean)) {
                           throw InvalidInput("gaussian kernel needs a finite mean and positive stddev");
                       }
                   },
                   [](const UniformKernel& k) {
                       if (!(k.scale > 0.0) || !std::isfinite(k.start)) {
                           throw InvalidInput("uniform kernel needs a finite start and positive scale");
                       }
                   },
               },
               kernel);
}

double evaluate(const DecayKernel& kernel, double t) {
    if (!(t > 0.0)) return 0.0;
    return std::visit(overloaded{
                          [t](const ExponentialKernel& k) { return std::exp(-k.decay * t); },
                          [t](const GaussianKernel& k) {
                              const double z = (t - k.mean) / k.stddev;
                              return std::exp(-0.5 * z * z) / (k.stddev * std::sqrt(2.0 * std::numbers::pi));
                          },
                          [t](const UniformKernel& k) {
                              return (t > k.start && t < k.start + k.scale) ? 1.0 / k.scale : 0.0;
                          },
                      },
                      kernel);
}

double support_end(const DecayKernel& kernel) {
    return std::visit(overloaded{
                          [](const ExponentialKernel& k) { return -std::log(kTruncation) / k.decay; },
                          [](const GaussianKernel& k) {
                              return k.mean + k.stddev * std::sqrt(-2.0 * std::log(kTruncation));
                          },
                          [](const UniformKernel& k) { return k.start + k.scale; },
                      },
                      kernel);
}

double temporal_summary_step(const DecayKernel& kernel, double previous_summary, double previous_count,
                             double bin_width) {
    const auto* exp_kernel = std::get_if<ExponentialKernel>(&kernel);
    if (exp_kernel == nullptr) {
        throw UnsupportedKernel("temporal summary recursion requires the exponential kernel, got " +
                                kernel_name(kernel));
    }
    return std::exp(-exp_kernel->decay * bin_width) * (previous_summary + previous_count);
}

std::string kernel_name(const DecayKernel& kernel) {
    return std::visit(overloaded{
                          [](const ExponentialKernel&) { return std::string("exponential"); },
                          [](const GaussianKernel&) { return std::string("gaussian"); },
                          [](const UniformKernel&) { return std::string("uniform"); },
                      },
                      kernel);
}

} // namespace thp
