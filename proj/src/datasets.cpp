#include "dvr/datasets.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dvr {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

PointCloud sample_two_circles(Rng& rng, std::size_t n, double r1, double r2) {
    if (n < 1) throw std::invalid_argument("sample_two_circles: N must be >= 1");
    if (!(r1 > 0.0) || !(r2 > 0.0)) throw std::invalid_argument("sample_two_circles: radii must be positive");
    constexpr double kSecondCenter = 8.0;
    if (kSecondCenter < r1 + r2 + 1.0) throw std::invalid_argument("sample_two_circles: circles would not be separated");
    std::vector<double> coords, density;
    coords.reserve(2 * n);
    density.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const bool first = rng.uniform() < 0.5;
        const double theta = kTwoPi * rng.uniform();
        const double r = first ? r1 : r2;
        coords.push_back((first ? 0.0 : kSecondCenter) + r * std::cos(theta));
        coords.push_back(r * std::sin(theta));
        density.push_back(1.0 / (4.0 * std::numbers::pi * r));
    }
    PointCloud cloud(2, std::move(coords));
    cloud.set_oracle_density(std::move(density));
    return cloud;
}

double cassini_radius(double theta, double e) {
    if (!(e > 1.0)) throw std::invalid_argument("cassini: e must exceed 1");
    const double c = std::cos(2.0 * theta);
    return std::sqrt(c + std::sqrt(c * c + std::pow(e, 4) - 1.0));
}

PointCloud sample_cassini(Rng& rng, std::size_t n, double e) {
    if (!(e > 1.0)) throw std::invalid_argument("sample_cassini: e must exceed 1");
    std::vector<double> coords;
    coords.reserve(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        const double theta = kTwoPi * rng.uniform();
        const double r = cassini_radius(theta, e);
        coords.push_back(r * std::cos(theta));
        coords.push_back(r * std::sin(theta));
    }
    return PointCloud(2, std::move(coords));
}

PointCloud sample_noisy_circle(Rng& rng, std::size_t n_circle, std::size_t n_outliers) {
    std::vector<double> coords;
    coords.reserve(2 * (n_circle + n_outliers));
    for (std::size_t i = 0; i < n_circle; ++i) {
        const double theta = kTwoPi * rng.uniform();
        coords.push_back(std::cos(theta));
        coords.push_back(std::sin(theta));
    }
    for (std::size_t i = 0; i < n_outliers; ++i) {
        const double x = rng.uniform(-1.0, 1.0);
        const double y = rng.uniform(-1.0, 1.0);
        coords.push_back(x);
        coords.push_back(y);
    }
    return PointCloud(2, std::move(coords));
}

PointCloud sample_two_squares(Rng& rng, std::size_t n) {
    if (n < 1) throw std::invalid_argument("sample_two_squares: N must be >= 1");
    std::vector<double> coords, density;
    coords.reserve(2 * n);
    density.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const bool sparse = rng.uniform() < 1.0 / 6.0;
        const double x = rng.uniform();
        const double y = rng.uniform();
        coords.push_back(sparse ? x : 1.5 + x);
        coords.push_back(y);
        density.push_back(sparse ? 1.0 / 6.0 : 5.0 / 6.0);
    }
    PointCloud cloud(2, std::move(coords));
    cloud.set_oracle_density(std::move(density));
    return cloud;
}

State3 lorenz_vector_field(const State3& s, const LorenzParams& p) {
    return {p.sigma * (s[1] - s[0]), s[0] * (p.rho - s[2]) - s[1], s[0] * s[1] - p.beta * s[2]};
}

State3 rk4_step(const State3& s, double h, const LorenzParams& p) {
    auto axpy = [](const State3& x, double a, const State3& d) {
        return State3{x[0] + a * d[0], x[1] + a * d[1], x[2] + a * d[2]};
    };
    const State3 k1 = lorenz_vector_field(s, p);
    const State3 k2 = lorenz_vector_field(axpy(s, h / 2, k1), p);
    const State3 k3 = lorenz_vector_field(axpy(s, h / 2, k2), p);
    const State3 k4 = lorenz_vector_field(axpy(s, h, k3), p);
    State3 out;
    for (int c = 0; c < 3; ++c) out[c] = s[c] + h / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
    return out;
}

Trajectory integrate_lorenz(const LorenzParams& params, State3 x0, double t_end, double dt_sample) {
    if (!(dt_sample > 0.0)) throw std::invalid_argument("integrate_lorenz: dt_sample must be positive");
    if (!(t_end >= 0.0)) throw std::invalid_argument("integrate_lorenz: t_end must be nonnegative");
    constexpr int kSubsteps = 20;
    // Small slack so that t_end = 50, dt = 0.05 yields index 1000 despite rounding.
    const auto count = static_cast<std::size_t>(std::floor(t_end / dt_sample + 1e-9)) + 1;
    const double h = dt_sample / kSubsteps;
    Trajectory traj;
    traj.times.reserve(count);
    traj.states.reserve(count);
    State3 s = x0;
    for (std::size_t i = 0; i < count; ++i) {
        if (i > 0)
            for (int k = 0; k < kSubsteps; ++k) s = rk4_step(s, h, params);
        traj.times.push_back(static_cast<double>(i) * dt_sample);
        traj.states.push_back(s);
    }
    return traj;
}

PointCloud delay_embedding(std::span<const double> series, std::size_t dim, std::size_t lag_steps) {
    if (dim < 1) throw std::invalid_argument("delay_embedding: dim must be >= 1");
    const std::size_t span = (dim - 1) * lag_steps;
    if (series.size() < span + 1)
        throw std::invalid_argument("delay_embedding: series of length " + std::to_string(series.size()) +
                                    " is too short for the requested window");
    const std::size_t count = series.size() - span;
    std::vector<double> coords;
    coords.reserve(count * dim);
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t d = 0; d < dim; ++d) coords.push_back(series[i + d * lag_steps]);
    return PointCloud(dim, std::move(coords));
}

PointCloud lorenz_delay_cloud(std::size_t n) {
    const auto traj = integrate_lorenz();
    std::vector<double> xs;
    xs.reserve(traj.states.size());
    for (const auto& s : traj.states) xs.push_back(s[0]);
    PointCloud full = delay_embedding(xs, 2, 1);
    if (n > full.size()) throw std::invalid_argument("lorenz_delay_cloud: at most " + std::to_string(full.size()) + " points");
    std::vector<double> coords(full.coords().begin(), full.coords().begin() + static_cast<std::ptrdiff_t>(2 * n));
    return PointCloud(2, std::move(coords));
}

std::vector<std::string_view> dataset_names() {
    return {"two-circles", "cassini", "noisy-circle", "two-squares", "lorenz-delay"};
}

PointCloud sample_named(std::string_view name, std::uint64_t seed, std::size_t n) {
    Rng rng(seed);
    if (name == "two-circles") return sample_two_circles(rng, n ? n : 500);
    if (name == "cassini") return sample_cassini(rng, n ? n : 200);
    if (name == "noisy-circle") return sample_noisy_circle(rng, n ? n : 200, 10);
    if (name == "two-squares") return sample_two_squares(rng, n ? n : 200);
    if (name == "lorenz-delay") return lorenz_delay_cloud(n ? n : 1000);
    throw std::invalid_argument("unknown dataset '" + std::string(name) + "'");
}

}  // namespace dvr
