#include "rssmeet/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rssmeet {

namespace {

void require(bool ok, const char* field, const char* rule) {
  if (!ok) throw std::invalid_argument(std::string("channel parameter '") + field + "' must be " + rule);
}

}  // namespace

void ChannelParams::validate() const {
  require(std::isfinite(p_i), "p_i", "finite");
  require(d_0 > 0.0, "d_0", "> 0");
  require(n_p > 0.0, "n_p", "> 0");
  require(sigma >= 0.0 && std::isfinite(sigma), "sigma", ">= 0");
  require(x_c > 0.0, "x_c", "> 0");
  require(delta > 0.0 && std::isfinite(delta), "delta", "> 0");
}

double ChannelParams::rho() const { return std::exp(-2.0 * delta / x_c); }

double ChannelParams::sigma_tilde_sq() const {
  return sigma * sigma * -std::expm1(-2.0 * delta / x_c);
}

double ChannelParams::log(double v) const {
  return log_base == LogBase::Natural ? std::log(v) : std::log10(v);
}

double path_loss_mean(double d, const ChannelParams& params) {
  if (!(d > 0.0)) throw std::domain_error("path_loss_mean: distance must be > 0");
  return params.p_i - 10.0 * params.n_p * params.log(d / params.d_0);
}

LinkState init_shadowing(const ChannelParams& params, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  return LinkState{params.sigma * g(rng), std::nullopt};
}

LinkState advance_shadowing(LinkState state, const ChannelParams& params, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  const double rho = params.rho();
  // 1 - rho^2 = -expm1(-4 delta / x_c), accurate when rho is close to 1.
  const double innovation = std::sqrt(-std::expm1(-4.0 * params.delta / params.x_c));
  state.shadow = rho * state.shadow + innovation * params.sigma * g(rng);
  return state;
}

std::pair<double, LinkState> sample_rss(LinkState state, double d, const ChannelParams& params) {
  const double rss = path_loss_mean(d, params) + state.shadow;
  state.last_rss = rss;
  return {rss, state};
}

std::optional<double> reward(double rss_now, std::optional<double> rss_prev) {
  if (!rss_prev) return std::nullopt;
  return rss_now - *rss_prev;
}

}  // namespace rssmeet
