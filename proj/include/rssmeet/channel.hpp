#pragma once

#include <optional>
#include <utility>

#include "rssmeet/rng.hpp"

namespace rssmeet {

enum class LogBase { Natural, Base10 };

/// Radio environment constants. Powers are in dB, lengths in meters.
struct ChannelParams {
  double p_i = 0.0;      // received power at the reference distance
  double d_0 = 1.0;      // reference distance
  double n_p = 4.0;      // path-loss exponent
  double sigma = 4.0;    // shadowing standard deviation (dB)
  double x_c = 75.0;     // decorrelation distance
  double delta = 0.1;    // per-turn step length
  LogBase log_base = LogBase::Natural;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;

  /// Per-turn shadowing correlation exp(-2*delta/x_c). Both players move
  /// delta each turn, so the shadowing decorrelates over 2*delta.
  double rho() const;

  /// sigma^2 * (1 - exp(-2*delta/x_c)).
  double sigma_tilde_sq() const;

  double log(double v) const;
};

/// One directed transmitter -> receiver link.
struct LinkState {
  double shadow = 0.0;
  std::optional<double> last_rss;
};

/// Mean received power at distance d. Throws std::domain_error for d <= 0.
double path_loss_mean(double d, const ChannelParams& params);

LinkState init_shadowing(const ChannelParams& params, Rng& rng);

/// AR(1) step: shadow' = rho*shadow + sqrt(1-rho^2)*sigma*g.
LinkState advance_shadowing(LinkState state, const ChannelParams& params, Rng& rng);

/// Returns the sampled RSS and the link with last_rss updated.
std::pair<double, LinkState> sample_rss(LinkState state, double d,
                                        const ChannelParams& params);

/// RSS difference; empty when there is no previous sample yet.
std::optional<double> reward(double rss_now, std::optional<double> rss_prev);

}  // namespace rssmeet
