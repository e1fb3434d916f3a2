#include "dist.hpp"

#include <gsl/gsl_cdf.h>

#include <cmath>
#include <sstream>

#include "error.hpp"

namespace rocsbb {

double normal_cdf(double z) { return 0.5 * std::erfc(-z * M_SQRT1_2); }

double normal_quantile(double p) { return gsl_cdf_ugaussian_Pinv(p); }

double normal_pdf(double z) {
  constexpr double inv_sqrt_2pi = 0.3989422804014326779;
  return inv_sqrt_2pi * std::exp(-0.5 * z * z);
}

Distribution::Distribution(Spec spec) : spec_(std::move(spec)) { validate(); }

void Distribution::validate() const {
  std::visit(
      [](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, NormalDist>) {
          if (!(d.sigma > 0)) throw_usage("normal: sigma must be > 0");
        } else if constexpr (std::is_same_v<T, GammaDist>) {
          if (!(d.shape > 0) || !(d.rate > 0)) throw_usage("gamma: shape and rate must be > 0");
        } else if constexpr (std::is_same_v<T, StudentTDist>) {
          if (!(d.df > 0)) throw_usage("student_t: df must be > 0");
        } else if constexpr (std::is_same_v<T, BetaDist>) {
          if (!(d.a > 0) || !(d.b > 0)) throw_usage("beta: a and b must be > 0");
        } else if constexpr (std::is_same_v<T, ChiSquareDist>) {
          if (!(d.df > 0)) throw_usage("chi_square: df must be > 0");
        } else if constexpr (std::is_same_v<T, NormalMixtureDist>) {
          if (!(d.pi >= 0 && d.pi <= 1)) throw_usage("normal_mixture: pi must be in [0,1]");
          if (!(d.sigma1 > 0) || !(d.sigma2 > 0)) throw_usage("normal_mixture: sigmas must be > 0");
        }
      },
      spec_);
}

double Distribution::cdf(double x) const {
  return std::visit(
      [x](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, NormalDist>) {
          return normal_cdf((x - d.mu) / d.sigma);
        } else if constexpr (std::is_same_v<T, GammaDist>) {
          return gsl_cdf_gamma_P(x, d.shape, 1.0 / d.rate);
        } else if constexpr (std::is_same_v<T, StudentTDist>) {
          return gsl_cdf_tdist_P(x, d.df);
        } else if constexpr (std::is_same_v<T, BetaDist>) {
          if (x <= 0) return 0.0;
          if (x >= 1) return 1.0;
          return gsl_cdf_beta_P(x, d.a, d.b);
        } else if constexpr (std::is_same_v<T, ChiSquareDist>) {
          return gsl_cdf_chisq_P(x, d.df);
        } else {
          return d.pi * normal_cdf((x - d.mu1) / d.sigma1) +
                 (1.0 - d.pi) * normal_cdf((x - d.mu2) / d.sigma2);
        }
      },
      spec_);
}

namespace {

// Monotone bisection of cdf(x) = p on [lo, hi], absolute tolerance 1e-10.
template <typename Cdf>
double bisect_quantile(const Cdf& cdf, double p, double lo, double hi) {
  while (hi - lo > 1e-10) {
    double mid = 0.5 * (lo + hi);
    if (cdf(mid) >= p) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double Distribution::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0)) throw_usage("quantile: p must be in (0,1)");
  return std::visit(
      [p, this](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, NormalDist>) {
          return d.mu + d.sigma * normal_quantile(p);
        } else if constexpr (std::is_same_v<T, GammaDist>) {
          return gsl_cdf_gamma_Pinv(p, d.shape, 1.0 / d.rate);
        } else if constexpr (std::is_same_v<T, StudentTDist>) {
          return gsl_cdf_tdist_Pinv(p, d.df);
        } else if constexpr (std::is_same_v<T, BetaDist>) {
          return gsl_cdf_beta_Pinv(p, d.a, d.b);
        } else if constexpr (std::is_same_v<T, ChiSquareDist>) {
          return gsl_cdf_chisq_Pinv(p, d.df);
        } else {
          // No closed form; bracket by the wider component and bisect.
          double zlo = normal_quantile(std::min(p, 1e-12));
          double zhi = -zlo;
          double lo = std::min(d.mu1 + d.sigma1 * zlo, d.mu2 + d.sigma2 * zlo);
          double hi = std::max(d.mu1 + d.sigma1 * zhi, d.mu2 + d.sigma2 * zhi);
          auto f = [this](double x) { return cdf(x); };
          return bisect_quantile(f, p, lo, hi);
        }
      },
      spec_);
}

double Distribution::sample(Rng& rng) const {
  return std::visit(
      [&rng](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, NormalDist>) {
          return rng.normal(d.mu, d.sigma);
        } else if constexpr (std::is_same_v<T, GammaDist>) {
          return rng.gamma(d.shape, d.rate);
        } else if constexpr (std::is_same_v<T, StudentTDist>) {
          return rng.student_t(d.df);
        } else if constexpr (std::is_same_v<T, BetaDist>) {
          return rng.beta(d.a, d.b);
        } else if constexpr (std::is_same_v<T, ChiSquareDist>) {
          return rng.chi_square(d.df);
        } else {
          // Component pick first, then the normal draw: fixed consumption
          // order keeps streams reproducible.
          bool first = rng.uniform() < d.pi;
          return first ? rng.normal(d.mu1, d.sigma1) : rng.normal(d.mu2, d.sigma2);
        }
      },
      spec_);
}

std::string Distribution::describe() const {
  std::ostringstream os;
  std::visit(
      [&os](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, NormalDist>) {
          os << "normal(" << d.mu << "," << d.sigma << ")";
        } else if constexpr (std::is_same_v<T, GammaDist>) {
          os << "gamma(" << d.shape << "," << d.rate << ")";
        } else if constexpr (std::is_same_v<T, StudentTDist>) {
          os << "student_t(" << d.df << ")";
        } else if constexpr (std::is_same_v<T, BetaDist>) {
          os << "beta(" << d.a << "," << d.b << ")";
        } else if constexpr (std::is_same_v<T, ChiSquareDist>) {
          os << "chi_square(" << d.df << ")";
        } else {
          os << "normal_mixture(" << d.pi << "," << d.mu1 << "," << d.sigma1 << ","
             << d.mu2 << "," << d.sigma2 << ")";
        }
      },
      spec_);
  return os.str();
}

}  // namespace rocsbb
