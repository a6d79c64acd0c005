#include "cqsl/cli/bound_spec.hpp"

#include <charconv>
#include <cmath>

#include "cqsl/error.hpp"

namespace cqsl::cli {

namespace {

[[noreturn]] void unknown(std::string_view token, std::string_view why = "unknown bound") {
  throw Error(Errc::ConfigError, std::string(why) + " '" + std::string(token) + "'");
}

double parse_exponent(std::string_view s, std::string_view token) {
  if (s == "inf") return kInfinity;
  double v = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size() || !(v >= 1.0)) unknown(token, "bad exponent in");
  return v;
}

// "<p>_<q>" -> (p, q), requiring conjugate exponents.
std::pair<double, double> parse_pair(std::string_view rest, std::string_view token) {
  const auto sep = rest.find('_');
  if (sep == std::string_view::npos) unknown(token);
  const double p = parse_exponent(rest.substr(0, sep), token);
  const double q = parse_exponent(rest.substr(sep + 1), token);
  if (!conjugate_exponents(p, q)) unknown(token, "non-conjugate exponents in");
  return {p, q};
}

std::optional<PureCase> parse_case(std::string_view rest) {
  if (rest == "2_2") return PureCase::P2_2;
  if (rest == "1_inf") return PureCase::P1Inf;
  return std::nullopt;
}

}  // namespace

BoundSpec parse_bound(std::string_view token) {
  BoundSpec spec{std::string(token), BoundKind::AnandanAharonov};
  const auto simple = [&](BoundKind k) {
    spec.kind = k;
    return spec;
  };
  if (token == "T_AA") return simple(BoundKind::AnandanAharonov);
  if (token == "T_RP_PURE") return simple(BoundKind::RelativePurityPure);
  if (token == "T_RP") return simple(BoundKind::RelativePurity);
  if (token == "T_WY") return simple(BoundKind::WignerYanase);
  if (token == "T_MTML") return simple(BoundKind::MandelstamTammMargolusLevitin);
  if (token == "T_H_22") return simple(BoundKind::Hellinger22);

  for (auto [prefix, kind] : {std::pair{std::string_view("T_S_PURE_"), BoundKind::SchattenPure},
                              std::pair{std::string_view("T_S_TILDE_"), BoundKind::SchattenStaticPure}}) {
    if (token.starts_with(prefix)) {
      const auto c = parse_case(token.substr(prefix.size()));
      if (!c) unknown(token, "pure-state bounds take 2_2 or 1_inf, got");
      spec.kind = kind;
      spec.pure_case = *c;
      spec.p = *c == PureCase::P2_2 ? 2.0 : 1.0;
      spec.q = *c == PureCase::P2_2 ? 2.0 : kInfinity;
      return spec;
    }
  }
  for (auto [prefix, kind] : {std::pair{std::string_view("T_S_"), BoundKind::SchattenFamily},
                              std::pair{std::string_view("T_H_"), BoundKind::HellingerFamily}}) {
    if (token.starts_with(prefix)) {
      std::tie(spec.p, spec.q) = parse_pair(token.substr(prefix.size()), token);
      spec.kind = kind;
      return spec;
    }
  }
  unknown(token);
}

BoundReport evaluate(const BoundSpec& spec, const Trajectory& traj, const CoherenceOptions& options) {
  switch (spec.kind) {
    case BoundKind::SchattenFamily: return bound_T_S(traj, spec.p, spec.q, options);
    case BoundKind::SchattenPure: return bound_T_S_pure(traj, spec.pure_case, options);
    case BoundKind::SchattenStaticPure: return bound_T_S_static_pure(traj, spec.pure_case, options);
    case BoundKind::HellingerFamily: return bound_T_H(traj, spec.p, spec.q, options);
    case BoundKind::Hellinger22: return bound_T_H_22(traj);
    case BoundKind::AnandanAharonov: return bound_T_AA(traj);
    case BoundKind::RelativePurityPure: return bound_T_RP(traj, true);
    case BoundKind::RelativePurity: return bound_T_RP(traj, false);
    case BoundKind::WignerYanase: return bound_T_WY(traj);
    case BoundKind::MandelstamTammMargolusLevitin: return bound_MT_ML(traj);
  }
  unknown(spec.token);
}

}  // namespace cqsl::cli
