#include "lambdad/relations.hpp"

namespace lambdad {

std::optional<std::string> compatible_case(const Trail& mu1, const Trail& mu2, const Trail& mu3) {
  if (mu1.is_empty()) {
    if (mu2 == mu3) return "C1";
    return std::nullopt;
  }
  if (mu2.is_empty()) {
    if (mu1 == mu3) return "C2";
    return std::nullopt;
  }
  if (mu3.is_empty()) return std::nullopt;  // C3
  const Kont& k1 = mu1.as_kont();
  const Kont& k3 = mu3.as_kont();
  if (!(k1.arg == k3.arg && k1.result == k3.result && k1.meta == k3.meta)) return std::nullopt;
  if (!compatible(mu2, k3.trail, k1.trail)) return std::nullopt;
  return "C4";
}

bool compatible(const Trail& mu1, const Trail& mu2, const Trail& mu3) {
  return compatible_case(mu1, mu2, mu3).has_value();
}

std::optional<std::string> id_cont_case(const Type& gamma, const Trail& mu, const Meta& sigma,
                                        const Type& gamma_prime) {
  if (!mu.is_empty()) {
    const Kont& k = mu.as_kont();
    if (k.arg == gamma && k.trail.is_empty() && k.meta == sigma && k.result == gamma_prime) {
      return "I3";
    }
    return std::nullopt;
  }
  if (sigma.is_empty()) {
    if (gamma == gamma_prime) return "I1";
    return std::nullopt;
  }
  const ConsMeta& c = sigma.as_cons();
  if (c.kont.arg == gamma && c.kont.result == gamma_prime && c.kont.trail == c.trail &&
      c.kont.meta == c.rest) {
    return "I2";
  }
  return std::nullopt;
}

bool id_cont_type(const Type& gamma, const Trail& mu, const Meta& sigma, const Type& gamma_prime) {
  return id_cont_case(gamma, mu, sigma, gamma_prime).has_value();
}

}  // namespace lambdad
