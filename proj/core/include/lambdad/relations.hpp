#pragma once

#include <optional>
#include <string>

#include "lambdad/types.hpp"

namespace lambdad {

// Trail composition typing: the type of t1 @ t2 (and of k :: t) is mu3 when
// t1 : mu1 and t2 : mu2.
//   C1  mu1 = •, mu2 ≡ mu3
//   C2  mu1 ≠ •, mu2 = •, mu1 ≡ mu3
//   C3  mu1 ≠ •, mu2 ≠ •, mu3 = •  never holds
//   C4  mu1 = [τ1 <μ1',σ1> τ1'], mu3 = [τ1 <μ3',σ1> τ1'], compatible(mu2, μ3', μ1')
bool compatible(const Trail& mu1, const Trail& mu2, const Trail& mu3);
// The clause that derives the triple ("C1", "C2", "C4"), or nullopt.
std::optional<std::string> compatible_case(const Trail& mu1, const Trail& mu2, const Trail& mu3);

// Typing of the initial continuation idk : γ -> μ -> σ -> γ'.
//   I1  μ = •, σ = •, γ ≡ γ'
//   I2  μ = •, σ = ([γ <μ0,σ0> γ'] * μ0) :: σ0
//   I3  μ = [γ <•,σ> γ']
bool id_cont_type(const Type& gamma, const Trail& mu, const Meta& sigma, const Type& gamma_prime);
std::optional<std::string> id_cont_case(const Type& gamma, const Trail& mu, const Meta& sigma,
                                        const Type& gamma_prime);

}  // namespace lambdad
