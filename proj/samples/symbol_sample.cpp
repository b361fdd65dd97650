// Computes (Π, x) for a few inputs in the tower over Q_3(ζ_3).
#include <iostream>

#include "reclab/reclab.hpp"

int main() {
  using namespace reclab;
  auto ctx = SymbolContext::make(3, 1, 8);

  for (const char* text : {"0", "P^3", "P^3*(1 + P)", "2*P^4 - P^3", "P"}) {
    TowerElement x = parse_element(ctx.lo, text);
    CompareReport rep = compare_all(ctx, x);
    std::cout << "x = " << text << ": ";
    const auto& direct = rep.route(Method::Direct);
    if (direct.result)
      std::cout << "gamma = " << direct.result->gamma;
    else
      std::cout << errc_name(*direct.error);
    std::cout << "  (" << verdict_name(rep.verdict) << ")\n";
  }

  // A y in the unramified extension and its image x = [3]y.
  std::mt19937_64 rng(7);
  ForwardSample s = forward_valid_input(ctx.gens_lo, rng);
  std::cout << "forward sample: gamma = " << s.gamma << ", Artin-Hasse gives "
            << gamma_artin_hasse(ctx.lo, s.x) << "\n";
}
