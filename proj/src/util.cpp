#include "diffalg/util.hpp"

namespace diffalg {

RingElem random_elem(std::mt19937_64& rng, const RingPtr& r,
                     uint32_t max_deg) {
  auto pick = [&](int64_t lo, int64_t hi) {
    return std::uniform_int_distribution<int64_t>(lo, hi)(rng);
  };
  std::size_t ng = r->num_gens();
  Poly p;
  if (ng == 0) {
    p = Poly::constant(Rat(pick(-5, 5), pick(1, 4)));
  } else {
    std::size_t v1 = static_cast<std::size_t>(pick(0, ng - 1));
    std::size_t v2 = static_cast<std::size_t>(pick(0, ng - 1));
    int terms = static_cast<int>(pick(1, 3));
    for (int t = 0; t < terms; ++t) {
      int64_t c = pick(-3, 3);
      if (c == 0) c = 1;
      uint32_t e1 = static_cast<uint32_t>(pick(0, max_deg));
      uint32_t e2 = static_cast<uint32_t>(pick(0, max_deg - std::min<uint32_t>(max_deg, e1)));
      p.add_term(Monomial::var(v1, e1) * Monomial::var(v2, e2), Rat(c));
    }
  }
  ElemData e{p, std::vector<int64_t>(r->num_loc_layers(), 0)};
  for (std::size_t i = 0; i < e.dexp.size(); ++i)
    if (pick(0, 2) == 0) e.dexp[i] = 1;
  return r->make(std::move(e));
}

}  // namespace diffalg
