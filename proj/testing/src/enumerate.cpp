#include "lambdad/testing/enumerate.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "lambdad/relations.hpp"

namespace lambdad::testing {

Universe small_universe() {
  Universe u;
  u.bases = {Type::nat(), Type::boolean()};
  // depth 0 and 1
  std::vector<Trail> t1{Trail::empty()};
  std::vector<Kont> k1;
  for (const Type& a : u.bases) {
    for (const Type& b : u.bases) k1.push_back(make_kont(a, Trail::empty(), Meta::empty(), b));
  }
  for (const Kont& k : k1) t1.push_back(Trail::kont(k));
  std::vector<Meta> m1{Meta::empty()};  // a non-empty meta has depth >= 2
  // depth 2
  u.trails.push_back(Trail::empty());
  for (const Type& a : u.bases) {
    for (const Type& b : u.bases) {
      for (const Trail& mu : t1) {
        for (const Meta& sg : m1) u.trails.push_back(Trail::kont(make_kont(a, mu, sg, b)));
      }
    }
  }
  u.metas.push_back(Meta::empty());
  for (const Kont& k : k1) {
    for (const Trail& mu : t1) {
      for (const Meta& sg : m1) u.metas.push_back(Meta::cons(k, mu, sg));
    }
  }
  return u;
}

namespace {

std::size_t index_of(const std::vector<Trail>& xs, const Trail& t) {
  auto it = std::find(xs.begin(), xs.end(), t);
  return it == xs.end() ? xs.size() : static_cast<std::size_t>(it - xs.begin());
}

}  // namespace

EnumerationReport enumerate_relations(const Universe& u) {
  EnumerationReport rep;
  const auto& T = u.trails;
  const std::size_t n = T.size();

  // compatible: saturate C1, C2, C4 over T³
  std::set<std::tuple<std::size_t, std::size_t, std::size_t>> comp;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t l = 0; l < n; ++l) {
          if (comp.count({i, j, l})) continue;
          const Trail &m1 = T[i], &m2 = T[j], &m3 = T[l];
          bool derivable = false;
          if (m1.is_empty()) {
            derivable = m2 == m3;  // C1
          } else if (m2.is_empty()) {
            derivable = m1 == m3;  // C2
          } else if (!m3.is_empty()) {
            const Kont& a = m1.as_kont();
            const Kont& c = m3.as_kont();
            // C4: same outer continuation, inner trails related by compatible(m2, μ3', μ1')
            if (a.arg == c.arg && a.meta == c.meta && a.result == c.result) {
              std::size_t p = index_of(T, c.trail), q = index_of(T, a.trail);
              derivable = p < n && q < n && comp.count({j, p, q});
            }
          }
          if (derivable) {
            comp.insert({i, j, l});
            changed = true;
          }
        }
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t l = 0; l < n; ++l) {
        ++rep.compatible_tuples;
        bool want = comp.count({i, j, l}) > 0;
        rep.compatible_derivable += want;
        bool got = compatible(T[i], T[j], T[l]);
        if (got != want) {
          rep.disagreements.push_back({"compatible",
                                       to_display(T[i]) + " | " + to_display(T[j]) + " | " + to_display(T[l]), got});
        }
      }
    }
  }

  // id-cont-type: generate every instance of I1, I2, I3 inside the universe
  using Inst = std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>;
  std::set<Inst> ids;
  auto meta_index = [&](const Meta& m) {
    auto it = std::find(u.metas.begin(), u.metas.end(), m);
    return it == u.metas.end() ? u.metas.size() : static_cast<std::size_t>(it - u.metas.begin());
  };
  const auto& B = u.bases;
  for (std::size_t g = 0; g < B.size(); ++g) {
    for (std::size_t g2 = 0; g2 < B.size(); ++g2) {
      if (g == g2) ids.insert({g, 0, 0, g2});  // I1 (• is index 0 of both lists)
      for (const Trail& m0 : T) {
        for (const Meta& s0 : u.metas) {
          std::size_t s = meta_index(Meta::cons(make_kont(B[g], m0, s0, B[g2]), m0, s0));
          if (s < u.metas.size()) ids.insert({g, 0, s, g2});  // I2
        }
      }
      for (std::size_t s = 0; s < u.metas.size(); ++s) {
        std::size_t mu = index_of(T, Trail::kont(make_kont(B[g], Trail::empty(), u.metas[s], B[g2])));
        if (mu < n) ids.insert({g, mu, s, g2});  // I3
      }
    }
  }
  for (std::size_t g = 0; g < B.size(); ++g) {
    for (std::size_t mu = 0; mu < n; ++mu) {
      for (std::size_t s = 0; s < u.metas.size(); ++s) {
        for (std::size_t g2 = 0; g2 < B.size(); ++g2) {
          ++rep.id_cont_tuples;
          bool want = ids.count({g, mu, s, g2}) > 0;
          rep.id_cont_derivable += want;
          bool got = id_cont_type(B[g], T[mu], u.metas[s], B[g2]);
          if (got != want) {
            rep.disagreements.push_back({"id-cont-type",
                                         to_display(B[g]) + " | " + to_display(T[mu]) + " | " +
                                             to_display(u.metas[s]) + " | " + to_display(B[g2]),
                                         got});
          }
        }
      }
    }
  }
  return rep;
}

}  // namespace lambdad::testing
