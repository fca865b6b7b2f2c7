// Acceptance gate: one PASS/FAIL line per criterion.
//
// Criterion 4 contains one statement that is false for the quaternion loop
// (n = 2, one-sided decomposition). It is checked as stated and reported as
// FAIL; the exit status treats exactly that failure as known, anything else
// makes the run fail.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "loopforge/cdcore.hpp"
#include "loopforge/looptable.hpp"
#include "loopforge/mltgroups.hpp"
#include "loopforge/permgroup.hpp"
#include "loopforge/suite.hpp"

using namespace loopforge;

namespace {

struct Outcome {
  std::vector<std::string> failures;
  std::vector<std::string> notes;
  std::set<std::string> known;

  void require(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  void require_known(bool ok, const std::string& what) {
    if (!ok) {
      failures.push_back(what);
      known.insert(what);
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

std::string str(const GroupOrder& g) { return g.to_string(); }

const VerificationReport& suite(unsigned n) {
  static std::map<unsigned, VerificationReport> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, theorem_suite(n)).first;
  return it->second;
}

void require_check(Outcome& o, unsigned n, const std::string& name) {
  const CheckRecord* c = suite(n).find(name);
  if (!c) {
    o.require(false, "n=" + std::to_string(n) + " " + name + " missing");
    return;
  }
  o.require(c->status == Status::pass,
            "n=" + std::to_string(n) + " " + name + ": " + c->witness.value_or(to_string(c->status)));
}

// ---- criteria ---------------------------------------------------------------

void criterion1(Outcome& o) {
  const std::uint64_t inn[] = {4, 64, 16384};
  const std::uint64_t mlt[] = {32, 1024, 524288};
  for (unsigned n = 2; n <= 4; ++n) {
    const auto start = std::chrono::steady_clock::now();
    const CDLoop q(n);
    const GroupHandle g = mlt_group(q, Mode::exhaustive);
    const GroupHandle i = detail::stabilizer_handle("Inn", g);
    const double secs = seconds_since(start);
    o.require(!g.truncated, "n=" + std::to_string(n) + " closure truncated");
    o.require(g.order.value() == mlt[n - 2], "n=" + std::to_string(n) + " |Mlt| = " + str(g.order));
    o.require(i.order.value() == inn[n - 2], "n=" + std::to_string(n) + " |Inn| = " + str(i.order));
    if (n == 4) {
      o.require(secs <= 120, "n=4 took " + std::to_string(secs) + " s");
      o.notes.push_back("n=4 closure " + std::to_string(secs) + " s");
    }
  }
}

void criterion2(Outcome& o) {
  const std::uint64_t inn[] = {8, 128};
  const std::uint64_t mlt[] = {128, 4096};
  for (unsigned n = 3; n <= 4; ++n) {
    const CDLoop q(n);
    const GroupHandle ml = onesided_mlt(q, Side::left, Mode::exhaustive);
    const GroupHandle il = detail::stabilizer_handle("Inn_l", ml);
    const GroupHandle mr = onesided_mlt(q, Side::right, Mode::exhaustive);
    const GroupHandle ir = detail::stabilizer_handle("Inn_r", mr);
    const std::string tag = "n=" + std::to_string(n) + " ";
    o.require(il.order.value() == inn[n - 3], tag + "|Inn_l| = " + str(il.order));
    o.require(ml.order.value() == mlt[n - 3], tag + "|Mlt_l| = " + str(ml.order));
    o.require(!il.truncated && !ir.truncated && same_elements(*il.closure, *ir.closure),
              tag + "Inn_l and Inn_r differ");
  }
}

void criterion3(Outcome& o) {
  for (unsigned n = 3; n <= 4; ++n) {
    const CDLoop q(n);
    const GroupHandle inn = inn_group(q, Mode::exhaustive);
    const std::string tag = "n=" + std::to_string(n) + " ";
    std::size_t bad = 0;
    inn.closure->for_each([&](std::span<const Point> im) {
      const Permutation p = Permutation::adopt(std::vector<Point>(im.begin(), im.end()));
      try {
        const FlipVector f = flip_decompose(p);
        if (f.test(0) || !compose(p, p).is_identity()) ++bad;
      } catch (const NotFlipMap&) {
        ++bad;
      }
    });
    o.require(bad == 0, tag + std::to_string(bad) + " elements not flips of order <= 2");
    const RankStructure r = rank_structure_mlt(q, inner_generators(q));
    o.require(r.inner.rank() == (1U << n) - 2, tag + "rank " + std::to_string(r.inner.rank()));
  }
}

void criterion4(Outcome& o) {
  for (unsigned n = 2; n <= 6; ++n) {
    const CDLoop q(n);
    const KConstruction kc = build_K(q);
    const std::string tag = "n=" + std::to_string(n) + " ";
    o.require(kc.valid(), tag + "K: " + kc.witness.value_or(""));
    o.require(closure(kc.generators).size() == (std::size_t{1} << n), tag + "|K| != 2^n");
  }
  for (unsigned n = 2; n <= 6; ++n) {
    const Mode mode = n <= 4 ? Mode::exhaustive : Mode::rank;
    const CDLoop q(n);
    const std::string tag = "n=" + std::to_string(n) + " " + to_string(mode) + " ";
    const auto two = verify_semidirect(q, mode);
    o.require(two.valid(), tag + "Mlt: " + two.witness.value_or(""));
    const auto one = verify_semidirect_onesided(q, mode);
    const std::string what = tag + "Mlt_l: " + one.witness.value_or("");
    if (n == 2) {
      o.require_known(one.valid(), what);
    } else {
      o.require(one.valid(), what);
    }
  }
}

void criterion5(Outcome& o) {
  const auto start = std::chrono::steady_clock::now();
  for (unsigned n = 5; n <= 6; ++n) {
    const CDLoop q(n);
    const InnerGenerators ig = inner_generators(q);
    const RankStructure two = rank_structure_mlt(q, ig);
    const RankStructure left = rank_structure_onesided(q, ig, Side::left);
    const std::string tag = "n=" + std::to_string(n) + " ";
    o.require(two.valid() && left.valid(), tag + "coset argument failed");
    o.require(two.inner.rank() == (1U << n) - 2, tag + "Inn rank " + std::to_string(two.inner.rank()));
    o.require(left.inner.rank() == (1U << (n - 1)) - 1,
              tag + "Inn_l rank " + std::to_string(left.inner.rank()));
    o.notes.push_back(tag + "|Inn| = " + two.inner_order().exponent_form() +
                      ", |Inn_l| = " + left.inner_order().exponent_form());
  }
  const double secs = seconds_since(start);
  o.require(secs <= 60, "rank mode took " + std::to_string(secs) + " s");
}

void criterion6(Outcome& o) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t a3 = automorphism_group(cd_table(3)).size();
  const std::size_t a4 = automorphism_group(cd_table(4)).size();
  const double secs = seconds_since(start);
  o.require(a3 == 1344, "|Aut(Q_3)| = " + std::to_string(a3));
  o.require(a4 == 2688, "|Aut(Q_4)| = " + std::to_string(a4));
  o.require(secs <= 60, "search took " + std::to_string(secs) + " s");
  for (unsigned n = 3; n <= 4; ++n) {
    const CDLoop q(n);
    const auto w = non_automorphic_witness(q);
    o.require(w.has_value(), "n=" + std::to_string(n) + " no non-automorphic inner map");
  }
}

void criterion7(Outcome& o) {
  const char* names[] = {"associator_symmetry",        "inner_map_formulas",
                         "flip_forms",                 "left_right_inner_equal",
                         "new_elt_identity",           "ind_identity",
                         "small_product_orders",       "doubled_associators",
                         "left_inner_e_symmetry",      "ik_associator_classification"};
  for (unsigned n = 3; n <= 4; ++n) {
    for (const char* name : names) require_check(o, n, name);
  }
  const CheckRecord* ik = suite(4).find("ik_associator_classification");
  o.require(ik && ik->values.value("QuasiO16", 0) > 0, "no QuasiO16 witness in Q_4");
  for (unsigned n = 4; n <= 5; ++n) {
    const FlipVector f = flip_decompose(h_mapping(CDLoop(n)));
    o.require(f == h_expected(n), "h at n=" + std::to_string(n) + " has the wrong form");
  }
}

void criterion8(Outcome& o) {
  for (unsigned n = 3; n <= 6; ++n) {
    require_check(o, n, "mlt_even_permutations");
    require_check(o, n, "mlt_element_orders");
    const CheckRecord* c = suite(n).find("mlt_even_permutations");
    if (!c) continue;
    const std::size_t tested = c->values.value("tested", std::size_t{0});
    if (n <= 4) {
      const std::size_t expected = n == 3 ? 1024 : 524288;
      o.require(tested == expected, "n=" + std::to_string(n) + " tested " + std::to_string(tested));
    } else {
      o.require(tested >= 100000 + 2 * loop_order(n),
                "n=" + std::to_string(n) + " tested " + std::to_string(tested));
    }
  }
}

void criterion9(Outcome& o) {
  for (unsigned n = 3; n <= 4; ++n) {
    const CDLoop q(n);
    const std::string tag = "n=" + std::to_string(n) + " ";
    o.require(inn_group(q, Mode::exhaustive).order == inn_group(q, Mode::rank).order,
              tag + "Inn orders differ");
    o.require(mlt_group(q, Mode::exhaustive).order == mlt_group(q, Mode::rank).order,
              tag + "Mlt orders differ");
    for (Side side : {Side::left, Side::right}) {
      o.require(onesided_inn(q, side, Mode::exhaustive).order ==
                    onesided_inn(q, side, Mode::rank).order,
                tag + "Inn_" + to_string(side) + " orders differ");
      o.require(onesided_mlt(q, side, Mode::exhaustive).order ==
                    onesided_mlt(q, side, Mode::rank).order,
                tag + "Mlt_" + to_string(side) + " orders differ");
    }
  }
  for (unsigned n = 0; n <= 5; ++n) {
    const SignTable s(n);
    const ExpVector h = ExpVector{1} << n;
    std::size_t bad = 0;
    for (ExpVector u = 0; u < h; ++u) {
      for (ExpVector v = 0; v < h; ++v) bad += s.negative(u, v) != product_sign_recursive(u, v, n);
    }
    o.require(bad == 0, "n=" + std::to_string(n) + " sign table disagrees");
  }
  // Quaternions written out by hand, 1 i j k -1 -i -j -k.
  const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  const bool neg[4][4] = {{false, false, false, false},
                          {false, true, false, true},
                          {false, true, true, false},
                          {false, false, true, true}};
  std::vector<std::vector<std::size_t>> rows(8, std::vector<std::size_t>(8));
  for (int a = 0; a < 8; ++a) {
    for (int b = 0; b < 8; ++b) {
      const bool s = neg[a % 4][b % 4] ^ (a >= 4) ^ (b >= 4);
      rows[a][b] = static_cast<std::size_t>(unit[a % 4][b % 4] + (s ? 4 : 0));
    }
  }
  o.require(isomorphic(cd_table(2), CayleyTable::from_rows(rows)).has_value(),
            "cd_table(2) is not isomorphic to H8");
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria = {
      {"exhaustive Inn/Mlt orders, n = 2..4", criterion1},
      {"one-sided orders and Inn_l = Inn_r, n = 3, 4", criterion2},
      {"Inn is a flip space of rank 2^n - 2, n = 3, 4", criterion3},
      {"K and the semidirect decompositions, n = 2..6", criterion4},
      {"rank-mode Inn and Inn_l ranks, n = 5, 6", criterion5},
      {"automorphism groups and non-automorphic witnesses", criterion6},
      {"identity lemmas over full ranges, n = 3, 4", criterion7},
      {"Mlt elements even with orders in {1,2,4}", criterion8},
      {"oracle cross-checks", criterion9},
  };
  bool unexpected = false;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.failures.push_back(std::string("exception: ") + e.what());
    }
    const bool pass = o.failures.empty();
    std::printf("criterion %zu: %s  %s (%.1f s)\n", i + 1, pass ? "PASS" : "FAIL",
                criteria[i].first, seconds_since(start));
    for (const auto& n : o.notes) std::printf("    note: %s\n", n.c_str());
    for (const auto& f : o.failures) {
      const bool known = o.known.count(f) != 0;
      std::printf("    %s: %s\n", known ? "known" : "failed", f.c_str());
      unexpected = unexpected || !known;
    }
  }
  std::fflush(stdout);
  return unexpected ? 1 : 0;
}
