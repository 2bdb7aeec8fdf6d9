// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one PASS/FAIL line each. Exit status is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "locc/locc.hpp"
#include "support.hpp"

using namespace locc;
using testsupport::random_incomparable_pair;
using testsupport::random_state;
using testsupport::strictly_distinct;

namespace {

int failures = 0;

struct check_context {
    std::vector<std::string> problems;
    void expect(bool ok, const std::string& what) {
        if (!ok) problems.push_back(what);
    }
    void expect_near(double value, double target, double tol, const std::string& what) {
        if (std::abs(value - target) > tol)
            problems.push_back(what + ": got " + std::to_string(value) + ", want " +
                               std::to_string(target));
    }
};

void criterion(int number, const std::string& title, double time_budget_s,
               const std::function<void(check_context&)>& body) {
    check_context ctx;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(ctx);
    } catch (const std::exception& e) {
        ctx.problems.push_back(std::string("exception: ") + e.what());
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (time_budget_s > 0 && elapsed > time_budget_s)
        ctx.problems.push_back("runtime " + std::to_string(elapsed) + "s exceeds budget " +
                               std::to_string(time_budget_s) + "s");
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2fs", elapsed);
    if (ctx.problems.empty()) {
        std::cout << "PASS criterion " << number << ": " << title << " [" << buf << "]\n";
    } else {
        ++failures;
        std::cout << "FAIL criterion " << number << ": " << title << " [" << buf << "]";
        for (const auto& p : ctx.problems) std::cout << "\n      - " << p;
        std::cout << "\n";
    }
}

schmidt_vector<rational> load_state(const std::string& name) {
    std::ifstream in(std::string(LOCC_STATES_DIR) + "/" + name);
    if (!in) throw std::runtime_error("missing state file " + name);
    json j;
    in >> j;
    return state_from_json<rational>(j);
}

double e_bits(const schmidt_vector<rational>& s) { return entropy(s); }

}  // namespace

int main() {
    criterion(1, "first worked quadruple reproduced", 1.0, [](check_context& c) {
        auto psi = load_state("example1_psi.json");
        auto phi = load_state("example1_phi.json");
        auto chi = load_state("example1_chi.json");
        auto eta = load_state("example1_eta.json");
        c.expect(classify(psi, phi).incomparable(), "psi-phi incomparable");
        c.expect(classify(chi, eta).incomparable(), "chi-eta incomparable");
        c.expect_near(e_bits(psi), 1.5219, 5e-5, "E(psi)");
        c.expect_near(e_bits(phi), 1.5188, 5e-5, "E(phi)");
        c.expect_near(e_bits(chi), 1.5097, 5e-5, "E(chi)");
        c.expect_near(e_bits(eta), 1.5001, 5e-5, "E(eta)");
        c.expect(joint_convertible<rational>({psi, chi}, {phi, eta}).ok, "joint conversion");
    });

    criterion(2, "second worked quadruple reproduced", 0, [](check_context& c) {
        auto psi = load_state("example2_psi.json");
        auto phi = load_state("example2_phi.json");
        auto chi = load_state("example2_chi.json");
        auto eta = load_state("example2_eta.json");
        c.expect(classify(psi, phi).incomparable(), "psi-phi incomparable");
        c.expect(classify(chi, eta).incomparable(), "chi-eta incomparable");
        c.expect(classify(psi, eta).incomparable(), "psi-eta incomparable");
        c.expect(classify(chi, phi).incomparable(), "chi-phi incomparable");
        c.expect(classify(psi, chi).dir == direction::forward, "psi -> chi");
        c.expect_near(e_bits(psi), 1.5307, 5e-5, "E(psi)");
        c.expect_near(e_bits(phi), 1.5219, 5e-5, "E(phi)");
        c.expect_near(e_bits(chi), 1.5204, 5e-5, "E(chi)");
        c.expect_near(e_bits(eta), 1.50544, 5e-6, "E(eta)");
        c.expect(joint_convertible<rational>({psi, chi}, {phi, eta}).ok, "joint conversion");
    });

    criterion(3, "rank-4 quadruples reproduced", 0, [](check_context& c) {
        auto psi = load_state("example3_psi.json");
        auto phi = load_state("example3_phi.json");
        auto chi3 = load_state("example3_chi.json");
        auto eta3 = load_state("example3_eta.json");
        auto chi4 = load_state("example4_chi.json");
        auto eta4 = load_state("example4_eta.json");
        c.expect(is_strongly_incomparable(psi, phi), "psi-phi strongly incomparable");
        c.expect(is_strongly_incomparable(chi3, eta3), "ex3 chi-eta strongly incomparable");
        c.expect(is_strongly_incomparable(chi4, eta4), "ex4 chi-eta strongly incomparable");
        c.expect_near(e_bits(psi), 1.846, 5e-4, "E(psi)");
        c.expect_near(e_bits(phi), 1.800, 5e-4, "E(phi)");
        c.expect_near(e_bits(chi3), 1.680, 5e-4, "E(ex3 chi)");
        c.expect_near(e_bits(chi4), 1.684, 5e-4, "E(ex4 chi)");
        c.expect_near(e_bits(eta3), 1.592, 5e-4, "E(eta)");
        c.expect(joint_convertible<rational>({psi, chi3}, {phi, eta3}).ok, "ex3 joint");
        c.expect(joint_convertible<rational>({psi, chi4}, {phi, eta4}).ok, "ex4 joint");
        c.expect(classify(psi, chi4).dir == direction::forward, "ex4 psi -> chi");
    });

    criterion(4, "first/last coefficient bounds on 10^4 pairs per rank", 30.0,
              [](check_context& c) {
                  std::mt19937_64 gen(1004);
                  for (int d = 3; d <= 6; ++d) {
                      for (int i = 0; i < 10'000; ++i) {
                          auto [x, y] = random_incomparable_pair<double>(gen, d);
                          if (!theorem_bounds(x, y)) {
                              c.expect(false, "bounds fail at rank " + std::to_string(d));
                              return;
                          }
                      }
                  }
              });

    criterion(5, "assist criterion equals brute-force majorization on 10^4 pairs", 0,
              [](check_context& c) {
                  std::mt19937_64 gen(1005);
                  for (int i = 0; i < 10'000; ++i) {
                      const int d = 3 + i % 3;
                      auto x = random_state<rational>(gen, d);
                      auto y = random_state<rational>(gen, d);
                      const bool closed = maxent_assist_feasible(x, y);
                      const bool brute =
                          verify<rational>({x, uniform_state<rational>(d - 1)}, {y}).ok;
                      if (closed != brute) {
                          c.expect(false, "disagreement at sample " + std::to_string(i));
                          return;
                      }
                  }
              });

    criterion(6, "minimal assist matches the exact oracle on 10^3 pairs per case", 0,
              [](check_context& c) {
                  auto ex_a = minimal_assist_3x3(load_state("example1_psi.json"),
                                                 load_state("example1_phi.json"));
                  c.expect(ex_a.c == rational(37, 40), "worked value c0 = 0.925");
                  auto ex_b = minimal_assist_3x3(load_state("example1_phi.json"),
                                                 load_state("example1_psi.json"));
                  c.expect(ex_b.c == rational(5, 6), "worked value c0 = 5/6");

                  std::mt19937_64 gen(1006);
                  const rational delta(1, 1'000'000);
                  int done_a = 0, done_b = 0;
                  numeric_config<rational> cfg;
                  while (done_a < 1000 || done_b < 1000) {
                      auto [x, y] = random_incomparable_pair<rational>(gen, 3);
                      auto which = *classify(x, y).case3x3;
                      if (which == rank3_case::case_a) {
                          if (done_a == 1000) continue;
                          ++done_a;
                      } else {
                          if (done_b == 1000) continue;
                          ++done_b;
                      }
                      // the constructor compares against the oracle and
                      // rechecks feasibility at c0 / refutation at c0+1e-6
                      assist_plan<rational> plan = minimal_assist_3x3(x, y, cfg);
                      const rational c0 = *plan.c;
                      if (c0 != max_c_oracle(x, y, cfg).c) {
                          c.expect(false, "closed form differs from oracle");
                          return;
                      }
                      if (!detail::feasible_at_c(x, y, c0, cfg) ||
                          detail::feasible_at_c(x, y, c0 + delta, cfg)) {
                          c.expect(false, "c0 verification or refutation failed");
                          return;
                      }
                  }
              });

    criterion(7, "two-qubit chains verified for ranks 2..12", 10.0, [](check_context& c) {
        for (std::size_t d = 2; d <= 12; ++d) {
            auto chain = maxent_chain<rational>(d);
            c.expect(chain.size() == d - 1, "chain length at d " + std::to_string(d));
            auto plan =
                maxent_assist_plan(uniform_state<rational>(d), uniform_state<rational>(d));
            c.expect(plan.cost_bits == std::log2(double(d - 1)),
                     "cost accounting at d " + std::to_string(d));
        }
    });

    criterion(8, "synthesis succeeds on >= 95% of 10^3 random pairs per case", 0,
              [](check_context& c) {
                  std::mt19937_64 gen(1008);
                  int na = 0, nb = 0, oka = 0, okb = 0;
                  while (na < 1000 || nb < 1000) {
                      auto [x, y] = random_incomparable_pair<rational>(gen, 3, 9999, true);
                      auto which = *classify(x, y).case3x3;
                      const bool is_a = which == rank3_case::case_a;
                      if (is_a ? na == 1000 : nb == 1000) continue;
                      (is_a ? na : nb)++;
                      try {
                          auto s = is_a ? synthesize_case_a(x, y) : synthesize_case_b(x, y);
                          bool good = s.certificate.ok && s.psi2_phi2.incomparable();
                          good = good && entropy(x) + entropy(s.aux_source) >=
                                             entropy(y) + entropy(s.aux_target) - 1e-10;
                          if (!good) {
                              c.expect(false, "uncertified synthesis returned");
                              return;
                          }
                          (is_a ? oka : okb)++;
                      } catch (const error&) {
                          // counted as a failure of the synthesis, not the suite
                      }
                  }
                  c.expect(oka >= 950, "case-a rate " + std::to_string(oka) + "/1000");
                  c.expect(okb >= 950, "case-b rate " + std::to_string(okb) + "/1000");
              });

    criterion(9, "two-copy constructions on 10^3 sources plus the worked window", 0,
              [](check_context& c) {
                  auto psi =
                      make_state<rational>({rational(1, 2), rational(3, 10), rational(1, 5)});
                  auto chi = make_state<rational>(
                      {rational(9, 20), rational(2, 5), rational(3, 20)});
                  auto r = two_copy_complete(psi, chi);
                  c.expect(r.interval_lo == rational(1, 5) && r.interval_hi == rational(9, 40),
                           "worked interval (0.2, 0.225)");
                  c.expect(r.certificate.ok, "worked eta verified");

                  std::mt19937_64 gen(1009);
                  int done = 0;
                  while (done < 1000) {
                      auto x = random_state<rational>(gen, 3, 9999);
                      if (!strictly_distinct(x) || x.rank() != 3) continue;
                      if (x[1] * x[1] == x[0] * x[2]) continue;  // documented boundary edge
                      ++done;
                      try {
                          auto s = two_copy_split(x);
                          if (!s.certificate.ok || !classify(x, s.chi).incomparable() ||
                              !classify(x, s.eta).incomparable()) {
                              c.expect(false, "split returned without a valid certificate");
                              return;
                          }
                      } catch (const error& e) {
                          c.expect(false, std::string("split failed: ") + e.what());
                          return;
                      }
                  }
              });

    criterion(10, "catalyst grid search: absent for 3x3, witness for 4x4", 120.0,
              [](check_context& c) {
                  std::mt19937_64 gen(1010);
                  search_config<rational> cfg;
                  cfg.resolution = rational(1, 100);
                  for (int i = 0; i < 100; ++i) {
                      auto [x, y] = random_incomparable_pair<rational>(gen, 3, 999, true);
                      if (!is_strongly_incomparable(x, y)) {
                          c.expect(false, "sampled pair not strongly incomparable");
                          return;
                      }
                      for (std::size_t rank : {2u, 3u}) {
                          cfg.rank = rank;
                          if (catalyst_search(x, y, cfg).catalyst) {
                              c.expect(false, "catalyst reported for a 3x3 pair");
                              return;
                          }
                      }
                  }
                  cfg.rank = 2;
                  auto psi = make_state<rational>({rational(2, 5), rational(2, 5),
                                                   rational(1, 10), rational(1, 10)});
                  auto phi = make_state<rational>(
                      {rational(1, 2), rational(1, 4), rational(1, 4), rational(0)});
                  auto found = catalyst_search(psi, phi, cfg);
                  c.expect(found.catalyst.has_value(), "4x4 catalytic witness");
                  if (found.catalyst)
                      c.expect(verify<rational>({psi, *found.catalyst}, {phi, *found.catalyst}).ok,
                               "4x4 witness re-verifies");
              });

    criterion(11, "core invariant suites at 10^3 cases each", 0, [](check_context& c) {
        std::mt19937_64 gen(1011);
        numeric_config<double> fcfg;

        for (int i = 0; i < 1000; ++i) {  // sorting idempotence
            auto s = random_state<double>(gen, 1 + int(gen() % 6));
            if (!(make_state<double>(s.coeffs()) == s)) {
                c.expect(false, "sorting idempotence");
                return;
            }
        }
        for (int i = 0; i < 1000; ++i) {  // tensor commutativity
            auto u = random_state<rational>(gen, 2 + int(gen() % 3), 99);
            auto v = random_state<rational>(gen, 2 + int(gen() % 3), 99);
            if (!(tensor(u, v) == tensor(v, u))) {
                c.expect(false, "tensor commutativity");
                return;
            }
        }
        for (int i = 0; i < 1000; ++i) {  // majorization preorder
            auto a = random_state<rational>(gen, 4, 30);
            auto b = random_state<rational>(gen, 4, 30);
            auto t = random_state<rational>(gen, 4, 30);
            bool ok = majorized_by(a, a);
            if (majorized_by(a, b) && majorized_by(b, t)) ok = ok && majorized_by(a, t);
            if (!ok) {
                c.expect(false, "majorization preorder");
                return;
            }
        }
        for (int i = 0; i < 1000; ++i) {  // entropy additivity and bounds
            auto u = random_state<double>(gen, 2 + int(gen() % 4));
            auto v = random_state<double>(gen, 2 + int(gen() % 4));
            bool ok = std::abs(entropy(tensor(u, v)) - entropy(u) - entropy(v)) < 1e-10;
            ok = ok && entropy(u) >= 0.0 && entropy(u) <= std::log2(double(u.size())) + 1e-12;
            if (!ok) {
                c.expect(false, "entropy additivity/bounds");
                return;
            }
        }
        int agreement_checked = 0;  // rational/float agreement away from ties
        while (agreement_checked < 1000) {
            auto x = random_state<rational>(gen, 3, 10'000);
            auto y = random_state<rational>(gen, 3, 10'000);
            std::vector<double> xd, yd;
            for (const auto& v : x.coeffs()) xd.push_back(to_double(v));
            for (const auto& v : y.coeffs()) yd.push_back(to_double(v));
            bool wide = true;
            for (const auto& [px, py] : majorization_report(x, y).prefix_pairs) {
                double gap = std::abs(to_double(px) - to_double(py));
                if (gap != 0.0 && gap <= 10 * fcfg.eps) wide = false;
            }
            if (!wide) continue;
            ++agreement_checked;
            if (majorized_by(x, y) !=
                majorized_by(make_state<double>(xd), make_state<double>(yd), fcfg)) {
                c.expect(false, "rational/float agreement");
                return;
            }
        }
        for (int i = 0; i < 1000; ++i) {  // 2x2 totality
            auto x = random_state<double>(gen, 2);
            auto y = random_state<double>(gen, 2);
            if (classify(x, y).dir == direction::neither) {
                c.expect(false, "2x2 totality");
                return;
            }
        }
        int forward_checked = 0;  // entropy monotone under forward conversion
        while (forward_checked < 1000) {
            auto x = random_state<double>(gen, 2 + int(gen() % 3));
            auto y = random_state<double>(gen, 2 + int(gen() % 3));
            if (classify(x, y).dir != direction::forward) continue;
            ++forward_checked;
            if (entropy(x) < entropy(y) - 1e-10) {
                c.expect(false, "entropy monotone under forward conversion");
                return;
            }
        }
    });

    if (failures == 0) std::cout << "all criteria passed\n";
    return failures;
}
