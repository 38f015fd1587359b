// One PASS/FAIL line per acceptance criterion. Optional argument: path to the CLI binary,
// used by criterion 9 to compare two CLI runs byte for byte.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "blowup/report.hpp"
#include "support.hpp"

using namespace blowup;
using namespace blowup::testing;

namespace {

using QQ = RationalField;
using Fp = PrimeField;
using Clock = std::chrono::steady_clock;

// pinned limits
constexpr double kOracleSeconds = 1.0;
constexpr double kSmallInstanceSeconds = 60.0;   // d = 3
constexpr double kLargeInstanceSeconds = 300.0;  // d = 4
constexpr int kPerShape = 20;
constexpr int kControlsPerShape = 10;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::printf("%s %d %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3fs", s);
  return buf;
}

template <class K>
LinearMatrix<K> matrix(const RingPtr<K>& r, std::size_t rows, std::size_t cols, std::vector<std::string> entries) {
  std::vector<Polynomial<K>> es;
  for (auto& e : entries) es.push_back(P(r, e));
  return LinearMatrix<K>(r, 0, rows, cols, std::move(es));
}

struct Tally {
  int total = 0, passed = 0;
  std::string first_failure;
  void add(bool ok, const std::string& what) {
    ++total;
    if (ok)
      ++passed;
    else if (first_failure.empty())
      first_failure = what;
  }
  bool ok() const { return total > 0 && passed == total; }
  std::string text() const {
    std::string s = std::to_string(passed) + "/" + std::to_string(total);
    if (!first_failure.empty()) s += ", first failure " + first_failure;
    return s;
  }
};

bool is_true(const VerificationReport& r, const std::string& name) {
  auto f = r.flag(name);
  return f.evaluated() && f.value();
}

bool is_false(const VerificationReport& r, const std::string& name) {
  auto f = r.flag(name);
  return f.evaluated() && !f.value();
}

void criterion1() {
  bool ok = true;
  std::string detail;
  {
    auto t0 = Clock::now();
    auto rings = BlowupRings<QQ>::make(QQ(), {"x", "y"}, 2);
    auto r = rees_ideal(matrix(rings.x, 2, 1, {"y", "-x"}), rings);
    bool eq = ideal_equal(r.rees, ideal(rings.xt, {"x*t2 - y*t1"})) && r.fiber.is_zero();
    double s = since(t0);
    ok = ok && eq && s < kOracleSeconds;
    detail += std::string("(x,y) ") + (eq ? "match" : "MISMATCH") + " " + seconds(s);
  }
  {
    auto t0 = Clock::now();
    auto rings = BlowupRings<QQ>::make(QQ(), {"x", "y"}, 3);
    auto r = rees_ideal(matrix(rings.x, 3, 2, {"y", "0", "-x", "y", "0", "-x"}), rings);
    bool eq = ideal_equal(r.rees, ideal(rings.xt, {"t2*x - t1*y", "t3*x - t2*y", "t1*t3 - t2^2"})) &&
              ideal_equal(r.fiber, ideal(rings.t, {"t1*t3 - t2^2"}));
    double s = since(t0);
    ok = ok && eq && s < kOracleSeconds;
    detail += std::string(", (x^2,xy,y^2) ") + (eq ? "match" : "MISMATCH") + " " + seconds(s);
  }
  report(1, ok, detail);
}

struct SuiteResult {
  Tally c2, c4, c5, c6, c7;
  double slowest3 = 0, slowest4 = 0;
};

SuiteResult theorem_suite() {
  const std::vector<std::array<std::size_t, 3>> shapes{{3, 4, 1}, {3, 5, 1}, {3, 5, 2}, {4, 5, 1}, {4, 6, 1}};
  SuiteResult out;
  for (const auto& [d, n, u] : shapes) {
    for (int i = 0; i < kPerShape; ++i) {
      const std::uint64_t seed = 1000 * d + 100 * n + 10 * u + static_cast<std::uint64_t>(i);
      const std::string tag = "(" + std::to_string(d) + "," + std::to_string(n) + "," + std::to_string(u) +
                              ") seed " + std::to_string(seed);
      auto t0 = Clock::now();
      VerificationReport r;
      try {
        auto phi = generate_instance(d, n, u, Fp(), seed);
        VerifyOptions o;
        o.seed = seed;
        r = verify_main_theorem(phi, o);
      } catch (const std::exception& e) {
        for (auto* t : {&out.c2, &out.c4, &out.c5, &out.c6, &out.c7}) t->add(false, tag + ": " + e.what());
        continue;
      }
      const double s = since(t0);
      double& slowest = d == 3 ? out.slowest3 : out.slowest4;
      slowest = std::max(slowest, s);
      const double limit = d == 3 ? kSmallInstanceSeconds : kLargeInstanceSeconds;
      const bool clean = r.mode == "theorem" && r.budget_notes.empty() && r.consistent() && s < limit;

      out.c2.add(clean && r.spread == static_cast<int>(d) && is_true(r, "fiber_type") &&
                     is_false(r, "expected_form") && r.indeg_q == d - 1 && is_true(r, "minors_B_in_Q") &&
                     is_true(r, "expected_form_contained"),
                 tag);
      out.c4.add(clean && is_true(r, "height_I_n_minus_d_plus_1_is_d_minus_1") && r.u == u &&
                     r.sym_dim == static_cast<int>(n) && r.rank_b == d,
                 tag);
      out.c5.add(clean && is_true(r, "module_G_d_minus_1") && r.module_sym_dim == static_cast<int>(n + 1) &&
                     r.rank_b_prime == d - 1,
                 tag);
      out.c6.add(clean && is_true(r, "det_identity_all") && is_true(r, "deficient_dets_in_Q"), tag);
      out.c7.add(clean && is_true(r, "inverse_representatives_nonempty") && !r.inverse_representatives.empty() &&
                     is_true(r, "inverse_cross_compatible"),
                 tag);
    }
  }
  return out;
}

void criterion3() {
  Tally t;
  for (std::size_t d : {3u, 4u}) {
    int found = 0;
    for (std::uint64_t seed = 1; found < kControlsPerShape && seed <= 100; ++seed) {
      const std::string tag = "generic d=" + std::to_string(d) + " seed " + std::to_string(seed);
      try {
        auto phi = generate_generic(d, d + 1, Fp(), seed);
        MinorHeights<Fp> h(phi);
        if (!check_Gs_ideal(h, d).holds) continue;
        ++found;
        auto r = verify_main_theorem(phi);
        t.add(r.mode == "expected-form" && is_true(r, "expected_form") && r.consistent() &&
                  (r.fiber.empty() || r.indeg_q == d),
              tag);
      } catch (const std::exception& e) {
        t.add(false, tag + ": " + e.what());
      }
    }
    if (found < kControlsPerShape) t.add(false, "too few G_d controls for d=" + std::to_string(d));
  }
  report(3, t.ok(), "G_d controls " + t.text());
}

int brute_force_monomial_dimension(const std::vector<Monomial>& gens, std::size_t nvars) {
  int best = -1;
  for (std::uint32_t s = 0; s < (1u << nvars); ++s) {
    bool ok = true;
    for (const auto& g : gens) {
      bool inside = true;
      for (std::size_t v = 0; v < nvars; ++v)
        if (g.e[v] && !(s & (1u << v))) inside = false;
      if (inside) {
        ok = false;
        break;
      }
    }
    if (ok) best = std::max(best, __builtin_popcount(s));
  }
  return best;
}

template <class K>
void algebra_checks(K field, std::uint64_t seed, int rounds, Tally& t) {
  auto r = ring(field, {"a", "b", "c"});
  auto dst = ring(field, {"u", "v", "w"});
  std::mt19937_64 rng(seed);
  for (int i = 0; i < rounds; ++i) {
    auto p = random_poly(r, rng, 4, 2);
    auto q = random_poly(r, rng, 3, 2);
    auto s = random_poly(r, rng, 3, 3);
    bool ok = (p * q) * s == p * (q * s) && p * (q + s) == p * q + p * s && (p + q) + s == p + (q + s) &&
              p * q == q * p && (p - p).is_zero();
    std::map<std::string, Polynomial<K>> sigma{{"a", random_poly(dst, rng, 2, 2)},
                                               {"b", random_poly(dst, rng, 2, 1)},
                                               {"c", random_poly(dst, rng, 1, 1)}};
    ok = ok && substitute(p * q, sigma, dst) == substitute(p, sigma, dst) * substitute(q, sigma, dst) &&
         substitute(p + q, sigma, dst) == substitute(p, sigma, dst) + substitute(q, sigma, dst);
    t.add(ok, "polynomial round " + std::to_string(i));
  }
}

void criterion8() {
  Tally poly, member, dims;
  algebra_checks(QQ(), 11, 500, poly);
  algebra_checks(Fp(), 12, 500, poly);

  std::mt19937_64 rng(101);
  std::uniform_int_distribution<int> e(0, 3), cnt(1, 5);
  auto r = ring(Fp(), {"a", "b", "c", "d"});
  for (int round = 0; round < 100; ++round) {
    std::vector<Polynomial<Fp>> gens;
    std::vector<Monomial> mons;
    const int ng = cnt(rng);
    for (int i = 0; i < ng; ++i) {
      Monomial m;
      for (std::size_t v = 0; v < 4; ++v) m.e[v] = static_cast<std::uint8_t>(e(rng));
      if (m.is_one()) m.e[0] = 1;
      mons.push_back(m);
      gens.push_back(Polynomial<Fp>::monomial(r, m, 1));
    }
    auto gb = buchberger(Ideal<Fp>(r, gens));
    bool ok = gb.dimension() == brute_force_monomial_dimension(mons, 4);
    for (int probe = 0; probe < 20; ++probe) {
      Monomial m;
      for (std::size_t v = 0; v < 4; ++v) m.e[v] = static_cast<std::uint8_t>(e(rng) + e(rng));
      bool brute = false;
      for (const auto& g : mons) brute = brute || divides(g, m);
      ok = ok && gb.contains(Polynomial<Fp>::monomial(r, m, 5)) == brute;
    }
    member.add(ok, "monomial ideal " + std::to_string(round));
  }

  auto lex = r->with_order(MonomialOrder::lex(4));
  for (int round = 0; round < 50; ++round) {
    std::vector<Polynomial<Fp>> gens;
    for (int i = 0; i < 1 + round % 3; ++i) gens.push_back(random_poly(r, rng, 2, 1));
    Ideal<Fp> I(r, gens);
    dims.add(buchberger(I).dimension() == buchberger(I.reordered(lex)).dimension(), "ideal " + std::to_string(round));
  }
  report(8, poly.ok() && member.ok() && dims.ok(),
         "polynomial identities " + poly.text() + ", monomial membership " + member.text() +
             ", dimension grevlex vs lex " + dims.text());
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion9(const char* cli) {
  bool ok = true;
  std::string detail;
  int same = 0, total = 0;
  for (auto [d, n, u] : std::vector<std::array<std::size_t, 3>>{{3, 4, 1}, {3, 5, 2}, {4, 5, 1}}) {
    auto phi = generate_instance(d, n, u, Fp(), 42);
    VerifyOptions o;
    o.seed = 9;
    ReportOptions ro;
    auto a = report_json(verify_main_theorem(phi, o), ro).dump(2);
    auto b = report_json(verify_main_theorem(phi, o), ro).dump(2);
    ++total;
    if (a == b) ++same;
  }
  ok = same == total;
  detail = "in-process reports identical " + std::to_string(same) + "/" + std::to_string(total);

  if (cli) {
    namespace fs = std::filesystem;
    auto dir = fs::temp_directory_path() / ("blowup-acceptance-" + std::to_string(::getpid()));
    fs::create_directories(dir);
    auto input = dir / "instance.mat";
    {
      std::ofstream f(input);
      f << write_matrix_file(generate_instance(3, 5, 1, Fp(), 5), 1);
    }
    int status[2];
    for (int run = 0; run < 2; ++run) {
      auto out = dir / ("run" + std::to_string(run) + ".json");
      std::string cmd = std::string("\"") + cli + "\" verify \"" + input.string() + "\" --seed 3 -o \"" +
                        out.string() + "\" 2>/dev/null";
      status[run] = std::system(cmd.c_str());
    }
    auto r0 = slurp(dir / "run0.json"), r1 = slurp(dir / "run1.json");
    bool cli_ok = status[0] == 0 && status[1] == 0 && !r0.empty() && r0 == r1;
    ok = ok && cli_ok;
    detail += std::string(", CLI runs ") + (cli_ok ? "byte-identical" : "DIFFER or failed") + " (" +
              std::to_string(r0.size()) + " bytes)";
    fs::remove_all(dir);
  } else {
    detail += ", CLI comparison skipped (no binary given)";
  }
  report(9, ok, detail);
}

}  // namespace

int main(int argc, char** argv) {
  try {
    criterion1();
    auto suite = theorem_suite();
    report(2, suite.c2.ok(),
           "theorem instances " + suite.c2.text() + ", slowest d=3 " + seconds(suite.slowest3) + ", d=4 " +
               seconds(suite.slowest4));
    criterion3();
    report(4, suite.c4.ok(), "height, u, Sym dimension, rank B " + suite.c4.text());
    report(5, suite.c5.ok(), "module G_{d-1}, Sym dimension, rank B' " + suite.c5.text());
    report(6, suite.c6.ok(), "determinant identity " + suite.c6.text());
    report(7, suite.c7.ok(), "inverse representatives " + suite.c7.text());
    criterion8();
    criterion9(argc > 1 ? argv[1] : nullptr);
  } catch (const std::exception& e) {
    std::printf("FAIL aborted: %s\n", e.what());
    return 1;
  }
  return failures == 0 ? 0 : 1;
}
