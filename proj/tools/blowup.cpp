#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "blowup/report.hpp"

using namespace blowup;
using Json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kViolation = 1, kUsage = 2, kBudget = 3 };

struct Config {
  std::size_t max_pairs = 0;
  unsigned max_degree = 0;
  std::uint64_t seed = 1;
  std::string output;
  std::string rees_method = "saturation";
  std::uint64_t point_cap = 1000000;
  std::size_t specialization_tries = 50;
  std::size_t max_d = 4, max_n = 7;
  bool timings = false;

  GroebnerBudget budget() const {
    auto b = GroebnerBudget::from_env();
    if (max_pairs) b.max_pairs = max_pairs;
    if (max_degree) b.max_degree = max_degree;
    return b;
  }

  VerifyOptions verify_options() const {
    VerifyOptions o;
    o.budget = budget();
    o.seed = seed;
    o.specialization_tries = specialization_tries;
    o.point_cap = point_cap;
    o.rees_method = rees_method == "elimination" ? ReesMethod::elimination : ReesMethod::saturation;
    o.max_d = max_d;
    o.max_n = max_n;
    return o;
  }

  ReportOptions report_options() const { return {timings, budget(), verify_options().rees_method}; }
};

void emit(const Config& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.output);
  if (!out) throw PreconditionError("cannot write '" + cfg.output + "'");
  out << text;
}

void emit(const Config& cfg, const Json& j) { emit(cfg, j.dump(2) + "\n"); }

int status_of(const VerificationReport& rep) {
  if (!rep.consistent()) return kViolation;
  if (!rep.budget_notes.empty()) return kBudget;
  return kOk;
}

template <class K>
VerificationReport run_verify(const Presentation<K>& p, const Config& cfg) {
  auto rep = verify_main_theorem(p.phi, cfg.verify_options(), p.point);
  if (p.u && rep.u && *p.u != *rep.u)
    rep.notices.push_back("declared u = " + std::to_string(*p.u) + " differs from the computed u = " +
                          std::to_string(*rep.u));
  return rep;
}

int cmd_verify(const std::string& path, const Config& cfg, bool analyze) {
  auto pres = build_presentation(read_matrix_file(path));
  auto rep = std::visit([&](const auto& p) { return run_verify(p, cfg); }, pres);
  auto opts = cfg.report_options();
  opts.timings = opts.timings || analyze;
  emit(cfg, report_json(rep, opts));
  int status = status_of(rep);
  std::cerr << (status == kOk ? "consistent" : status == kBudget ? "budget exceeded" : "INCONSISTENT")
            << ": mode " << rep.mode << ", d=" << rep.d << " n=" << rep.n;
  if (rep.u) std::cerr << " u=" << *rep.u;
  std::cerr << "\n";
  for (const auto& c : rep.claims)
    if (!c.consistent()) std::cerr << "  claim " << c.name << " observed " << c.observed.to_string() << "\n";
  return status;
}

Json header(std::uint64_t hash, const Config& cfg) {
  Json j;
  j["schema"] = kReportSchema;
  j["tool"] = {{"name", "blowup"}, {"version", tool_version()}};
  j["input_hash"] = hex64(hash);
  j["seed"] = cfg.seed;
  return j;
}

template <class K>
std::vector<std::string> strings(const std::vector<Polynomial<K>>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(p.to_string());
  return out;
}

template <class K>
std::vector<std::string> block_names(const LinearMatrix<K>& m) {
  std::vector<std::string> out;
  for (auto v : m.block_vars()) out.push_back(m.ring()->names()[v]);
  return out;
}

int cmd_gs(const std::string& path, std::size_t s, const Config& cfg) {
  auto pres = build_presentation(read_matrix_file(path));
  return std::visit(
      [&](const auto& p) {
        MinorHeights h(p.phi, cfg.budget());
        auto prof = check_Gs_ideal(h, s);
        auto j = header(input_hash(p.phi), cfg);
        j["s"] = s;
        j["holds"] = prof.holds;
        j["failing_j"] = prof.failing_j ? Json(*prof.failing_j) : Json(nullptr);
        Json checks = Json::array();
        for (const auto& c : prof.checks)
          checks.push_back({{"j", c.j}, {"height", c.height}, {"required", c.required}, {"ok", c.ok()}});
        j["checks"] = checks;
        emit(cfg, j);
        return int{kOk};
      },
      pres);
}

int cmd_rees(const std::string& path, const Config& cfg, bool fiber_only) {
  auto pres = build_presentation(read_matrix_file(path));
  return std::visit(
      [&](const auto& p) {
        using K = std::decay_t<decltype(p.phi.ring()->field())>;
        auto rings = BlowupRings<K>::make(p.phi.ring()->field(), block_names(p.phi), p.phi.rows());
        auto rees = rees_ideal(p.phi, rings, cfg.budget(), cfg.verify_options().rees_method);
        auto gq = buchberger(rees.fiber, cfg.budget());
        auto j = header(input_hash(p.phi), cfg);
        j["generators"] = strings(rees.generators);
        if (!fiber_only) {
          j["rees"] = strings(rees.rees.generators());
          j["rees_dimension"] = rings.d + 1;
          j["symmetric_is_rees"] = ideal_equal(rees.rees, symmetric_ideal(p.phi, rings), cfg.budget());
        }
        j["fiber"] = strings(gq.elements());
        j["fiber_initial_degree"] = gq.initial_degree() ? Json(*gq.initial_degree()) : Json(nullptr);
        j["analytic_spread"] = gq.dimension();
        emit(cfg, j);
        return int{kOk};
      },
      pres);
}

int cmd_dual(const std::string& path, const Config& cfg) {
  auto pres = build_presentation(read_matrix_file(path));
  return std::visit(
      [&](const auto& p) {
        using K = std::decay_t<decltype(p.phi.ring()->field())>;
        auto rings = BlowupRings<K>::make(p.phi.ring()->field(), block_names(p.phi), p.phi.rows());
        auto b = jacobian_dual(p.phi.in_ring(rings.x, 0), rings.t, 0);
        auto j = header(input_hash(p.phi), cfg);
        j["jacobian_dual"] = b.to_strings();
        j["rank"] = rank_mod(b, static_cast<const GroebnerBasis<K>*>(nullptr));
        emit(cfg, j);
        return int{kOk};
      },
      pres);
}

template <class K>
std::string generate(std::size_t d, std::size_t n, std::size_t u, bool generic, const K& field, const Config& cfg) {
  std::ostringstream note;
  if (generic) {
    note << "generic d=" << d << " n=" << n << " seed=" << cfg.seed;
    return write_matrix_file(generate_generic(d, n, field, cfg.seed), std::nullopt, {note.str()});
  }
  note << "generated d=" << d << " n=" << n << " u=" << u << " seed=" << cfg.seed;
  return write_matrix_file(generate_instance(d, n, u, field, cfg.seed, 200, cfg.budget()), u, {note.str()});
}

CoeffField field_from(const std::string& s) {
  std::string text = "field: " + s + "\nvars: x\nx\n";
  std::istringstream file(text);
  return parse_matrix_file(file).field;
}

int cmd_gen(std::size_t d, std::size_t n, std::size_t u, bool generic, const std::string& field, const Config& cfg) {
  auto f = field_from(field);
  if (f.kind == FieldKind::rationals)
    emit(cfg, generate(d, n, u, generic, RationalField(), cfg));
  else
    emit(cfg, generate(d, n, u, generic, PrimeField(f.modulus), cfg));
  return kOk;
}

struct Shape {
  std::size_t d, n, u;
};

struct BatchRow {
  std::size_t index = 0;
  Shape shape{};
  std::uint64_t seed = 0;
  int status = kOk;
  std::string error;
  std::optional<VerificationReport> report;
  double seconds = 0;
};

template <class K>
BatchRow batch_one(std::size_t index, Shape s, std::uint64_t seed, const K& field, const Config& cfg) {
  BatchRow row;
  row.index = index;
  row.shape = s;
  row.seed = seed;
  auto t0 = std::chrono::steady_clock::now();
  try {
    auto phi = generate_instance(s.d, s.n, s.u, field, seed, 200, cfg.budget());
    auto opts = cfg.verify_options();
    opts.seed = seed;
    row.report = verify_main_theorem(phi, opts);
    row.status = status_of(*row.report);
  } catch (const BudgetExceeded& e) {
    row.status = kBudget;
    row.error = e.what();
  } catch (const TheoremViolation& e) {
    row.status = kViolation;
    row.error = e.what();
  } catch (const Error& e) {
    row.status = kUsage;
    row.error = e.what();
  }
  row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return row;
}

int cmd_batch(std::size_t count, std::vector<std::size_t> shape, std::size_t jobs, const std::string& field,
              const Config& cfg) {
  std::vector<Shape> shapes;
  if (shape.empty())
    shapes = {{3, 4, 1}, {3, 5, 1}, {3, 5, 2}, {4, 5, 1}, {4, 6, 1}};
  else
    shapes = {{shape[0], shape[1], shape[2]}};
  auto f = field_from(field);
  std::vector<BatchRow> rows(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < count;) {
      Shape s = shapes[i % shapes.size()];
      std::uint64_t seed = cfg.seed + i;
      rows[i] = f.kind == FieldKind::rationals ? batch_one(i, s, seed, RationalField(), cfg)
                                               : batch_one(i, s, seed, PrimeField(f.modulus), cfg);
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < std::max<std::size_t>(1, jobs); ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  const char* flags[] = {"fiber_type", "expected_form", "birational", "det_identity_all", "specialization_MU"};
  int status = kOk;
  Json summary = header(0, cfg);
  summary.erase("input_hash");
  Json instances = Json::array();
  std::printf("%4s %-9s %8s %-12s %-5s %-5s %-5s %-5s %-5s %5s %8s %7s %6s\n", "#", "shape", "seed", "status",
              "fiber", "expct", "birat", "det", "MU", "indeg", "seconds", "pairs", "basis");
  for (const auto& r : rows) {
    auto name = [&] {
      if (r.status == kOk) return "consistent";
      if (r.status == kBudget) return "budget";
      if (r.status == kViolation) return "VIOLATION";
      return "rejected";
    }();
    if (r.status == kViolation || (r.status != kOk && status != kViolation)) status = std::max(status, r.status);
    if (r.status == kViolation) status = kViolation;
    char shape_s[32];
    std::snprintf(shape_s, sizeof shape_s, "(%zu,%zu,%zu)", r.shape.d, r.shape.n, r.shape.u);
    std::string cells[5];
    for (int k = 0; k < 5; ++k) cells[k] = r.report ? r.report->flag(flags[k]).to_string().substr(0, 5) : "-";
    std::string indeg = r.report && r.report->indeg_q ? std::to_string(*r.report->indeg_q) : "-";
    std::size_t pairs = r.report ? r.report->rees_stats.pairs_processed : 0;
    std::size_t basis = r.report ? r.report->rees_stats.basis_size : 0;
    std::printf("%4zu %-9s %8llu %-12s %-5s %-5s %-5s %-5s %-5s %5s %8.3f %7zu %6zu\n", r.index, shape_s,
                static_cast<unsigned long long>(r.seed), name, cells[0].c_str(), cells[1].c_str(),
                cells[2].c_str(), cells[3].c_str(), cells[4].c_str(), indeg.c_str(), r.seconds, pairs, basis);
    Json ij;
    ij["index"] = r.index;
    ij["shape"] = {{"d", r.shape.d}, {"n", r.shape.n}, {"u", r.shape.u}};
    ij["seed"] = r.seed;
    ij["status"] = name;
    if (!r.error.empty()) ij["error"] = r.error;
    if (r.report) {
      ij["input_hash"] = hex64(r.report->input_hash);
      ij["consistent"] = r.report->consistent();
      Json fj;
      for (auto fl : flags) fj[fl] = r.report->flag(fl).to_string();
      ij["flags"] = fj;
      ij["indeg_q"] = r.report->indeg_q ? Json(*r.report->indeg_q) : Json(nullptr);
      ij["rees_groebner"] = {{"pairs_processed", pairs}, {"basis_size", basis}};
    }
    ij["seconds"] = r.seconds;
    instances.push_back(ij);
  }
  std::size_t ok = std::count_if(rows.begin(), rows.end(), [](const BatchRow& r) { return r.status == kOk; });
  std::printf("%zu/%zu consistent\n", ok, rows.size());
  summary["count"] = count;
  summary["consistent"] = ok;
  summary["instances"] = instances;
  if (!cfg.output.empty()) emit(cfg, summary);
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Blow-up algebras of linearly presented height two perfect ideals"};
  app.set_version_flag("--version", tool_version());
  app.require_subcommand(1);
  Config cfg;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--max-pairs", cfg.max_pairs, "S-pair cap per basis (env BLOWUP_MAX_PAIRS)");
    sub->add_option("--max-degree", cfg.max_degree, "S-pair degree cap (env BLOWUP_MAX_DEGREE)");
    sub->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    sub->add_option("-o,--output", cfg.output, "write the result here instead of stdout");
    sub->add_option("--rees-method", cfg.rees_method, "saturation or elimination")
        ->check(CLI::IsMember({"saturation", "elimination"}))
        ->capture_default_str();
    sub->add_option("--point-cap", cfg.point_cap, "points enumerated before giving up")->capture_default_str();
    sub->add_option("--specialization-tries", cfg.specialization_tries, "linear forms tried")->capture_default_str();
    sub->add_option("--max-d", cfg.max_d, "largest number of variables accepted")->capture_default_str();
    sub->add_option("--max-n", cfg.max_n, "largest number of generators accepted")->capture_default_str();
  };

  std::string file;
  std::size_t s = 2, d = 3, n = 4, u = 1, count = 10, jobs = 1;
  std::vector<std::size_t> shape;
  std::string field = "fp 32003";
  bool generic = false;

  auto analyze = app.add_subcommand("analyze", "full report, with timings");
  auto verify = app.add_subcommand("verify", "main theorem pipeline; exit status reflects consistency");
  auto gs = app.add_subcommand("gs", "check condition G_s");
  auto rees = app.add_subcommand("rees", "Rees ideal and special fiber");
  auto fiber = app.add_subcommand("fiber", "special fiber ideal");
  auto dual = app.add_subcommand("dual", "Jacobian dual matrix B");
  auto gen = app.add_subcommand("gen", "generate an instance as a matrix file");
  auto batch = app.add_subcommand("batch", "generate and verify instances");
  for (auto sub : {analyze, verify, gs, rees, fiber, dual}) {
    sub->add_option("file", file, "matrix file")->required()->check(CLI::ExistingFile);
    common(sub);
  }
  verify->add_flag("--timings", cfg.timings, "include stage timings in the report");
  gs->add_option("--s", s, "the s in G_s")->required()->check(CLI::PositiveNumber);
  common(gen);
  gen->add_option("--d", d, "number of variables")->required();
  gen->add_option("--n", n, "number of generators")->required();
  gen->add_option("--u", u, "u (ignored with --generic)");
  gen->add_option("--field", field, "QQ or 'fp P'")->capture_default_str();
  gen->add_flag("--generic", generic, "fully random linear entries instead of the G_{d-1} shape");
  common(batch);
  batch->add_option("--count", count, "number of instances")->required();
  batch->add_option("--shape", shape, "d n u (default: cycle through five shapes)")->expected(3);
  batch->add_option("--jobs", jobs, "worker threads")->capture_default_str();
  batch->add_option("--field", field, "QQ or 'fp P'")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  if (gen->parsed() && !generic && !gen->count("--u")) {
    std::cerr << "gen: --u is required unless --generic is given\n";
    return kUsage;
  }

  try {
    if (analyze->parsed()) return cmd_verify(file, cfg, true);
    if (verify->parsed()) return cmd_verify(file, cfg, false);
    if (gs->parsed()) return cmd_gs(file, s, cfg);
    if (rees->parsed()) return cmd_rees(file, cfg, false);
    if (fiber->parsed()) return cmd_rees(file, cfg, true);
    if (dual->parsed()) return cmd_dual(file, cfg);
    if (gen->parsed()) return cmd_gen(d, n, u, generic, field, cfg);
    if (batch->parsed()) return cmd_batch(count, shape, jobs, field, cfg);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const TheoremViolation& e) {
    std::cerr << "theorem violation: " << e.what() << "\n";
    return kViolation;
  } catch (const HypothesisError& e) {
    std::cerr << "hypothesis not satisfied: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
