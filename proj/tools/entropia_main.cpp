#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "entropia/arith.hpp"
#include "entropia/entropy.hpp"
#include "entropia/quad.hpp"
#include "entropia/report_io.hpp"
#include "entropia/verify.hpp"

namespace {

using namespace entropia;
using nlohmann::ordered_json;

struct BaseOpt {
  double scale = 1.0;
  const char* unit = "nats";
};

BaseOpt base_of(const std::string& b) {
  if (b == "2") return {1.0 / std::log(2.0), "bits"};
  if (b == "10") return {1.0 / std::log(10.0), "hartleys"};
  return {1.0, "nats"};
}

void add_base_option(CLI::App* cmd, std::string& base) {
  cmd->add_option("--base", base, "display base for entropy values: 2, 10 or e")
      ->check(CLI::IsMember({"2", "10", "e"}));
}

void add_format_option(CLI::App* cmd, std::string& format, bool with_csv = false) {
  std::vector<std::string> allowed = {"text", "json"};
  if (with_csv) allowed.push_back("csv");
  cmd->add_option("--format", format, "output format")
      ->check(CLI::IsMember(allowed));
}

ordered_json make_record(const std::string& command) {
  return {{"tool_version", tool_version},
          {"command", command},
          {"inputs", ordered_json::object()},
          {"results", ordered_json::array()},
          {"notes", ordered_json::array()}};
}

void add_result(ordered_json& rec, const char* name, double value,
                const char* unit) {
  rec["results"].push_back({{"name", name},
                            {"value", value},
                            {"display", format_sig12(value)},
                            {"unit", unit}});
}

void add_result(ordered_json& rec, const char* name, u64 value) {
  rec["results"].push_back({{"name", name}, {"value", value}});
}

void emit(const ordered_json& rec) { std::cout << rec.dump(2) << "\n"; }

// ---------------------------------------------------------------------------
// compute commands
// ---------------------------------------------------------------------------

void run_entropy(u64 n, const std::string& base, const std::string& format) {
  const BaseOpt b = base_of(base);
  const Factorization f = factor(n);
  const double h = entropy(f) * b.scale;
  if (format == "json") {
    ordered_json rec = make_record("entropy " + std::to_string(n));
    rec["inputs"]["n"] = n;
    add_result(rec, "Omega", big_omega(f));
    add_result(rec, "omega", omega(f));
    add_result(rec, "H", h, b.unit);
    rec["notes"].push_back(
        "closed form: log Omega(n) - (1/Omega(n)) sum alpha_i log alpha_i");
    emit(rec);
    return;
  }
  std::cout << "n = " << n << " = " << f.to_string() << "\n"
            << "Omega = " << big_omega(f) << "  omega = " << omega(f) << "\n"
            << "H = " << format_sig12(h) << " " << b.unit << "\n";
}

void run_divergence(u64 n, u64 m, const std::string& base,
                    const std::string& format) {
  const BaseOpt b = base_of(base);
  const Factorization fn = factor(n);
  const Factorization fm = factor(m);
  const double d = divergence(fn, fm) * b.scale;
  if (format == "json") {
    ordered_json rec =
        make_record("divergence " + std::to_string(n) + " " + std::to_string(m));
    rec["inputs"]["n"] = n;
    rec["inputs"]["m"] = m;
    add_result(rec, "D", d, b.unit);
    rec["notes"].push_back(
        "Kullback-Leibler divergence of the exponent distributions, paired by "
        "ascending prime");
    emit(rec);
    return;
  }
  std::cout << "n = " << n << " = " << fn.to_string() << "\n"
            << "m = " << m << " = " << fm.to_string() << "\n"
            << "D = " << format_sig12(d) << " " << b.unit << "\n";
}

void run_factor(u64 n, const std::string& format) {
  const Factorization f = factor(n);
  if (format == "json") {
    ordered_json rec = make_record("factor " + std::to_string(n));
    rec["inputs"]["n"] = n;
    ordered_json pps = ordered_json::array();
    for (const auto& pp : f.prime_powers())
      pps.push_back({{"prime", pp.prime}, {"exponent", pp.exponent}});
    rec["results"].push_back({{"name", "factorization"}, {"value", pps}});
    add_result(rec, "Omega", big_omega(f));
    add_result(rec, "omega", omega(f));
    add_result(rec, "radical", radical(f).value());
    add_result(rec, "tau", tau(n));
    add_result(rec, "tau_e", tau_e(f));
    emit(rec);
    return;
  }
  std::cout << n << " = " << f.to_string() << "\n"
            << "Omega = " << big_omega(f) << "  omega = " << omega(f)
            << "  radical = " << radical(f).value()
            << "  tau = " << tau(n) << "  tau_e = " << tau_e(f) << "\n";
}

void run_expdivisors(u64 n, const std::string& format) {
  const Factorization f = factor(n);
  const auto divisors = exp_divisors(f);
  if (format == "json") {
    ordered_json rec = make_record("expdivisors " + std::to_string(n));
    rec["inputs"]["n"] = n;
    ordered_json vals = ordered_json::array();
    for (const auto& d : divisors) vals.push_back(d.value());
    rec["results"].push_back({{"name", "exponential_divisors"}, {"value", vals}});
    add_result(rec, "tau_e", tau_e(f));
    emit(rec);
    return;
  }
  std::cout << "exponential divisors of " << n << " = " << f.to_string() << ":\n";
  for (const auto& d : divisors)
    std::cout << "  " << d.value() << " = " << d.to_string()
              << "\n";
  std::cout << "tau_e = " << tau_e(f) << "\n";
}

void run_ideal(long long d, u64 m, const std::string& target,
               const std::string& base, const std::string& format) {
  const BaseOpt b = base_of(base);
  const QuadraticField K = make_field(d);
  const IdealFactorization I = factor_principal(K, m);
  const double h = ideal_entropy(I) * b.scale;

  bool has_div = false;
  double div = 0.0;
  std::string div_name;
  if (target == "radical") {
    has_div = true;
    div = ideal_divergence(I, ideal_radical(I)) * b.scale;
    div_name = "D(I||gamma(I))";
  } else if (!target.empty()) {
    has_div = true;
    div = ideal_divergence(I, factor_principal(K, std::stoull(target))) * b.scale;
    div_name = "D(I||(" + target + "))";
  }

  if (format == "json") {
    ordered_json rec = make_record("ideal " + std::to_string(d) + " " +
                                   std::to_string(m));
    rec["inputs"]["d"] = d;
    rec["inputs"]["m"] = m;
    rec["inputs"]["discriminant"] = K.discriminant();
    ordered_json fs = ordered_json::array();
    for (const auto& x : I.factors())
      fs.push_back({{"label", to_string(x.label)},
                    {"e", x.e},
                    {"f", x.f},
                    {"kind", to_string(ramification(K, x.label.p).kind)}});
    rec["results"].push_back({{"name", "decomposition"}, {"value", fs}});
    add_result(rec, "Omega", big_omega(I));
    add_result(rec, "omega", omega(I));
    add_result(rec, "H", h, b.unit);
    if (has_div) {
      add_result(rec, div_name.c_str(), div, b.unit);
      if (target == "radical") add_result(rec, "D + H", div + h, b.unit);
    }
    emit(rec);
    return;
  }
  std::cout << "K = Q(sqrt(" << d << ")), discriminant = " << K.discriminant()
            << "\n(" << m << ") = " << I.to_string() << "\n";
  for (const auto& x : I.factors())
    std::cout << "  " << to_string(x.label) << ": e=" << x.e << " f=" << x.f
              << " (" << to_string(ramification(K, x.label.p).kind) << ")\n";
  std::cout << "Omega = " << big_omega(I) << "  omega = " << omega(I) << "\n"
            << "H = " << format_sig12(h) << " " << b.unit << "\n";
  if (has_div) {
    std::cout << div_name << " = " << format_sig12(div) << " " << b.unit << "\n";
    if (target == "radical")
      std::cout << "D + H = " << format_sig12(div + h) << " " << b.unit << "\n";
  }
}

// ---------------------------------------------------------------------------
// verify command
// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::string prop;
  ScanConfig cfg;
  std::string mode;
  std::string format = "text";
  std::string out;
  // which scan-shaping flags were given explicitly (for the command echo)
  bool has_max = false, has_prime = false, has_kmax = false, has_amax = false,
       has_tol = false, has_cap = false;
};

std::string verify_echo(const VerifyArgs& a) {
  // canonical reconstruction; presentation and execution flags
  // (--format, --jobs, --out) are excluded so reruns compare byte-identical
  std::string echo = "verify --prop " + a.prop;
  if (a.has_max) echo += " --max " + std::to_string(a.cfg.max_n);
  if (a.has_prime) echo += " --prime-limit " + std::to_string(a.cfg.prime_limit);
  if (a.has_kmax) echo += " --k-max " + std::to_string(a.cfg.k_max);
  if (a.has_amax) echo += " --alpha-max " + std::to_string(a.cfg.alpha_max);
  if (!a.cfg.fields.empty()) {
    echo += " --fields ";
    for (std::size_t i = 0; i < a.cfg.fields.size(); ++i)
      echo += (i ? "," : "") + std::to_string(a.cfg.fields[i]);
  }
  if (a.has_tol) echo += " --tolerance " + format_exact(a.cfg.tolerance);
  if (!a.mode.empty()) echo += " --mode " + a.mode;
  if (a.has_cap) echo += " --cap " + std::to_string(a.cfg.violation_cap);
  return echo;
}

int run_verify(const VerifyArgs& a) {
  ScanConfig cfg = a.cfg;
  if (a.mode == "assert") cfg.mode = ScanMode::assert_mode;
  if (a.mode == "survey") cfg.mode = ScanMode::survey;

  std::vector<std::string> ids;
  if (a.prop == "all") {
    for (const auto& p : list_properties()) ids.push_back(p.id);
  } else {
    ids.push_back(a.prop);
  }

  std::vector<ScanReport> reports;
  for (const auto& id : ids) reports.push_back(run_property(id, cfg));

  std::string body;
  if (a.format == "json") {
    body = reports_to_json(verify_echo(a), reports).dump(2) + "\n";
  } else if (a.format == "csv") {
    body = reports_to_csv(reports);
  } else {
    body = reports_to_text(reports);
  }
  if (a.out.empty()) {
    std::cout << body;
  } else {
    std::ofstream os(a.out, std::ios::binary);
    if (!os) throw std::domain_error("cannot open output file: " + a.out);
    os << body;
  }

  for (const auto& r : reports)
    if (r.verdict == Verdict::violated) return 1;
  return 0;
}

// ---------------------------------------------------------------------------
// examples command
// ---------------------------------------------------------------------------

int run_examples() {
  struct Row {
    std::string name;
    double computed;
    double expected;
    std::string expected_text;
    std::string note;
  };
  const double l2 = std::log(2.0), l3 = std::log(3.0), l4 = std::log(4.0),
               l5 = std::log(5.0), l6 = std::log(6.0);

  const auto gauss = make_field(-1);
  const IdealFactorization I90 = factor_principal(gauss, 90);
  const double h90 = ideal_entropy(I90);
  const double d90 = ideal_divergence(I90, ideal_radical(I90));

  const std::vector<Row> rows = {
      {"H(10)", entropy(factor(10)), l2, "log 2", ""},
      {"H(100)", entropy(factor(100)), l2, "log 2", ""},
      {"H(8)", entropy(factor(8)), 0.0, "0", ""},
      {"H(12)", entropy(factor(12)), l3 - 2.0 / 3.0 * l2,
       "log 3 - (2/3) log 2", ""},
      {"H(180)", entropy(factor(180)), l5 - 4.0 / 5.0 * l2,
       "log 5 - (4/5) log 2", ""},
      {"H(60)", entropy(factor(60)), l4 - 0.5 * l2, "log 4 - (1/2) log 2", ""},
      {"H(40)", entropy(factor(40)), l4 - 0.75 * l3, "log 4 - (3/4) log 3",
       "MISPRINT: the often-quoted 2.2493 is 4x the formula value"},
      {"D(100||200)", divergence(factor(100), factor(200)),
       std::log(5.0 / 4.0) - 0.5 * std::log(3.0 / 2.0),
       "log(5/4) - (1/2) log(3/2)",
       "MISPRINT: the often-quoted 0.0088 is the base-10 value; nats shown"},
      {"H(35 O_K), K = Q(sqrt(-19))",
       ideal_entropy(factor_principal(make_field(-19), 35)), l4, "log 4", ""},
      {"H(90 O_K), K = Q(sqrt(-1))", h90, l6 - 2.0 / 3.0 * l2,
       "log 6 - (2/3) log 2", ""},
      {"D(90 O_K || gamma), K = Q(sqrt(-1))", d90,
       std::log(2.0 / 3.0) + 2.0 / 3.0 * l2, "log(2/3) + (2/3) log 2", ""},
      {"D + H (90 O_K), K = Q(sqrt(-1))", d90 + h90, l4, "log 4", ""},
  };

  bool all_ok = true;
  for (const auto& r : rows) {
    const bool ok = std::abs(r.computed - r.expected) <= 1e-9;
    all_ok = all_ok && ok;
    std::printf("%-38s = %-16s [%s]  expected %s%s%s\n", r.name.c_str(),
                format_sig12(r.computed).c_str(), ok ? "ok" : "FAIL",
                r.expected_text.c_str(), r.note.empty() ? "" : "  -- ",
                r.note.c_str());
  }
  std::printf("%zu worked examples, all %s\n", rows.size(),
              all_ok ? "reproduced within 1e-9" : "NOT reproduced");
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entropy and Kullback-Leibler divergence of positive integers "
               "and of ideals in quadratic number fields"};
  app.set_version_flag("--version", entropia::tool_version);
  app.require_subcommand(1);

  int exit_code = 0;

  // entropy
  u64 en_n = 0;
  std::string en_base = "e", en_format = "text";
  auto* c_en = app.add_subcommand("entropy", "entropy of a positive integer");
  c_en->add_option("n", en_n, "positive integer")->required();
  add_base_option(c_en, en_base);
  add_format_option(c_en, en_format);
  c_en->callback([&] { run_entropy(en_n, en_base, en_format); });

  // divergence
  u64 dv_n = 0, dv_m = 0;
  std::string dv_base = "e", dv_format = "text";
  auto* c_dv = app.add_subcommand(
      "divergence", "Kullback-Leibler divergence between two integers");
  c_dv->add_option("n", dv_n, "left argument")->required();
  c_dv->add_option("m", dv_m, "right argument")->required();
  add_base_option(c_dv, dv_base);
  add_format_option(c_dv, dv_format);
  c_dv->callback([&] { run_divergence(dv_n, dv_m, dv_base, dv_format); });

  // factor
  u64 fa_n = 0;
  std::string fa_format = "text";
  auto* c_fa = app.add_subcommand("factor", "canonical prime factorization");
  c_fa->add_option("n", fa_n, "positive integer")->required();
  add_format_option(c_fa, fa_format);
  c_fa->callback([&] { run_factor(fa_n, fa_format); });

  // expdivisors
  u64 ed_n = 0;
  std::string ed_format = "text";
  auto* c_ed = app.add_subcommand("expdivisors",
                                  "exponential divisors of an integer >= 2");
  c_ed->add_option("n", ed_n, "positive integer >= 2")->required();
  add_format_option(c_ed, ed_format);
  c_ed->callback([&] { run_expdivisors(ed_n, ed_format); });

  // ideal
  long long id_d = 0;
  u64 id_m = 0;
  std::string id_target, id_base = "e", id_format = "text";
  auto* c_id = app.add_subcommand(
      "ideal", "decomposition and entropy of m O_K in K = Q(sqrt(d))");
  c_id->add_option("d", id_d, "squarefree d defining Q(sqrt(d))")->required();
  c_id->add_option("m", id_m, "integer m >= 2 generating the ideal")->required();
  c_id->add_option("--divergence-to", id_target,
                   "'radical' or an integer m2 for D(I||J)")
      ->check([](const std::string& s) -> std::string {
        if (s == "radical" || (!s.empty() && s.find_first_not_of("0123456789") ==
                                                 std::string::npos))
          return "";
        return "must be 'radical' or a positive integer";
      });
  add_base_option(c_id, id_base);
  add_format_option(c_id, id_format);
  c_id->callback([&] { run_ideal(id_d, id_m, id_target, id_base, id_format); });

  // verify
  VerifyArgs va;
  auto* c_vf = app.add_subcommand("verify", "run brute-force property scans");
  c_vf->add_option("--prop", va.prop, "property id or 'all'")->required();
  auto* o_max = c_vf->add_option("--max", va.cfg.max_n, "integer range bound");
  auto* o_pl = c_vf->add_option("--prime-limit", va.cfg.prime_limit,
                                "prime pool bound");
  auto* o_km = c_vf->add_option("--k-max", va.cfg.k_max, "exponent bound k");
  auto* o_am = c_vf->add_option("--alpha-max", va.cfg.alpha_max,
                                "exponent bound alpha");
  c_vf->add_option("--fields", va.cfg.fields,
                   "comma-separated quadratic-field d values")
      ->delimiter(',');
  auto* o_tol = c_vf->add_option("--tolerance", va.cfg.tolerance,
                                 "identity/inequality tolerance");
  c_vf->add_option("--mode", va.mode, "override the property's default mode")
      ->check(CLI::IsMember({"assert", "survey"}));
  add_format_option(c_vf, va.format, /*with_csv=*/true);
  c_vf->add_option("--jobs", va.cfg.jobs, "parallel workers")
      ->envname("ENTROPIA_JOBS");
  auto* o_cap = c_vf->add_option("--cap", va.cfg.violation_cap,
                                 "max violations listed per property");
  c_vf->add_option("--out", va.out, "write the report to a file");
  c_vf->callback([&] {
    va.has_max = o_max->count() > 0;
    va.has_prime = o_pl->count() > 0;
    va.has_kmax = o_km->count() > 0;
    va.has_amax = o_am->count() > 0;
    va.has_tol = o_tol->count() > 0;
    va.has_cap = o_cap->count() > 0;
    exit_code = run_verify(va);
  });

  // properties
  auto* c_ls = app.add_subcommand("properties", "list the property catalog");
  c_ls->callback([&] {
    for (const auto& p : entropia::list_properties())
      std::printf("%-30s %-7s %s\n", p.id.c_str(),
                  entropia::to_string(p.mode_default), p.claim.c_str());
  });

  // examples
  auto* c_ex = app.add_subcommand(
      "examples", "reproduce the worked numeric examples, flagging misprints");
  c_ex->callback([&] { exit_code = run_examples(); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 64;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::overflow_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
