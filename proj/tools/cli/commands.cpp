#include "commands.hpp"

#include <algorithm>
#include <ostream>

#include "CLI11.hpp"
#include "acceptance.hpp"
#include "json.hpp"
#include "rsq/engine.hpp"

namespace rsq::cli {
namespace {

using Json = nlohmann::ordered_json;

int exit_code(Errc code) {
  switch (code) {
    case Errc::NotRepresentable:
    case Errc::Infeasible:
    case Errc::NoSU:
    case Errc::BelowBound:
    case Errc::SearchExhausted:
      return kNonexistent;
    case Errc::ConstructionFailed:
    case Errc::NoAdmissibleS:
      return kVerificationFailed;
    default:
      return kInvalidInput;
  }
}

Json record(const Json& command, const char* key, Json body) {
  Json r;
  r["schema_version"] = kSchemaVersion;
  r["command"] = command;
  r[key] = std::move(body);
  return r;
}

int report_error(const Json& command, const Error& e, std::ostream& out, std::ostream& err) {
  out << record(command, "error", Json{{"kind", to_string(e.code())}, {"reason", e.what()}}).dump() << '\n';
  err << "error: " << e.what() << '\n';
  return exit_code(e.code());
}

}  // namespace

int cmd_tables(i64 m_max, std::ostream& out, std::ostream& err) {
  if (m_max < 1) {
    err << "error: --m-max must be positive\n";
    return kInvalidInput;
  }
  out << "# m\tm_mod_4\tM\tasu\tsu\tbound_d1\n";
  for (i64 m = 1; m <= m_max; ++m) {
    const ThresholdProfile p = threshold_profile(make_class(m, 1));
    out << m << '\t' << m % 4 << '\t' << p.cls.M << '\t' << p.asu << '\t' << *p.su << '\t'
        << p.effective_bound.to_decimal() << '\n';
  }
  return kOk;
}

int cmd_decompose(const DecomposeArgs& args, std::ostream& out, std::ostream& err) {
  Json command{{"name", "decompose"}, {"n", args.n}, {"m", args.m}, {"d", args.d}, {"mode", args.mode}};
  if (args.cap) command["cap"] = *args.cap;
  try {
    if (args.n < 1) throw Error(Errc::InvalidArgument, "--n must be positive");
    const ResidueClass cls = make_class(args.m, args.d);
    const OracleLimits limits = OracleLimits::from_env();

    SquareRepresentation rep;
    std::string route;
    if (args.mode == "min") {
      const int cap = args.cap.value_or(static_cast<int>(std::min<i64>(args.n, MinSquaresTable::kMaxCap)));
      if (cap < 1 || cap > MinSquaresTable::kMaxCap) throw Error(Errc::InvalidArgument, "--cap out of range");
      auto found = MinSquaresTable(args.n, cls, cap, limits).representation(args.n);
      if (!found) {
        throw Error(Errc::NotRepresentable,
                    std::to_string(args.n) + " is not a sum of at most " + std::to_string(cap) + " class squares");
      }
      rep = std::move(*found);
      route = to_string(ConstructionRoute::Oracle);
    } else {
      const Construction c = args.mode == "asu" ? construct_asu(args.n, cls) : construct_su(args.n, cls, limits);
      rep = c.rep;
      route = to_string(c.route);
    }
    if (!verify_representation(rep, cls)) throw Error(Errc::ConstructionFailed, "representation failed verification");

    Json payload{{"n", args.n},         {"m", cls.m},          {"d", cls.d},       {"mode", args.mode},
                 {"terms", rep.terms}, {"count", rep.count()}, {"verified", true}, {"route", route}};
    out << record(command, "payload", std::move(payload)).dump() << '\n';
    return kOk;
  } catch (const Error& e) {
    return report_error(command, e, out, err);
  }
}

int cmd_scan(const ScanArgs& args, std::ostream& out, std::ostream& err) {
  try {
    const ResidueClass cls = make_class(args.m, args.d);
    const ScanReport report = scan_exceptions(cls, args.max_n, {!args.exceptions_only, std::max(1U, args.jobs)});
    if (args.exceptions_only) {
      for (i64 n : report.exceptions) out << n << '\t' << classify_exception(n).describe() << '\n';
    } else {
      for (const auto& [n, count] : *report.counts) out << n << '\t' << count << '\n';
    }
    return kOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e.code());
  }
}

int cmd_witness(const WitnessArgs& args, std::ostream& out, std::ostream& err) {
  const Json command{{"name", "witness"}, {"m", args.m}, {"d", args.d}, {"kind", args.kind}, {"count", args.count}};
  try {
    const ResidueClass cls = make_class(args.m, args.d);
    std::vector<Witness> found;
    if (args.kind == "su-extremal") {
      found.push_back(su_extremal_witness(cls, OracleLimits::from_env()));
    } else {
      WitnessOptions opts;
      opts.limits = OracleLimits::from_env();
      found = asu_lower_witnesses(cls, args.count, opts);
    }
    for (const Witness& w : found) {
      Json payload{{"n", w.n}, {"lower_bound", w.lower_bound}, {"certified_min", w.certified}};
      if (w.prime != 0) payload["prime"] = w.prime;
      out << record(command, "payload", std::move(payload)).dump() << '\n';
    }
    return kOk;
  } catch (const Error& e) {
    return report_error(command, e, out, err);
  }
}

int cmd_verify(const std::string& suite, unsigned jobs, std::ostream& out, std::ostream& err) {
  const auto parsed = verify::parse_suite(suite);
  if (!parsed) {
    err << "error: unknown suite '" << suite << "'\n";
    return kInvalidInput;
  }
  int passed = 0;
  const auto results = verify::run_suite(*parsed, std::max(1U, jobs));
  for (const auto& r : results) {
    out << verify::format_result(r) << '\n';
    passed += r.passed ? 1 : 0;
  }
  out << "verify " << suite << ": " << passed << "/" << results.size() << " passed\n";
  return passed == static_cast<int>(results.size()) ? kOk : kVerificationFailed;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sums of squares of integers in a residue class"};
  app.set_version_flag("--version", "rsq 0.1.0");
  app.require_subcommand(1);

  i64 m_max = 0;
  auto* tables = app.add_subcommand("tables", "ASU/SU values and effective bounds for m <= m-max");
  tables->add_option("--m-max", m_max)->required();

  DecomposeArgs dec;
  int cap = 0;
  auto* decompose = app.add_subcommand("decompose", "Write n as a sum of squares of class members");
  decompose->add_option("--n", dec.n)->required();
  decompose->add_option("--m", dec.m)->required();
  decompose->add_option("--d", dec.d)->required();
  decompose->add_option("--mode", dec.mode)->check(CLI::IsMember({"min", "asu", "su"}))->capture_default_str();
  auto* cap_opt = decompose->add_option("--cap", cap, "term cap for --mode min");

  ScanArgs scan;
  auto* scanner = app.add_subcommand("scan", "Three-term counts on the progression n = 3d^2 (mod mM)");
  scanner->add_option("--m", scan.m)->required();
  scanner->add_option("--d", scan.d)->required();
  scanner->add_option("--max-n", scan.max_n)->required();
  scanner->add_flag("--exceptions-only", scan.exceptions_only);
  scanner->add_option("--jobs", scan.jobs)->check(CLI::PositiveNumber)->capture_default_str();

  WitnessArgs wit;
  auto* witness = app.add_subcommand("witness", "Oracle-certified lower-bound witnesses");
  witness->add_option("--m", wit.m)->required();
  witness->add_option("--d", wit.d)->required();
  witness->add_option("--kind", wit.kind)->check(CLI::IsMember({"asu-lower", "su-extremal"}))->capture_default_str();
  witness->add_option("--count", wit.count)->check(CLI::PositiveNumber)->capture_default_str();

  std::string suite = "basic";
  unsigned verify_jobs = 1;
  auto* verify = app.add_subcommand("verify", "Run the acceptance criteria");
  verify->add_option("--suite", suite)->capture_default_str();
  verify->add_option("--jobs", verify_jobs)->check(CLI::PositiveNumber)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kInvalidInput;
  }

  if (*tables) return cmd_tables(m_max, out, err);
  if (*decompose) {
    if (*cap_opt) dec.cap = cap;
    return cmd_decompose(dec, out, err);
  }
  if (*scanner) return cmd_scan(scan, out, err);
  if (*witness) return cmd_witness(wit, out, err);
  return cmd_verify(suite, verify_jobs, out, err);
}

}  // namespace rsq::cli
