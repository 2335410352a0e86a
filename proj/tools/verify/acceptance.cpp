#include "acceptance.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "rsq/engine.hpp"

namespace rsq::verify {
namespace {

// splitmix64; fixed seed, so every run draws the same samples.
class SampleStream {
 public:
  explicit SampleStream(u64 seed) : state_(seed) {}

  u64 next() {
    u64 z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  i64 uniform(i64 lo, i64 hi) { return lo + static_cast<i64>(next() % static_cast<u64>(hi - lo + 1)); }

 private:
  u64 state_;
};

// Keeps the first few failure descriptions.
class Failures {
 public:
  void add(const std::string& what) {
    if (count_++ < 3) examples_ += (examples_.empty() ? "" : "; ") + what;
  }
  bool none() const { return count_ == 0; }
  std::string summary() const {
    if (count_ == 0) return "";
    return " | " + std::to_string(count_) + " failures, e.g. " + examples_;
  }

 private:
  int count_ = 0;
  std::string examples_;
};

std::string cls_name(const ResidueClass& c) { return "(" + std::to_string(c.m) + "," + std::to_string(c.d) + ")"; }

CriterionResult threshold_table() {
  constexpr std::array<i64, 17> kAsu = {0, 4, 10, 6, 10, 8, 26, 10, 18, 12, 42, 14, 27, 16, 58, 18, 34};
  constexpr std::array<i64, 17> kSu = {0, 4, 10, 6, 10, 16, 26, 35, 48, 63, 80, 99, 120, 143, 168, 195, 224};
  Failures bad;
  int pairs = 0;
  for (i64 m = 1; m <= 16; ++m) {
    for (i64 d = 1; d <= m; ++d) {
      if (gcd(m, d) != 1) continue;
      ++pairs;
      const ResidueClass c = make_class(m, d);
      if (asu_value(c) != kAsu[m]) bad.add("asu" + cls_name(c) + "=" + std::to_string(asu_value(c)));
      const bool unit = (d % m == 1 % m) || ((d + 1) % m == 0);
      if (su_exists(c) != unit) bad.add("su_exists" + cls_name(c));
      if (unit && su_value(c) != kSu[m]) bad.add("su" + cls_name(c) + "=" + std::to_string(su_value(c)));
    }
  }
  std::ostringstream out;
  out << pairs << " coprime pairs, m<=16;";
  for (i64 m : {2, 3, 4, 5, 6, 7, 12}) {
    const ResidueClass c = make_class(m, 1);
    out << " m=" << m << ":(" << asu_value(c) << "," << su_value(c) << ")";
  }
  out << bad.summary();
  return {1, "threshold-table", bad.none(), out.str()};
}

CriterionResult su_oracle(Suite suite) {
  Failures bad;
  std::ostringstream out;

  const MinSquaresTable five(3908, make_class(5, 1), MinSquaresTable::kMaxCap);
  int max5 = 0;
  std::vector<i64> at_max;
  for (i64 n = 1; n <= 3908; ++n) {
    const int k = five.min_terms(n).value_or(MinSquaresTable::kMaxCap + 1);
    if (k > max5) {
      max5 = k;
      at_max.clear();
    }
    if (k == max5) at_max.push_back(n);
  }
  out << "m=5 max " << max5 << " at";
  for (i64 n : at_max) out << " " << n;
  if (max5 != 16 || at_max != std::vector<i64>{31}) bad.add("m=5 maximum");

  const MinSquaresTable seven(15008, make_class(7, 1), MinSquaresTable::kMaxCap);
  int max7 = 0;
  for (i64 n = 1; n <= 15008; ++n) max7 = std::max(max7, seven.min_terms(n).value_or(MinSquaresTable::kMaxCap + 1));
  const int at35 = seven.min_terms(35).value_or(-1);
  out << "; m=7 max " << max7 << ", min(35)=" << at35;
  if (max7 != 35 || at35 != 35) bad.add("m=7 maximum");

  const ResidueClass six = make_class(6, 1);
  const MinSquaresTable low6(300, six, MinSquaresTable::kMaxCap);
  int max6 = 0;
  for (i64 n = 1; n <= 300; ++n) max6 = std::max(max6, low6.min_terms(n).value_or(MinSquaresTable::kMaxCap + 1));
  out << "; m=6 max " << max6 << " up to 300, witnesses";
  if (max6 > 26) bad.add("m=6 maximum");
  for (const Witness& w : asu_lower_witnesses(six, suite == Suite::Full ? 5 : 2)) {
    out << " " << w.n << ":" << w.certified;
    if (w.certified < 26) bad.add("witness " + std::to_string(w.n));
  }
  out << bad.summary();
  return {2, "su-oracle", bad.none(), out.str()};
}

CriterionResult cauchy_equivalence(Suite suite) {
  const i64 a_max = suite == Suite::Full ? 400 : 100;
  const i64 b_max = suite == Suite::Full ? 40 : 20;
  const i64 width = 2 * b_max + 1;
  const i64 r = isqrt(a_max);

  std::vector<char> reachable(static_cast<std::size_t>((a_max + 1) * width), 0);
  for (i64 x1 = -r; x1 <= r; ++x1)
    for (i64 x2 = -r; x2 <= r; ++x2)
      for (i64 x3 = -r; x3 <= r; ++x3)
        for (i64 x4 = -r; x4 <= r; ++x4) {
          const i64 a = x1 * x1 + x2 * x2 + x3 * x3 + x4 * x4;
          const i64 b = x1 + x2 + x3 + x4;
          if (a <= a_max && b >= -b_max && b <= b_max) reachable[static_cast<std::size_t>(a * width + b + b_max)] = 1;
        }

  Failures bad;
  int feasible = 0;
  for (i64 a = 0; a <= a_max; ++a) {
    for (i64 b = -b_max; b <= b_max; ++b) {
      const bool brute = reachable[static_cast<std::size_t>(a * width + b + b_max)] != 0;
      const bool cond = cauchy_feasible(a, b);
      bool solved = false;
      try {
        const CauchyWitness w = cauchy_solve(a, b);
        solved = true;
        if (!w.solves({a, b})) bad.add("bad witness (" + std::to_string(a) + "," + std::to_string(b) + ")");
      } catch (const CauchyInfeasible&) {
      }
      if (brute != cond || cond != solved) {
        bad.add("(" + std::to_string(a) + "," + std::to_string(b) + ") brute=" + std::to_string(brute) +
                " cond=" + std::to_string(cond) + " solved=" + std::to_string(solved));
      }
      feasible += cond ? 1 : 0;
    }
  }
  std::ostringstream out;
  out << "a<=" << a_max << ", |b|<=" << b_max << ": " << feasible << " feasible of "
      << (a_max + 1) * width << bad.summary();
  return {3, "cauchy-equivalence", bad.none(), out.str()};
}

CriterionResult three_square_completeness(Suite suite) {
  const i64 n_max = suite == Suite::Full ? 100'000 : 10'000;
  Failures bad;
  int representable = 0;
  for (i64 n = 0; n <= n_max; ++n) {
    i64 core = n;
    while (core != 0 && core % 4 == 0) core /= 4;
    const bool expect = core % 8 != 7;
    bool got = false;
    try {
      const ThreeSquareDecomposition t = decompose_three_squares(n);
      got = true;
      if (t.n != n || t.x * t.x + t.y * t.y + t.z * t.z != n || !(t.x >= t.y && t.y >= t.z && t.z >= 0)) {
        bad.add("bad decomposition of " + std::to_string(n));
      }
    } catch (const Error& e) {
      if (e.code() != Errc::NotRepresentable) bad.add(std::to_string(n) + ": " + e.what());
    }
    if (got != expect) bad.add(std::to_string(n) + " expected " + (expect ? "success" : "failure"));
    representable += got ? 1 : 0;
  }
  std::ostringstream out;
  out << "n<=" << n_max << ": " << representable << " decomposed, " << n_max + 1 - representable
      << " of the form 4^a(8b+7)" << bad.summary();
  return {4, "three-square-completeness", bad.none(), out.str()};
}

CriterionResult asu_construction(Suite suite) {
  const i64 samples = suite == Suite::Full ? 200 : 50;
  const std::array<std::pair<i64, i64>, 8> classes = {
      {{5, 1}, {6, 1}, {7, 1}, {8, 1}, {8, 3}, {10, 1}, {12, 1}, {12, 5}}};
  Failures bad;
  std::ostringstream out;
  out << samples << " consecutive n from ceil(N);";
  for (const auto& [m, d] : classes) {
    const ResidueClass c = make_class(m, d);
    const i64 start = effective_bound(c).ceil();
    const i64 window = asu_claimed_window(c);
    i64 max_k = 0;
    int outside = 0;
    for (i64 n = start; n < start + samples; ++n) {
      try {
        const Construction k = construct_asu(n, c);
        if (!verify_representation(k.rep, c)) bad.add("unverified " + std::to_string(n) + cls_name(c));
        if (static_cast<i64>(k.rep.count()) > c.M * c.m + 3) bad.add("too many terms " + std::to_string(n) + cls_name(c));
        if (k.route != ConstructionRoute::CauchyWindow || k.step > window) {
          ++outside;
          bad.add("k outside window at " + std::to_string(n) + cls_name(c) + " (" +
                  std::string(to_string(k.route)) + (k.route == ConstructionRoute::CauchyWindow ? " k=" + std::to_string(k.step) : "") + ")");
        } else {
          max_k = std::max(max_k, k.step);
        }
      } catch (const Error& e) {
        bad.add(std::to_string(n) + cls_name(c) + ": " + e.what());
      }
    }
    out << " " << cls_name(c) << " max k " << max_k << "/" << window;
    if (outside > 0) out << " (" << outside << " outside)";
  }
  out << bad.summary();
  return {5, "asu-construction", bad.none(), out.str()};
}

CriterionResult su_constructions(Suite suite) {
  const i64 samples = suite == Suite::Full ? 500 : 100;
  Failures bad;
  std::ostringstream out;
  for (i64 m : {6, 8, 9, 12}) {
    const ResidueClass c = make_class(m, 1);
    const i64 split = 2 * m * (m - 1) * (m - 1);
    std::size_t small_max = 0;
    if (m >= 8) {
      for (i64 n = 1; n <= split; ++n) {
        try {
          const SquareRepresentation rep = decompose_small(n, c);
          small_max = std::max(small_max, rep.count());
          if (!verify_representation(rep, c)) bad.add("unverified small " + std::to_string(n));
          if (static_cast<i64>(rep.count()) > m * m - 2 * m) bad.add("small m=" + std::to_string(m) + " n=" + std::to_string(n));
        } catch (const Error& e) {
          bad.add("small m=" + std::to_string(m) + " n=" + std::to_string(n) + ": " + e.what());
        }
      }
    }
    std::size_t eff_max = 0;
    int over = 0;
    for (i64 n = split; n < split + samples; ++n) {
      try {
        const SquareRepresentation rep = decompose_effective(n, c);
        eff_max = std::max(eff_max, rep.count());
        if (!verify_representation(rep, c)) bad.add("unverified effective " + std::to_string(n));
        if (static_cast<i64>(rep.count()) > c.M * m + 3) {
          ++over;
          const auto floor = min_squares_oracle(n, c, MinSquaresTable::kMaxCap);
          bad.add("effective m=" + std::to_string(m) + " n=" + std::to_string(n) + " uses " + std::to_string(rep.count()) +
                  " terms, oracle minimum " + std::to_string(floor.value_or(-1)));
        }
      } catch (const Error& e) {
        bad.add("effective m=" + std::to_string(m) + " n=" + std::to_string(n) + ": " + e.what());
      }
    }
    out << " m=" << m;
    if (m >= 8) out << " small max " << small_max << "/" << m * m - 2 * m << ",";
    out << " effective max " << eff_max << "/" << c.M * m + 3;
    if (over > 0) out << " (" << over << " over)";
    out << ";";
  }
  out << bad.summary();
  return {6, "su-constructions", bad.none(), out.str()};
}

CriterionResult ternary_exceptions(Suite suite, unsigned jobs) {
  const i64 n_max = suite == Suite::Full ? 100'000 : 10'000;
  const i64 horizon = 1000;
  Failures bad;
  std::ostringstream out;
  out << "n<=" << n_max << ";";
  for (const auto& [m, d] : std::array<std::pair<i64, i64>, 4>{{{6, 1}, {8, 1}, {8, 3}, {10, 1}}}) {
    const ResidueClass c = make_class(m, d);
    const ScanReport report = scan_exceptions(c, n_max, {false, jobs});
    const auto late = std::count_if(report.exceptions.begin(), report.exceptions.end(),
                                    [&](i64 n) { return n >= horizon; });
    out << " " << cls_name(c) << " " << report.exceptions.size() << " exceptions, largest "
        << (report.exceptions.empty() ? 0 : report.exceptions.back()) << ", " << late << " >= " << horizon << ";";
    if (late > 0) bad.add(cls_name(c) + " exception " + std::to_string(report.exceptions.back()));
  }

  const i64 family_max = std::min<i64>(n_max, 10'000);
  for (const auto& [d, ell_mod, required] :
       std::array<std::tuple<i64, i64, std::vector<i64>>, 2>{{{1, 7, {147, 1083, 2883}}, {5, 1, {507}}}}) {
    const ResidueClass c = make_class(12, d);
    const ScanReport report = scan_exceptions(c, n_max, {false, jobs});
    auto listed = [&](i64 n) { return std::binary_search(report.exceptions.begin(), report.exceptions.end(), n); };
    std::vector<i64> family;
    for (i64 ell = 5; 3 * ell * ell <= family_max; ++ell) {
      const i64 n = 3 * ell * ell;
      if (ell % 12 == ell_mod && is_prime(static_cast<u64>(ell)) && floor_mod(n - 3 * d * d, 12) == 0) family.push_back(n);
    }
    for (i64 n : required) {
      if (!listed(n)) bad.add(std::to_string(n) + " missing for " + cls_name(c));
    }
    int found = 0;
    for (i64 n : family) {
      if (listed(n)) {
        ++found;
      } else {
        bad.add("3l^2=" + std::to_string(n) + " missing for " + cls_name(c));
      }
    }
    const auto other = std::count_if(report.exceptions.begin(), report.exceptions.end(), [](i64 n) {
      return classify_exception(n).kind == ExceptionClassification::Kind::Other;
    });
    out << " " << cls_name(c) << " " << found << "/" << family.size() << " of the 3l^2 family (l=" << ell_mod
        << " mod 12) listed, " << report.exceptions.size() << " exceptions (" << other << " other);";
  }
  out << bad.summary();
  return {7, "ternary-exceptions", bad.none(), out.str()};
}

CriterionResult necessity_congruences(Suite suite) {
  const int samples = suite == Suite::Full ? 10'000 : 1'000;
  SampleStream rng(0x5eed'2024'0001ULL);
  Failures bad;
  std::array<int, 7> by_route{};
  for (int i = 0; i < samples; ++i) {
    const i64 m = rng.uniform(1, 40);
    i64 d = rng.uniform(1, m);
    while (gcd(m, d) != 1) d = rng.uniform(1, m);
    const ResidueClass c = make_class(m, d);
    Construction k;
    i64 n = 0;
    try {
      switch (rng.uniform(0, 2)) {
        case 0: {
          n = rng.uniform(1, 3000);
          const auto rep = MinSquaresTable(n, c, MinSquaresTable::kMaxCap).representation(n);
          if (!rep) continue;
          k = {*rep, ConstructionRoute::Oracle, static_cast<i64>(rep->count()), 0};
          break;
        }
        case 1:
          n = effective_bound(c).ceil() + rng.uniform(0, 1'000'000'000);
          k = construct_asu(n, c);
          break;
        default:
          if (!su_exists(c)) {
            n = effective_bound(c).ceil() + rng.uniform(0, 1'000'000);
            k = construct_asu(n, c);
          } else {
            n = rng.uniform(1, 1'000'000'000);
            k = construct_su(n, c);
          }
      }
    } catch (const Error& e) {
      bad.add(std::to_string(n) + cls_name(c) + ": " + e.what());
      continue;
    }
    ++by_route[static_cast<std::size_t>(k.route)];
    const ResidueConstraints rc = residue_constraints(n, c);
    const auto r = static_cast<i64>(k.rep.count());
    const bool first = floor_mod(r - rc.r0, m) == 0;
    const bool second = first && floor_mod(rc.t - (r - rc.r0) / m, c.M) == 0;
    if (!verify_representation(k.rep, c) || !first || !second) {
      bad.add(std::to_string(n) + cls_name(c) + " r=" + std::to_string(r));
    }
  }
  std::ostringstream out;
  out << samples << " samples (seeded), routes:";
  for (std::size_t i = 0; i < by_route.size(); ++i) {
    if (by_route[i] > 0) out << " " << to_string(static_cast<ConstructionRoute>(i)) << "=" << by_route[i];
  }
  out << bad.summary();
  return {8, "necessity-congruences", bad.none(), out.str()};
}

CriterionResult m6_three_odd_squares() {
  const ResidueClass c = make_class(6, 1);
  Failures bad;
  i64 fewest = -1;
  int checked = 0;
  for (i64 n = 3; n <= 10'000; n += 24) {
    const i64 k = count_three_term(n, c);
    ++checked;
    if (fewest < 0 || k < fewest) fewest = k;
    if (k < 1) bad.add(std::to_string(n));
  }
  std::ostringstream out;
  out << checked << " values n=24t+3<=10000, fewest triples " << fewest << bad.summary();
  return {9, "m6-three-odd-squares", bad.none(), out.str()};
}

}  // namespace

std::optional<Suite> parse_suite(std::string_view name) {
  if (name == "basic") return Suite::Basic;
  if (name == "full") return Suite::Full;
  return std::nullopt;
}

CriterionResult run_criterion(int id, Suite suite, unsigned jobs) {
  switch (id) {
    case 1: return threshold_table();
    case 2: return su_oracle(suite);
    case 3: return cauchy_equivalence(suite);
    case 4: return three_square_completeness(suite);
    case 5: return asu_construction(suite);
    case 6: return su_constructions(suite);
    case 7: return ternary_exceptions(suite, jobs);
    case 8: return necessity_congruences(suite);
    case 9: return m6_three_odd_squares();
    default: throw Error(Errc::InvalidArgument, "criterion must lie in [1, 9]");
  }
}

std::vector<CriterionResult> run_suite(Suite suite, unsigned jobs) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriteria; ++id) {
    try {
      out.push_back(run_criterion(id, suite, jobs));
    } catch (const std::exception& e) {
      out.push_back({id, "criterion-" + std::to_string(id), false, std::string("error: ") + e.what()});
    }
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  return std::string(r.passed ? "PASS" : "FAIL") + "  c" + std::to_string(r.id) + "  " + r.name + "  " + r.detail;
}

}  // namespace rsq::verify
