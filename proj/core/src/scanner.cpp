#include "rsq/scanner.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "rsq/error.hpp"

namespace rsq {
namespace {

constexpr i64 kChunk = 512;

i64 first_member_at_least(i64 lo, const ResidueClass& cls) { return lo + floor_mod(cls.d - lo, cls.m); }

template <class OnHit>
void for_each_triple(i64 n, const ResidueClass& cls, OnHit on_hit) {
  const i64 s1 = isqrt(n);
  for (i64 y1 = first_member_at_least(-s1, cls); y1 <= s1; y1 += cls.m) {
    const i64 rest1 = n - y1 * y1;
    const i64 s2 = isqrt(rest1);
    for (i64 y2 = first_member_at_least(-s2, cls); y2 <= s2; y2 += cls.m) {
      const i64 rest2 = rest1 - y2 * y2;
      const i64 y3 = isqrt(rest2);
      if (y3 * y3 != rest2) continue;
      int hits = 0;
      if (y3 == 0) {
        hits = cls.contains(0) ? 1 : 0;
      } else {
        hits = (cls.contains(y3) ? 1 : 0) + (cls.contains(-y3) ? 1 : 0);
      }
      if (hits > 0 && !on_hit(hits)) return;
    }
  }
}

}  // namespace

i64 count_three_term(i64 n, const ResidueClass& cls) {
  if (n < 1) throw Error(Errc::InvalidArgument, "count_three_term requires n >= 1");
  i64 total = 0;
  for_each_triple(n, cls, [&](int hits) {
    total += hits;
    return true;
  });
  return total;
}

bool has_three_term(i64 n, const ResidueClass& cls) {
  if (n < 1) throw Error(Errc::InvalidArgument, "has_three_term requires n >= 1");
  bool found = false;
  for_each_triple(n, cls, [&](int) {
    found = true;
    return false;
  });
  return found;
}

ScanReport scan_exceptions(const ResidueClass& cls, i64 n_max, ScanOptions opts) {
  const i64 three_d2 = 3 * cls.d * cls.d;
  if (n_max < three_d2) {
    throw Error(Errc::InvalidArgument, "scan range must reach 3d^2 = " + std::to_string(three_d2));
  }
  ScanReport report;
  report.cls = cls;
  report.modulus = cls.m * cls.M;
  report.target_residue = floor_mod(three_d2, report.modulus);
  report.n_lo = 1 + floor_mod(report.target_residue - 1, report.modulus);
  report.n_hi = n_max;

  const i64 total = report.n_lo > n_max ? 0 : (n_max - report.n_lo) / report.modulus + 1;
  const i64 chunks = (total + kChunk - 1) / kChunk;
  struct ChunkResult {
    std::vector<i64> exceptions;
    std::vector<std::pair<i64, i64>> counts;
  };
  std::vector<ChunkResult> results(static_cast<std::size_t>(chunks));
  std::atomic<i64> next{0};

  auto worker = [&] {
    for (i64 c = next++; c < chunks; c = next++) {
      ChunkResult& out = results[static_cast<std::size_t>(c)];
      const i64 end = std::min(total, (c + 1) * kChunk);
      for (i64 i = c * kChunk; i < end; ++i) {
        const i64 n = report.n_lo + i * report.modulus;
        if (opts.keep_counts) {
          const i64 k = count_three_term(n, cls);
          out.counts.emplace_back(n, k);
          if (k == 0) out.exceptions.push_back(n);
        } else if (!has_three_term(n, cls)) {
          out.exceptions.push_back(n);
        }
      }
    }
  };

  const auto threads = static_cast<i64>(std::max(1U, opts.jobs));
  std::vector<std::thread> pool;
  for (i64 i = 1; i < std::min(threads, chunks); ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  if (opts.keep_counts) report.counts.emplace();
  for (ChunkResult& r : results) {
    report.exceptions.insert(report.exceptions.end(), r.exceptions.begin(), r.exceptions.end());
    if (opts.keep_counts) report.counts->insert(report.counts->end(), r.counts.begin(), r.counts.end());
  }
  return report;
}

std::string ExceptionClassification::describe() const {
  if (kind == Kind::Other) return "other";
  return "3*" + std::to_string(ell) + "^2 (" + std::to_string(ell) + " mod 12 = " +
         std::to_string(ell_mod_12) + ")";
}

ExceptionClassification classify_exception(i64 n) {
  if (n < 1) throw Error(Errc::InvalidArgument, "classify_exception requires n >= 1");
  ExceptionClassification c;
  c.n = n;
  if (n % 3 == 0 && is_square(n / 3)) {
    const i64 ell = isqrt(n / 3);
    if (ell % 2 == 1 && is_prime(static_cast<u64>(ell))) {
      c.kind = ExceptionClassification::Kind::ThreeEllSquared;
      c.ell = ell;
      c.ell_mod_12 = ell % 12;
    }
  }
  return c;
}

std::vector<Witness> asu_lower_witnesses(const ResidueClass& cls, int count, WitnessOptions opts) {
  if (count < 1) throw Error(Errc::InvalidArgument, "witness count must be positive");
  const i64 m = cls.m;
  const i64 d2 = cls.d * cls.d;
  const bool even = m % 2 == 0;

  // Candidates come in batches; the oracle table is rebuilt over each batch.
  // Candidates the class cannot represent at all carry no count and are skipped.
  std::vector<Witness> found;
  i64 t0 = 1;
  for (std::size_t batch = static_cast<std::size_t>(count); static_cast<int>(found.size()) < count; batch *= 2) {
    std::vector<Witness> candidates;
    while (candidates.size() < batch) {
      if (t0 > opts.search_limit) {
        throw Error(Errc::SearchExhausted, "no further witness with t0 <= " + std::to_string(opts.search_limit));
      }
      Witness w;
      if (even) {
        w.n = m * cls.M * t0 + 2 * d2;
        w.lower_bound = cls.M * m + 2;
        for (const auto& [p, e] : factorize(static_cast<u64>(w.n))) {
          if (p % 4 == 3 && e % 2 == 1) {
            w.prime = p;
            break;
          }
        }
      } else {
        w.n = m * t0 + 3 * d2;
        w.lower_bound = m + 3;
      }
      ++t0;
      if (even ? w.prime != 0 : w.n % 8 == 7) candidates.push_back(w);
    }

    const MinSquaresTable table(candidates.back().n, cls, MinSquaresTable::kMaxCap, opts.limits);
    for (Witness& w : candidates) {
      const auto k = table.min_terms(w.n);
      if (!k) continue;
      if (*k < w.lower_bound) throw Error(Errc::ConstructionFailed, "oracle refutes witness " + std::to_string(w.n));
      w.certified = *k;
      found.push_back(w);
      if (static_cast<int>(found.size()) == count) break;
    }
  }
  return found;
}

Witness su_extremal_witness(const ResidueClass& cls, OracleLimits limits) {
  if (!su_exists(cls)) su_value(cls);
  if (cls.m < 3) throw Error(Errc::OutOfRange, "the extremal witness needs m >= 3");
  Witness w;
  w.n = cls.m * cls.m - 2 * cls.m;
  w.lower_bound = w.n;
  const auto k = MinSquaresTable(w.n, cls, MinSquaresTable::kMaxCap, limits).min_terms(w.n);
  if (!k || *k != w.n) throw Error(Errc::ConstructionFailed, "oracle refutes extremal witness");
  w.certified = *k;
  return w;
}

}  // namespace rsq
