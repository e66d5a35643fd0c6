#pragma once

// Rank strata of J_C and W_C over finite fields, fiber cardinalities and the
// order of SO(3, c).
//
// Exhaustive scans walk an odometer over coordinate vectors (first coordinate
// fastest). The index range is split into fixed chunks; each chunk carries
// its own FNV-1a hash of the ranks it saw, and chunk hashes are folded in
// chunk order, so counts and checksum do not depend on the worker count.

#include <chrono>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fkit/fibers.hpp"

namespace fkit {

enum class CensusMode { exhaustive, sampled, diagonal_slice };

inline const char* to_string(CensusMode m) {
  switch (m) {
    case CensusMode::exhaustive: return "exhaustive";
    case CensusMode::sampled: return "sampled";
    default: return "diagonal-slice";
  }
}

inline CensusMode parse_census_mode(const std::string& s) {
  if (s == "exhaustive") return CensusMode::exhaustive;
  if (s == "sampled") return CensusMode::sampled;
  if (s == "diagonal-slice" || s == "diagonal_slice") return CensusMode::diagonal_slice;
  throw ParseError("unknown census mode '" + s + "'");
}

struct CensusReport {
  std::string space;    // "jordan", "freudenthal"
  std::string algebra;  // algebra tag name
  FieldDescriptor field;
  CensusMode mode = CensusMode::exhaustive;
  std::uint64_t samples = 0;  // sampled mode
  std::uint64_t seed = 0;     // sampled mode
  std::map<int, std::uint64_t> counts;
  std::uint64_t total = 0;
  double seconds = 0;
  std::uint64_t checksum = 0;
};

inline constexpr std::uint64_t kExhaustiveLimit = 100'000'000;

namespace detail {

inline constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
inline constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

inline void fnv_byte(std::uint64_t& h, unsigned char b) {
  h ^= b;
  h *= kFnvPrime;
}

inline void fnv_word(std::uint64_t& h, std::uint64_t w) {
  for (int i = 0; i < 8; ++i) fnv_byte(h, static_cast<unsigned char>(w >> (8 * i)));
}

struct ChunkTally {
  std::array<std::uint64_t, 5> counts{};
  std::uint64_t hash = kFnvOffset;
  void add(int rank) {
    ++counts.at(static_cast<std::size_t>(rank));
    fnv_byte(hash, static_cast<unsigned char>(rank));
  }
};

inline void fold(CensusReport& rep, const std::vector<ChunkTally>& parts) {
  std::uint64_t h = kFnvOffset;
  std::array<std::uint64_t, 5> counts{};
  for (const auto& p : parts) {
    fnv_word(h, p.hash);
    for (std::size_t r = 0; r < counts.size(); ++r) counts[r] += p.counts[r];
  }
  rep.checksum = h;
  rep.total = 0;
  for (std::size_t r = 0; r < counts.size(); ++r) {
    rep.total += counts[r];
    if (counts[r]) rep.counts[static_cast<int>(r)] = counts[r];
  }
}

/// q^m, or SizeOverflow above `limit`.
inline std::uint64_t checked_power(std::uint64_t q, int m, std::uint64_t limit, const std::string& what) {
  std::uint64_t n = 1;
  for (int i = 0; i < m; ++i) {
    if (n > limit / q) throw SizeOverflow(what + " has more than " + std::to_string(limit) + " points");
    n *= q;
  }
  return n;
}

/// Odometer scan of values^m; `rank_of(coords)` classifies each point.
template <class S, class F>
std::vector<ChunkTally> odometer_scan(const std::vector<S>& values, int m, int workers, F&& rank_of) {
  const std::uint64_t q = values.size();
  // The two slowest coordinates select the chunk.
  const int fixed = m >= 2 ? 2 : m;
  const int free = m - fixed;
  std::uint64_t chunks = 1, per = 1;
  for (int i = 0; i < fixed; ++i) chunks *= q;
  for (int i = 0; i < free; ++i) per *= q;
  return run_chunks<ChunkTally>(chunks, workers, [&](std::size_t k) {
    ChunkTally tally;
    VecX<S> coords(m);
    std::vector<std::uint64_t> idx(m, 0);
    std::uint64_t rest = k;
    for (int i = free; i < m; ++i) {
      idx[i] = rest % q;
      rest /= q;
    }
    for (int i = 0; i < m; ++i) coords[i] = values[idx[i]];
    for (std::uint64_t n = 0; n < per; ++n) {
      tally.add(rank_of(coords));
      for (int i = 0; i < free; ++i) {
        if (++idx[i] < q) {
          coords[i] = values[idx[i]];
          break;
        }
        idx[i] = 0;
        coords[i] = values[0];
      }
    }
    return tally;
  });
}

/// Sampled scan: sample i is drawn from Rng::stream(seed, i).
template <class F>
std::vector<ChunkTally> sampled_scan(std::uint64_t samples, std::uint64_t seed, int workers, F&& rank_of) {
  constexpr std::uint64_t block = 256;
  const std::uint64_t chunks = (samples + block - 1) / block;
  return run_chunks<ChunkTally>(chunks, workers, [&](std::size_t k) {
    ChunkTally tally;
    const std::uint64_t end = std::min<std::uint64_t>(samples, (k + 1) * block);
    for (std::uint64_t i = k * block; i < end; ++i) {
      Rng rng = Rng::stream(seed, i);
      tally.add(rank_of(rng));
    }
    return tally;
  });
}

template <class S>
CensusReport start_report(const std::string& space, const CompositionAlgebra<S>& alg, CensusMode mode,
                          std::uint64_t samples, std::uint64_t seed) {
  if (!alg.field().finite()) throw DomainError("census needs a finite field");
  CensusReport rep;
  rep.space = space;
  rep.algebra = to_string(alg.tag());
  rep.field = alg.field();
  rep.mode = mode;
  if (mode == CensusMode::sampled) {
    if (samples == 0) throw InvalidParameter("sampled census needs at least one sample");
    rep.samples = samples;
    rep.seed = seed;
  }
  return rep;
}

}  // namespace detail

/// Rank counts in J_C. Exhaustive needs |J_C| <= 1e8; sampled draws uniform
/// elements.
template <class S>
CensusReport jordan_census(const CompositionAlgebra<S>& alg, CensusMode mode, std::uint64_t samples = 0,
                           std::uint64_t seed = 0, int workers = 1) {
  auto rep = detail::start_report("jordan", alg, mode, samples, seed);
  const auto t0 = std::chrono::steady_clock::now();
  const int m = jordan_dim(alg.dim());
  std::vector<detail::ChunkTally> parts;
  if (mode == CensusMode::exhaustive) {
    detail::checked_power(alg.field().order(), m, kExhaustiveLimit, "J_C");
    parts = detail::odometer_scan(enumerate<S>(alg.field()), m, workers,
                                  [&](const VecX<S>& v) { return rank_jordan(jordan_from_coords(alg, v)); });
  } else if (mode == CensusMode::sampled) {
    parts = detail::sampled_scan(samples, seed, workers, [&](Rng& rng) { return rank_jordan(random_jordan(alg, rng)); });
  } else {
    throw DomainError("jordan_census supports exhaustive and sampled modes");
  }
  detail::fold(rep, parts);
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

/// Rank counts in W_C. Exhaustive needs |W_C| <= 1e8, which rules out every
/// W_C over F_q with q >= 5; diagonal_slice scans (a, diag b, diag c, d), the
/// 8-dimensional subspace where b and c are diagonal.
template <class S>
CensusReport freudenthal_census(const CompositionAlgebra<S>& alg, CensusMode mode, std::uint64_t samples = 0,
                                std::uint64_t seed = 0, int workers = 1) {
  auto rep = detail::start_report("freudenthal", alg, mode, samples, seed);
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<detail::ChunkTally> parts;
  const std::uint64_t q = alg.field().order();
  if (mode == CensusMode::exhaustive) {
    const int m = w_dim(alg.dim());
    detail::checked_power(q, m, kExhaustiveLimit, "W_C");
    parts = detail::odometer_scan(enumerate<S>(alg.field()), m, workers,
                                  [&](const VecX<S>& v) { return rank_w(w_from_coords(alg, v)); });
  } else if (mode == CensusMode::diagonal_slice) {
    detail::checked_power(q, 8, kExhaustiveLimit, "diagonal slice");
    const S zero = alg.zero_scalar();
    parts = detail::odometer_scan(enumerate<S>(alg.field()), 8, workers, [&](const VecX<S>& v) {
      return rank_w(WElem<S>{v[0], jordan_diag(alg, v[1], v[2], v[3]), jordan_diag(alg, v[4], v[5], v[6]), v[7] + zero});
    });
  } else {
    parts = detail::sampled_scan(samples, seed, workers, [&](Rng& rng) { return rank_w(random_w(alg, rng)); });
  }
  detail::fold(rep, parts);
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

/// |F^{-1}(xi)| for a normalized xi = (1, 0, c, d), dim C = 4.
template <class S>
std::uint64_t fiber_census(const WElem<S>& xi, const CompositionAlgebra<S>& alg, int workers = 1) {
  if (alg.dim() != 4) throw DomainError("fiber_census needs a 4-dimensional algebra");
  if (!alg.field().finite()) throw DomainError("fiber_census needs a finite field");
  if (alg.field() != xi.algebra().field()) throw DescriptorMismatch("target and algebra over different fields");
  detail::checked_power(alg.field().order(), 9, kExhaustiveLimit, "(C0)^3");
  return scan_fiber(xi, trace0_elements(alg), workers, false).count;
}

/// |{g in M3(F_q) : det g = 1, g c g^T = c}| by a row-by-row search: row i
/// must satisfy g_i c g_j^T = c_ij for all j <= i before row i+1 is tried.
template <class S>
std::uint64_t so3_order(const TernaryForm<S>& form, const FieldDescriptor& f) {
  if (!f.finite()) throw DomainError("so3_order needs a finite field");
  check_kind<S>(f);
  const Mat3<S>& c = form.gram;
  if (is_zero(det3(c))) throw DomainError("so3_order needs a nondegenerate form");
  using Row = Eigen::Matrix<S, 1, 3>;
  const auto values = enumerate<S>(f);
  std::vector<Row> rows;
  for (const S& a : values)
    for (const S& b : values)
      for (const S& d : values) rows.push_back(Row(a, b, d));
  std::vector<S> self(rows.size());
  std::vector<Row> rc(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rc[i] = rows[i] * c;
    self[i] = rc[i][0] * rows[i][0] + rc[i][1] * rows[i][1] + rc[i][2] * rows[i][2];
  }
  auto dot = [](const Row& x, const Row& y) { return x[0] * y[0] + x[1] * y[1] + x[2] * y[2]; };
  const S one = from_int<S>(f, 1);
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (self[i] != c(0, 0)) continue;
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (self[j] != c(1, 1) || dot(rc[i], rows[j]) != c(0, 1)) continue;
      for (std::size_t k = 0; k < rows.size(); ++k) {
        if (self[k] != c(2, 2) || dot(rc[i], rows[k]) != c(0, 2) || dot(rc[j], rows[k]) != c(1, 2)) continue;
        Mat3<S> g;
        g.row(0) = rows[i];
        g.row(1) = rows[j];
        g.row(2) = rows[k];
        if (det3(g) == one) ++count;
      }
    }
  }
  return count;
}

}  // namespace fkit
