#pragma once

// Shared vocabulary for the sqmap headers: dart ids, the error type,
// seeded random streams and the exact scalar type.

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include <gmpxx.h>

namespace sqmap {

using Dart = std::int32_t;
inline constexpr Dart kNoDart = -1;

enum class Errc {
  MalformedRotation,
  NonPlanar,
  NotSquarable,
  TooLarge,
  SnapshotOutOfRange,
  NoCompletion,
  NonUniqueCompletion,
  NotQuadrangulation,
  NotBipartite,
  SingularSystem,
  NoConvergence,
  VertexMissing,
  InvalidTiling,
  RejectionLimit,
  InvalidArgument,
  Io,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::MalformedRotation: return "MalformedRotation";
    case Errc::NonPlanar: return "NonPlanar";
    case Errc::NotSquarable: return "NotSquarable";
    case Errc::TooLarge: return "TooLarge";
    case Errc::SnapshotOutOfRange: return "SnapshotOutOfRange";
    case Errc::NoCompletion: return "NoCompletion";
    case Errc::NonUniqueCompletion: return "NonUniqueCompletion";
    case Errc::NotQuadrangulation: return "NotQuadrangulation";
    case Errc::NotBipartite: return "NotBipartite";
    case Errc::SingularSystem: return "SingularSystem";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::VertexMissing: return "VertexMissing";
    case Errc::InvalidTiling: return "InvalidTiling";
    case Errc::RejectionLimit: return "RejectionLimit";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// ---------------------------------------------------------------------------
// Randomness
//
// Every random stream is a std::mt19937_64 whose seed is derived from a
// (seed, stream index) pair through splitmix64.  The engine is fully
// specified by the standard, and all distributions below are implemented
// here rather than taken from <random>, so a (seed, index) pair produces
// the same draws on every platform.
// ---------------------------------------------------------------------------

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

inline Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  return Rng(derive_seed(seed, stream));
}

// Uniform integer in [0, n), n > 0, by rejection.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  if (n == 0) throw Error(Errc::InvalidArgument, "uniform_below(0)");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return r % n;
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform big integer in [0, n), n > 0, by rejection on the bit length of n.
inline mpz_class uniform_below(Rng& rng, const mpz_class& n) {
  if (sgn(n) <= 0) throw Error(Errc::InvalidArgument, "uniform_below(<=0)");
  const std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
  const std::size_t words = (bits + 63) / 64;
  const std::size_t top_bits = bits - 64 * (words - 1);
  for (;;) {
    mpz_class r = 0;
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t word = rng();
      if (w == 0 && top_bits < 64) word &= (std::uint64_t{1} << top_bits) - 1;
      r <<= 64;
      mpz_class chunk;
      mpz_import(chunk.get_mpz_t(), 1, 1, sizeof(word), 0, 0, &word);
      r += chunk;
    }
    if (r < n) return r;
  }
}

// ---------------------------------------------------------------------------
// Scalars
// ---------------------------------------------------------------------------

using Rational = mpq_class;

template <class S>
inline constexpr bool is_exact_v = std::is_same_v<S, Rational>;

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.get_d(); }

inline double abs_value(double x) { return std::fabs(x); }
inline Rational abs_value(const Rational& x) { return Rational(abs(x)); }

template <class S>
S scalar_from_double(double x) {
  if constexpr (is_exact_v<S>) {
    return Rational(x);
  } else {
    return x;
  }
}

inline std::string to_string_exact(const Rational& x) { return x.get_str(); }

}  // namespace sqmap
