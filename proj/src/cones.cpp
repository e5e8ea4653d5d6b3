#include "lincon/cones.hpp"

#include <cmath>

#include "lincon/random.hpp"

namespace lincon {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Inside: return "Inside";
    case Verdict::Boundary: return "Boundary";
    case Verdict::Outside: return "Outside";
  }
  return "Unknown";
}

namespace {

SuffStats normalized(const SuffStats& t) {
  const double n = norm2(t.span());
  if (!std::isfinite(n)) throw Error(ErrorKind::InputError, "statistic is not finite");
  if (n == 0.0) return t;
  SuffStats out = t;
  for (auto& v : out.values()) v /= n;
  return out;
}

SuffStats bisect(const LinearModel& model, SuffStats lo, SuffStats hi, double target, const BarrierOptions& opts) {
  auto width = [&] {
    double acc = 0.0;
    for (std::size_t j = 0; j < lo.size(); ++j) acc += (hi[j] - lo[j]) * (hi[j] - lo[j]);
    return std::sqrt(acc);
  };
  SuffStats mid(lo.size());
  for (int it = 0; it < 200; ++it) {
    for (std::size_t j = 0; j < lo.size(); ++j) mid[j] = 0.5 * (lo[j] + hi[j]);
    if (width() <= target) break;
    if (linear_min_over_base(model, normalized(mid), opts).value > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return mid;
}

}  // namespace

MembershipVerdict membership(const LinearModel& model, const SuffStats& t) {
  if (t.size() != model.dimension()) throw Error(ErrorKind::LengthMismatch, "statistic length");
  const BarrierReport b = linear_min_over_base(model, normalized(t));
  MembershipVerdict out;
  out.value = b.value;
  out.lambda = b.lambda;
  if (b.value > kMembershipEpsilon)
    out.verdict = Verdict::Inside;
  else if (b.value < -kMembershipEpsilon)
    out.verdict = Verdict::Outside;
  else
    out.verdict = Verdict::Boundary;
  return out;
}

SuffStats boundary_bisect(const LinearModel& model, const SuffStats& t_inside, const SuffStats& t_outside) {
  if (t_inside.size() != model.dimension() || t_outside.size() != model.dimension())
    throw Error(ErrorKind::LengthMismatch, "statistic length");
  if (membership(model, t_inside).verdict != Verdict::Inside)
    throw Error(ErrorKind::InvalidBracket, "first endpoint is not inside the cone");
  if (membership(model, t_outside).verdict != Verdict::Outside)
    throw Error(ErrorKind::InvalidBracket, "second endpoint is not outside the cone");

  // The barrier value overestimates the minimum by up to m * mu; a smaller
  // final mu keeps that bias below the bracket width.
  BarrierOptions fine;
  fine.mu_final = 1e-12;
  return bisect(model, t_inside, t_outside, 1e-12 * norm2(t_inside.span()), fine);
}

std::optional<SuffStats> exterior_on_ray(const LinearModel& model, const SuffStats& t_in,
                                         std::span<const double> u) {
  if (u.size() != t_in.size()) throw Error(ErrorKind::LengthMismatch, "direction length");
  const double un = norm2(u);
  if (un == 0.0) throw Error(ErrorKind::InputError, "zero direction");
  const double scale = norm2(t_in.span()) / un;
  double s = 1.0;
  for (int k = 0; k < 60; ++k, s *= 2.0) {
    SuffStats t = t_in;
    for (std::size_t j = 0; j < t.size(); ++j) t[j] += s * scale * u[j];
    if (membership(model, t).verdict == Verdict::Outside) return t;
  }
  return std::nullopt;
}

SuffStats dual_map(const LinearModel& model, const CoeffVector& lambda) {
  return model.project(inverse(model.assemble(lambda)));
}

int numerical_rank(const SymMatrix& k, double threshold) {
  const auto ev = spectrum(k);
  double top = 0.0;
  for (double v : ev) top = std::max(top, std::abs(v));
  int rank = 0;
  for (double v : ev)
    if (v > threshold * top) ++rank;
  return rank;
}

std::map<int, int> extreme_rank_sample(const LinearModel& model, int count, std::uint64_t seed) {
  const std::size_t d = model.dimension();
  Rng rng(seed);
  std::vector<SuffStats> directions;
  directions.reserve(count > 0 ? count : 0);
  for (int s = 0; s < count; ++s) {
    SuffStats c(d);
    for (std::size_t j = 0; j < d; ++j) c[j] = rng.normal();
    directions.push_back(normalized(c));
  }
  std::map<int, int> freq;
  for (const auto& c : directions) ++freq[numerical_rank(linear_min_over_base(model, c).K)];
  return freq;
}

std::vector<int> pataki_ranks(std::size_t m, std::size_t d) {
  auto c2 = [](long n) { return n < 2 ? 0L : n * (n - 1) / 2; };
  const long M = static_cast<long>(m);
  const long D = static_cast<long>(d);
  std::vector<int> out;
  for (long p = 2; p <= M + 1; ++p)
    if (c2(M - p + 2) <= D - 1 && c2(p) <= c2(M + 1) - D + 1) out.push_back(static_cast<int>(p - 1));
  return out;
}

}  // namespace lincon
