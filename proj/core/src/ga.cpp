#include "shapfs/ga.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace shapfs {

int Chromosome::popcount() const {
  int n = 0;
  for (auto b : bits) n += b;
  return n;
}

bool Chromosome::valid() const {
  for (auto b : bits)
    if (b > 1) return false;
  return popcount() == target_ones;
}

void GaConfig::validate(int n_f) const {
  if (population_size < 4) throw std::invalid_argument("GaConfig: population_size must be >= 4");
  if (samples_per_size < population_size)
    throw std::invalid_argument("GaConfig: samples_per_size must be >= population_size");
  if (max_coalition_size < 1 || max_coalition_size > n_f)
    throw std::invalid_argument("GaConfig: max_coalition_size must be in [1, n_f]");
  if (fitness_floor <= 0) throw std::invalid_argument("GaConfig: fitness_floor must be positive");
}

std::vector<double> SampleSet::marginals() const {
  std::vector<double> m;
  m.reserve(samples.size());
  for (const auto& s : samples) m.push_back(s.second);
  return m;
}

std::uint64_t task_seed(std::uint64_t master, int focal, int size) {
  // splitmix64 over the packed triple
  std::uint64_t x = master ^ (static_cast<std::uint64_t>(focal) << 32) ^
                    (static_cast<std::uint64_t>(size) + 0x51ed270b0f4dull);
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

Coalition chromosome_to_coalition(const Chromosome& chr, int n_f) {
  if (chr.length() != n_f - 1)
    throw std::invalid_argument("chromosome_to_coalition: length must be n_f - 1");
  Coalition c(n_f);
  for (int j = 0; j < chr.length(); ++j)
    if (chr.bits[static_cast<std::size_t>(j)])
      c.add(j < chr.focal ? j : j + 1);
  return c;
}

double fitness(const GameOracle& game, const Chromosome& chr) {
  const Coalition t = chromosome_to_coalition(chr, game.player_count());
  return game.value(t.with(chr.focal)) - game.value(t);
}

std::pair<int, int> roulette_select(const std::vector<double>& fitnesses,
                                    double floor, Rng& rng) {
  const int n = static_cast<int>(fitnesses.size());
  if (n < 2) throw std::invalid_argument("roulette_select: need at least 2 candidates");
  const double min_f = *std::min_element(fitnesses.begin(), fitnesses.end());

  auto draw = [&](int excluded) {
    double total = 0;
    for (int k = 0; k < n; ++k) {
      if (k == excluded) continue;
      total += fitnesses[static_cast<std::size_t>(k)] - min_f + floor;
    }
    std::uniform_real_distribution<double> u(0.0, total);
    double r = u(rng);
    for (int k = 0; k < n; ++k) {
      if (k == excluded) continue;
      r -= fitnesses[static_cast<std::size_t>(k)] - min_f + floor;
      if (r <= 0) return k;
    }
    return excluded == n - 1 ? n - 2 : n - 1;  // fp underflow fallback
  };

  const int first = draw(-1);
  const int second = draw(first);
  return {first, second};
}

namespace {

// Prefix popcounts: pc[k] = ones in bits[0..k).
std::vector<int> prefix_counts(const Chromosome& c) {
  std::vector<int> pc(static_cast<std::size_t>(c.length()) + 1, 0);
  for (int k = 0; k < c.length(); ++k)
    pc[static_cast<std::size_t>(k) + 1] = pc[static_cast<std::size_t>(k)] + c.bits[static_cast<std::size_t>(k)];
  return pc;
}

void reverse_random_segment(Chromosome& c, Rng& rng) {
  const int len = c.length();
  if (len < 2) return;
  std::uniform_int_distribution<int> ul(2, len);
  const int seg = ul(rng);
  std::uniform_int_distribution<int> us(0, len - seg);
  const int start = us(rng);
  std::reverse(c.bits.begin() + start, c.bits.begin() + start + seg);
}

}  // namespace

std::pair<Chromosome, Chromosome> crossover(const Chromosome& p1,
                                            const Chromosome& p2, Rng& rng) {
  if (p1.focal != p2.focal || p1.target_ones != p2.target_ones ||
      p1.length() != p2.length())
    throw std::invalid_argument("crossover: parents must share focal feature and cardinality");

  Chromosome c1 = p1, c2 = p2;
  const int len = p1.length();
  if (len < 2) return {c1, c2};

  // Aligned proper segments (length >= 2, shorter than the chromosome)
  // carrying equal popcount in both parents.
  const auto pc1 = prefix_counts(p1);
  const auto pc2 = prefix_counts(p2);
  std::vector<std::pair<int, int>> segs;  // (start, length)
  for (int s = 0; s < len; ++s) {
    const int max_l = std::min(len - s, len - 1);
    for (int l = 2; l <= max_l; ++l) {
      const int ones1 = pc1[static_cast<std::size_t>(s + l)] - pc1[static_cast<std::size_t>(s)];
      const int ones2 = pc2[static_cast<std::size_t>(s + l)] - pc2[static_cast<std::size_t>(s)];
      if (ones1 == ones2) segs.push_back({s, l});
    }
  }

  if (!segs.empty()) {
    std::uniform_int_distribution<std::size_t> us(0, segs.size() - 1);
    const auto [start, l] = segs[us(rng)];
    for (int k = start; k < start + l; ++k)
      std::swap(c1.bits[static_cast<std::size_t>(k)], c2.bits[static_cast<std::size_t>(k)]);
  } else {
    reverse_random_segment(c1, rng);
    reverse_random_segment(c2, rng);
  }
  return {c1, c2};
}

Chromosome mutate(const Chromosome& chr, Rng& rng) {
  const int ones = chr.popcount();
  const int zeros = chr.length() - ones;
  if (ones == 0 || zeros == 0) return chr;

  Chromosome out = chr;
  std::uniform_int_distribution<int> uo(0, ones - 1);
  std::uniform_int_distribution<int> uz(0, zeros - 1);
  int pick_one = uo(rng), pick_zero = uz(rng);
  for (int k = 0; k < out.length(); ++k) {
    if (out.bits[static_cast<std::size_t>(k)]) {
      if (pick_one-- == 0) out.bits[static_cast<std::size_t>(k)] = 0;
    } else {
      if (pick_zero-- == 0) out.bits[static_cast<std::size_t>(k)] = 1;
    }
  }
  return out;
}

SampleSet collect_samples(const GameOracle& game, int focal, int size,
                          const GaConfig& cfg) {
  const int n_f = game.player_count();
  if (focal < 0 || focal >= n_f) throw std::out_of_range("collect_samples: focal feature out of range");
  if (size < 0 || size > n_f - 1)
    throw std::invalid_argument("collect_samples: no size-" + std::to_string(size) +
                                " coalition excludes the focal feature");
  cfg.validate(n_f);

  SampleSet out;
  out.focal = focal;
  out.size = size;

  // Degenerate strata: exactly one coalition of this size exists.
  if (size == 0) {
    Coalition empty(n_f);
    out.samples.push_back({empty, game.value(empty.with(focal))});
    return out;
  }
  if (size == n_f - 1) {
    Coalition all_others(n_f);
    for (int j = 0; j < n_f; ++j)
      if (j != focal) all_others.add(j);
    out.samples.push_back(
        {all_others, game.value(all_others.with(focal)) - game.value(all_others)});
    return out;
  }

  const int len = n_f - 1;
  Rng rng(task_seed(cfg.seed, focal, size));

  auto record = [&](const Chromosome& chr) {
    const Coalition t = chromosome_to_coalition(chr, n_f);
    const double f = game.value(t.with(focal)) - game.value(t);
    out.samples.push_back({t, f});
    return f;
  };

  // Initial population: random t-subsets; every evaluation is a sample.
  std::vector<Chromosome> pop;
  std::vector<double> fit;
  std::vector<int> positions(static_cast<std::size_t>(len));
  std::iota(positions.begin(), positions.end(), 0);
  for (int k = 0; k < cfg.population_size; ++k) {
    Chromosome chr;
    chr.bits.assign(static_cast<std::size_t>(len), 0);
    chr.focal = focal;
    chr.target_ones = size;
    std::shuffle(positions.begin(), positions.end(), rng);
    for (int j = 0; j < size; ++j) chr.bits[static_cast<std::size_t>(positions[static_cast<std::size_t>(j)])] = 1;
    pop.push_back(chr);
    fit.push_back(record(chr));
  }

  while (static_cast<int>(out.samples.size()) < cfg.samples_per_size) {
    auto [a, b] = roulette_select(fit, cfg.fitness_floor, rng);
    auto [c1, c2] = crossover(pop[static_cast<std::size_t>(a)], pop[static_cast<std::size_t>(b)], rng);
    c1 = mutate(c1, rng);
    c2 = mutate(c2, rng);

    const double f1 = record(c1);
    if (static_cast<int>(out.samples.size()) >= cfg.samples_per_size) break;
    const double f2 = record(c2);

    pop.push_back(c1);
    fit.push_back(f1);
    pop.push_back(c2);
    fit.push_back(f2);

    // Evict the two lowest-fitness members; evicted chromosomes already
    // contributed their samples.
    for (int r = 0; r < 2; ++r) {
      const auto worst = std::min_element(fit.begin(), fit.end());
      const std::size_t idx = static_cast<std::size_t>(worst - fit.begin());
      pop.erase(pop.begin() + static_cast<std::ptrdiff_t>(idx));
      fit.erase(fit.begin() + static_cast<std::ptrdiff_t>(idx));
    }
  }
  return out;
}

}  // namespace shapfs
