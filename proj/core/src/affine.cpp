#include "semiaffine/affine.hpp"

#include <algorithm>
#include <map>

#include "semiaffine/error.hpp"
#include "semiaffine/parallel.hpp"

namespace semiaffine {

AffineMap compose(const Word& word, const SystemParams& params) {
  AffineMap map;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (word[i] == 0) {
      map.slope *= params.a;
      map.intercept *= params.a;
    } else {
      map.slope *= params.b;
      map.intercept = params.b * map.intercept + 1.0;
    }
  }
  return map;
}

ExactAffineMap compose_exact(const Word& word, const SystemParams& params) {
  if (!params.has_exact()) {
    throw PreconditionError("exact composition needs rational parameters (" + params.describe() + ")");
  }
  const mpq_class& a = *params.exact_a;
  const mpq_class& b = *params.exact_b;
  ExactAffineMap map{mpq_class(1), mpq_class(0)};
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (word[i] == 0) {
      map.slope *= a;
      map.intercept *= a;
    } else {
      map.slope *= b;
      map.intercept = b * map.intercept + 1;
    }
  }
  return map;
}

double word_derivative(const Word& word, const SystemParams& params) {
  double slope = 1.0;
  for (std::size_t i = 0; i < word.size(); ++i) slope *= word[i] == 0 ? params.a : params.b;
  return slope;
}

Mr33Report mr33_check(const Word& word, double x, double bound, const SystemParams& params) {
  if (!(x >= 0.0) || !(bound > 0.0)) throw PreconditionError("mr33_check needs x >= 0 and M > 0");
  Mr33Report report;
  if (x > bound) {
    report.precondition_holds = false;
    report.start_exceeds_bound = true;
    return report;
  }
  double point = x;
  for (std::size_t k = 0; k < word.size(); ++k) {
    point = word[k] == 0 ? params.a * point : params.b * point + 1.0;
    if (point > bound) {
      report.precondition_holds = false;
      report.violating_prefix = k;
      return report;
    }
  }
  const auto ones = static_cast<double>(word.count_ones());
  report.lhs = 1.0 / word_derivative(word, params);
  report.rhs = (ones - 1.0) * x / (params.b * bound * bound);
  report.holds = report.lhs >= report.rhs;
  return report;
}

namespace {

struct MapKey {
  mpq_class slope;
  mpq_class intercept;

  friend bool operator<(const MapKey& lhs, const MapKey& rhs) {
    if (int c = cmp(lhs.slope, rhs.slope); c != 0) return c < 0;
    return cmp(lhs.intercept, rhs.intercept) < 0;
  }
};

}  // namespace

std::vector<CoincidenceClass> coincidence_search(std::size_t max_len, const SystemParams& params,
                                                 unsigned workers) {
  if (!params.has_exact()) {
    throw PreconditionError("coincidence search runs in exact arithmetic and needs rational parameters");
  }
  if (max_len > 30) throw PreconditionError("coincidence search is limited to max_len <= 30");

  // Prefix blocks: each block covers a contiguous index range of one length,
  // so writing into per-block slots and merging in block order is deterministic.
  constexpr std::uint64_t kBlock = 1024;
  struct Block {
    std::size_t length;
    std::uint64_t first;
    std::uint64_t count;
    std::vector<ExactAffineMap> maps;
  };
  std::vector<Block> blocks;
  for (std::size_t n = 1; n <= max_len; ++n) {
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t first = 0; first < total; first += kBlock) {
      blocks.push_back({n, first, std::min(kBlock, total - first), {}});
    }
  }
  parallel_for(blocks.size(), workers, [&](std::size_t i) {
    Block& block = blocks[i];
    block.maps.reserve(block.count);
    for (std::uint64_t j = 0; j < block.count; ++j) {
      block.maps.push_back(compose_exact(Word::from_index(block.length, block.first + j), params));
    }
  });

  std::map<MapKey, std::vector<Word>> groups;
  for (const Block& block : blocks) {
    for (std::uint64_t j = 0; j < block.count; ++j) {
      const ExactAffineMap& map = block.maps[j];
      groups[MapKey{map.slope, map.intercept}].push_back(Word::from_index(block.length, block.first + j));
    }
  }

  std::vector<CoincidenceClass> classes;
  for (auto& [key, words] : groups) {
    if (words.size() < 2) continue;
    std::sort(words.begin(), words.end());
    classes.push_back({ExactAffineMap{key.slope, key.intercept}, std::move(words)});
  }
  std::sort(classes.begin(), classes.end(),
            [](const CoincidenceClass& l, const CoincidenceClass& r) { return l.words.front() < r.words.front(); });
  return classes;
}

}  // namespace semiaffine
