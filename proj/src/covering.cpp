#include "haarlab/covering.hpp"

#include <algorithm>
#include <string>

#include "haarlab/error.hpp"

namespace haarlab {

namespace {

struct Candidate {
  std::size_t element;
  Subset cover;  // translate restricted to the target
};

class CoverSearch {
 public:
  CoverSearch(Subset target, std::vector<Candidate> candidates)
      : target_(target), candidates_(std::move(candidates)), suffix_(candidates_.size() + 1) {
    for (std::size_t i = candidates_.size(); i-- > 0;) suffix_[i] = suffix_[i + 1] | candidates_[i].cover;
    for (const auto& c : candidates_) largest_ = std::max(largest_, c.cover.size());
  }

  /// Lexicographically first cover with exactly `picks` candidates, if any.
  bool run(std::size_t picks, std::vector<std::size_t>& out) {
    chosen_.clear();
    if (!descend(0, Subset{}, picks)) return false;
    out = chosen_;
    return true;
  }

 private:
  bool descend(std::size_t start, Subset covered, std::size_t picks) {
    const Subset missing = target_ - covered;
    if (missing.empty()) return true;
    if (picks == 0) return false;
    if (picks * largest_ < missing.size()) return false;
    for (std::size_t i = start; i < candidates_.size(); ++i) {
      if (!missing.is_subset_of(suffix_[i])) return false;
      // a translate that adds nothing never belongs to a minimal cover
      if (!candidates_[i].cover.intersects(missing)) continue;
      chosen_.push_back(candidates_[i].element);
      if (descend(i + 1, covered | candidates_[i].cover, picks - 1)) return true;
      chosen_.pop_back();
    }
    return false;
  }

  Subset target_;
  std::vector<Candidate> candidates_;
  std::vector<Subset> suffix_;
  std::size_t largest_ = 0;
  std::vector<std::size_t> chosen_;
};

}  // namespace

CoveringSolution covering_number(const CoveringProblem& p) {
  const FiniteTopGroup& g = p.group;
  const FiniteSpace& space = g.space();
  require_valid(space, p.k, "k");
  require_valid(space, p.s, "s");
  const Subset inner = interior(space, p.s);
  if (inner.empty()) fail(ErrorKind::EmptyInterior, to_string(p.s) + " has empty interior");
  if (!space.is_closed(p.k)) fail(ErrorKind::NotClosed, to_string(p.k) + " is not closed");
  if (p.k.empty()) return {};

  std::vector<Candidate> candidates;
  std::vector<Mask> seen;
  for (std::size_t x = 0; x < g.order(); ++x) {
    const Subset t = g.group().left_translate(x, inner);
    if (!t.intersects(p.k)) continue;
    // identical translates: the smaller element always wins the tie-break
    if (std::find(seen.begin(), seen.end(), t.bits()) != seen.end()) continue;
    seen.push_back(t.bits());
    candidates.push_back({x, t & p.k});
  }

  // greedy upper bound
  std::size_t upper = 0;
  for (Subset covered; !p.k.is_subset_of(covered); ++upper) {
    const Candidate* best = nullptr;
    for (const auto& c : candidates) {
      if (best == nullptr || (c.cover - covered).size() > (best->cover - covered).size()) best = &c;
    }
    if (best == nullptr || (best->cover - covered).empty()) {
      inconsistency("translates of " + to_string(inner) + " do not cover " + to_string(p.k));
    }
    covered |= best->cover;
  }
  std::size_t largest = 0;
  for (const auto& c : candidates) largest = std::max(largest, c.cover.size());
  const std::size_t lower = (p.k.size() + largest - 1) / largest;

  CoverSearch search(p.k, candidates);
  for (std::size_t picks = lower; picks <= upper; ++picks) {
    CoveringSolution solution;
    if (search.run(picks, solution.translates)) {
      solution.count = solution.translates.size();
      return solution;
    }
  }
  inconsistency("no cover found within the greedy bound");
}

Rational mu_u(const FiniteTopGroup& g, Subset k, Subset k0, Subset u) {
  const FiniteSpace& space = g.space();
  require_valid(space, u, "u");
  if (!space.is_open(u) || !u.contains(g.group().identity())) {
    fail(ErrorKind::NotNeighborhoodOfIdentity, to_string(u) + " is not an open neighbourhood of the identity");
  }
  require_valid(space, k0, "k0");
  if (interior(space, k0).empty()) fail(ErrorKind::EmptyInterior, to_string(k0) + " has empty interior");
  if (!space.is_closed(k0)) fail(ErrorKind::NotClosed, to_string(k0) + " is not closed");
  const CoveringSolution denominator = covering_number({g, k0, u});
  if (denominator.count == 0) inconsistency("zero covering number for a set with nonempty interior");
  const CoveringSolution numerator = covering_number({g, k, u});
  return Rational(numerator.count) / Rational(denominator.count);
}

FiniteMeasure existence_via_covering(const FiniteTopGroup& g, Subset k0) {
  const Subset bottom = g.space().minimal_neighborhood(g.group().identity());
  std::vector<Rational> masses;
  masses.reserve(g.atom_count());
  for (Subset atom : g.atoms()) masses.push_back(mu_u(g, atom, k0, bottom));
  FiniteMeasure mu(g, std::move(masses));

  // mu_N has to be additive on closed sets for the atom masses to extend it.
  const std::size_t m = g.atom_count();
  if (m <= kExhaustiveAtoms) {
    for_each_submask(Subset::full(m), [&](Subset mask) {
      const Subset k = g.atoms_to_points(mask);
      if (mu_u(g, k, k0, bottom) != mu(k)) inconsistency("mu_N is not additive on " + to_string(k));
    });
  }
  return mu;
}

}  // namespace haarlab
