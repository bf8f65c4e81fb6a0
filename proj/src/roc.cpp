#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "courtrank/prob_model.hpp"
#include "text.hpp"

namespace courtrank {

RocResult roc_curve(std::span<const ScoredMatch> scored) {
  RocResult r;
  for (const auto& s : scored) {
    if (!std::isfinite(s.score)) throw InputError("ROC scores must be finite");
    s.positive ? ++r.positives : ++r.negatives;
  }
  if (r.positives == 0 || r.negatives == 0)
    throw InputError("ROC needs at least one positive and one negative label");

  std::vector<ScoredMatch> sorted(scored.begin(), scored.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const ScoredMatch& a, const ScoredMatch& b) { return a.score > b.score; });

  const double P = static_cast<double>(r.positives);
  const double N = static_cast<double>(r.negatives);
  // Areas are accumulated as integer pair counts (doubled), so both sides are exact.
  __extension__ typedef unsigned __int128 Wide;
  Wide trapezoid2 = 0;
  long tp = 0;
  long fp = 0;
  r.curve.push_back({std::numeric_limits<double>::infinity(), 0.0, 0.0});
  for (std::size_t i = 0; i < sorted.size();) {
    const double threshold = sorted[i].score;
    long dp = 0;
    long dn = 0;
    for (; i < sorted.size() && sorted[i].score == threshold; ++i) sorted[i].positive ? ++dp : ++dn;
    trapezoid2 += static_cast<Wide>(dn) * static_cast<Wide>(2 * tp + dp);
    tp += dp;
    fp += dn;
    r.curve.push_back({threshold, fp / N, tp / P});
  }

  // Mann-Whitney from midranks in ascending order: each tie group of size g
  // starting after k lower scores gets rank k + (g + 1) / 2.
  Wide rank_sum2 = 0;
  for (std::size_t end = sorted.size(); end > 0;) {
    std::size_t begin = end;
    long pos = 0;
    while (begin > 0 && sorted[begin - 1].score == sorted[end - 1].score) {
      --begin;
      if (sorted[begin].positive) ++pos;
    }
    const std::size_t lower = sorted.size() - end;
    const std::size_t g = end - begin;
    rank_sum2 += static_cast<Wide>(pos) * static_cast<Wide>(2 * lower + g + 1);
    end = begin;
  }
  const Wide pp = static_cast<Wide>(r.positives);
  const Wide u2 = rank_sum2 - pp * (pp + 1);

  const long double denom = 2.0L * static_cast<long double>(r.positives) * static_cast<long double>(r.negatives);
  r.auroc = static_cast<double>(static_cast<long double>(trapezoid2) / denom);
  r.pairwise = static_cast<double>(static_cast<long double>(u2) / denom);
  if (std::abs(r.auroc - r.pairwise) > kAurocCrossCheckTolerance)
    throw CrossCheckError("AUROC cross-check failed: trapezoid " + text::format_sig(r.auroc, 12) +
                          " vs pairwise " + text::format_sig(r.pairwise, 12));
  return r;
}

void write_roc_tsv(std::ostream& out, const RocResult& roc) {
  out << "threshold\tfpr\ttpr\n";
  for (const auto& p : roc.curve) {
    out << (std::isinf(p.threshold) ? std::string("inf") : text::format_sig(p.threshold, 12)) << '\t'
        << text::format_sig(p.fpr, 12) << '\t' << text::format_sig(p.tpr, 12) << '\n';
  }
  out << "auroc\t" << text::format_sig(roc.auroc, 12) << '\n';
}

}  // namespace courtrank
