#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "run_config.hpp"

namespace courtrank::cli {

// Each command writes its files under cfg.out_dir, prints a short summary
// to `out` and returns the process exit code. Failures are thrown.
int cmd_ingest(const RunConfig& cfg, std::ostream& out);
int cmd_rank(const RunConfig& cfg, const std::string& tournament, int year, PredictorKind kind,
             std::ostream& out);
int cmd_evaluate(const RunConfig& cfg, const std::vector<PredictorKind>& kinds, std::ostream& out);
int cmd_search(const RunConfig& cfg, bool synthetic, std::ostream& out);
int cmd_fit_prob(const RunConfig& cfg, const std::vector<PredictorKind>& kinds, std::ostream& out);
int cmd_auroc(const RunConfig& cfg, const std::vector<PredictorKind>& kinds,
              const std::optional<std::filesystem::path>& scores_file, std::ostream& out);
int cmd_report(const RunConfig& cfg, std::ostream& out);

}  // namespace courtrank::cli
