#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "melcoh/cochains.hpp"
#include "melcoh/melikian.hpp"

namespace melcoh {

using Json = nlohmann::ordered_json;

struct ClaimReport {
    std::string id;
    std::string status;  // pass, fail or skipped
    Json expected;
    Json computed;
    std::string paper_ref;
    double elapsed_ms = 0;
    std::string notes;
};

struct ClaimInfo {
    std::string id;
    std::vector<std::string> tags;
    std::string paper_ref;
    std::string summary;
};

/// The claim catalog in run order.
const std::vector<ClaimInfo>& claim_catalog();
const std::vector<std::string>& claim_tags();

/// Statements that are not separate claims, with the claims that cover them.
struct OutOfScope {
    std::string statement;
    std::string covered_by;
};
const std::vector<OutOfScope>& out_of_scope();

class Verifier {
public:
    explicit Verifier(const LieAlgebra& alg, EngineOptions opts = {});

    /// Throws UsageError for an unknown id.
    ClaimReport run_claim(const std::string& id);
    /// Runs the catalog, or the claims carrying `tag`. Throws UsageError for an unknown tag.
    std::vector<ClaimReport> run_all(const std::optional<std::string>& tag = std::nullopt);

private:
    const LieAlgebra& alg_;
    EngineOptions opts_;
};

enum class ReportFormat { Text, Json };

std::string emit_report(const std::vector<ClaimReport>& reports, ReportFormat format);

/// 0 when every report passed (or was skipped), 1 otherwise.
int exit_code(const std::vector<ClaimReport>& reports);

}  // namespace melcoh
