#pragma once

#include <string>

#include "cubulate/action.hpp"
#include "cubulate/coarse_geometry.hpp"
#include "cubulate/dual_complex.hpp"
#include "cubulate/refinement.hpp"
#include "cubulate/search.hpp"

namespace cubulate {

// Structured (JSON) and human-readable renderings of one result. Both are
// byte-deterministic for a fixed input and configuration: object keys are
// sorted and every array is in canonical order.
struct ReportDoc {
    std::string json;
    std::string human;
};

struct MedianVerification {
    bool ran = false;
    MedianCheckResult result;
    bool duality_ok = true;  // graph distance == principal separation
};

ReportDoc report_complex(const CubeComplex& X, const MedianVerification& verification);
ReportDoc report_geometry(const GeometryReport& g, const std::string& name);
ReportDoc report_skewer(const ActionContext& ctx, const SkewerOutcome& outcome);
ReportDoc report_axis(const ActionContext& ctx, const AxisSepOutcome& outcome);
ReportDoc report_refine(const GroupModel& model, const RefineReport& refine);
ReportDoc report_audit(const GroupModel& model, const AuditReport& audit,
                       const RefineReport* refine = nullptr);

}  // namespace cubulate
